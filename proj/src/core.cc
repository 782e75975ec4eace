// Copyright 2026 The ciswap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ciswap/core.h"

#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "ciswap/rng.h"

namespace ciswap {

Operator pauli_x() {
    Operator m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Operator pauli_y() {
    Operator m(2, 2);
    m << cxd(0, 0), cxd(0, -1), cxd(0, 1), cxd(0, 0);
    return m;
}

Operator pauli_z() {
    Operator m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Operator raise_op() {
    Operator m = Operator::Zero(2, 2);
    m(1, 0) = 1;
    return m;
}

Operator lower_op() {
    Operator m = Operator::Zero(2, 2);
    m(0, 1) = 1;
    return m;
}

Operator identity(Eigen::Index dim) {
    return Operator::Identity(dim, dim);
}

Operator kron2(const Operator& a, const Operator& b) {
    Operator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Operator tensor_product(const std::vector<Operator>& factors) {
    if (factors.empty()) {
        throw std::invalid_argument("tensor_product: empty factor list");
    }
    Operator out = factors[0];
    for (size_t k = 1; k < factors.size(); k++) {
        out = kron2(out, factors[k]);
    }
    return out;
}

Operator op_on(const Operator& op, int k, int n_qubits) {
    if (k < 0 || k >= n_qubits) {
        throw std::invalid_argument("op_on: qubit index out of range");
    }
    Eigen::Index left = Eigen::Index(1) << k;
    Eigen::Index right = Eigen::Index(1) << (n_qubits - 1 - k);
    return kron2(kron2(identity(left), op), identity(right));
}

Operator embed_on_qubits(const Operator& op, const std::vector<int>& qubits,
                         int n_qubits) {
    int k = static_cast<int>(qubits.size());
    if (n_qubits < 1 || n_qubits > 30 || k > n_qubits) {
        throw std::invalid_argument("embed_on_qubits: bad register size");
    }
    Eigen::Index sub = Eigen::Index(1) << k;
    if (op.rows() != sub || op.cols() != sub) {
        throw std::invalid_argument("embed_on_qubits: operator dimension mismatch");
    }
    int mask = 0;
    for (int q : qubits) {
        if (q < 0 || q >= n_qubits || (mask >> (n_qubits - 1 - q)) & 1) {
            throw std::invalid_argument("embed_on_qubits: bad qubit list");
        }
        mask |= 1 << (n_qubits - 1 - q);
    }
    Eigen::Index dim = Eigen::Index(1) << n_qubits;
    Operator out = Operator::Zero(dim, dim);
    for (Eigen::Index a = 0; a < dim; a++) {
        int va = 0;
        for (int q = 0; q < k; q++) {
            va = (va << 1) | ((a >> (n_qubits - 1 - qubits[q])) & 1);
        }
        Eigen::Index rest = a & ~Eigen::Index(mask);
        for (Eigen::Index vb = 0; vb < sub; vb++) {
            Eigen::Index b = rest;
            for (int q = 0; q < k; q++) {
                if ((vb >> (k - 1 - q)) & 1) {
                    b |= Eigen::Index(1) << (n_qubits - 1 - qubits[q]);
                }
            }
            out(a, b) = op(va, vb);
        }
    }
    return out;
}

Operator matrix_exp(const Operator& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("matrix_exp: matrix not square");
    }
    if (!a.allFinite()) {
        throw std::invalid_argument("matrix_exp: non-finite entries");
    }
    return a.exp();
}

PureState haar_random_state(Eigen::Index dim, std::uint64_t seed) {
    if (dim < 1) {
        throw std::invalid_argument("haar_random_state: dim must be >= 1");
    }
    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    PureState psi(dim);
    for (Eigen::Index i = 0; i < dim; i++) {
        double re = gauss(rng);
        double im = gauss(rng);
        psi(i) = cxd(re, im);
    }
    psi /= psi.norm();
    return psi;
}

Operator density_from_state(const PureState& psi) {
    return psi * psi.adjoint();
}

bool is_hermitian(const Operator& a, double tol) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Operator& a, double tol) {
    Operator d = a.adjoint() * a - identity(a.rows());
    return d.cwiseAbs().maxCoeff() <= tol;
}

bool is_valid_density(const Operator& rho, double tol, double eig_floor) {
    if (!is_hermitian(rho, tol)) {
        return false;
    }
    if (std::abs(rho.trace() - cxd(1.0, 0.0)) > tol) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Operator> es(rho);
    return es.eigenvalues().minCoeff() >= -eig_floor;
}

Eigen::VectorXcd vec(const Operator& a) {
    return Eigen::Map<const Eigen::VectorXcd>(a.data(), a.size());
}

Operator unvec(const Eigen::VectorXcd& v, Eigen::Index dim) {
    if (v.size() != dim * dim) {
        throw std::invalid_argument("unvec: size mismatch");
    }
    return Eigen::Map<const Operator>(v.data(), dim, dim);
}

}  // namespace ciswap
