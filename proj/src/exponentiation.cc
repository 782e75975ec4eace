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

#include "ciswap/exponentiation.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

namespace ciswap {

namespace {

double spectral_norm(const Operator& m) {
    Eigen::JacobiSVD<Operator> svd(m);
    return svd.singularValues()(0);
}

}  // namespace

std::optional<int> cyclic_order(const Operator& t, int n_max, double tol) {
    if (!is_unitary(t, 1e-10)) {
        throw std::invalid_argument("cyclic_order: operator is not unitary");
    }
    if (n_max < 1 || !(tol > 0)) {
        throw std::invalid_argument("cyclic_order: bad n_max or tol");
    }
    Operator eye = Operator::Identity(t.rows(), t.cols());
    Operator power = t;
    for (int n = 1; n <= n_max; n++) {
        if (spectral_norm(power - eye) <= tol) {
            return n;
        }
        power = power * t;
    }
    return std::nullopt;
}

CyclicGate make_cyclic_gate(const Operator& op, int n_max, double tol) {
    std::optional<int> n = cyclic_order(op, n_max, tol);
    if (!n) {
        throw NumericalError("make_cyclic_gate: no cyclic order within " +
                             std::to_string(n_max) + " powers");
    }
    return CyclicGate{op, *n};
}

std::vector<cxd> taylor_coefficients(double theta, int n) {
    if (n < 2) {
        throw std::invalid_argument("taylor_coefficients: n must be >= 2");
    }
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("taylor_coefficients: theta must be finite");
    }
    cxd itheta(0, theta);
    std::vector<cxd> c(n, 0.0);
    for (int k = 0; k < n; k++) {
        // term = (i theta)^m / m! starting at m = k, advancing by n.
        cxd term = 1.0;
        for (int m = 1; m <= k; m++) {
            term *= itheta / double(m);
        }
        int m = k;
        for (int j = 0; j < 1000; j++) {
            c[k] += term;
            if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(c[k]))) {
                break;
            }
            for (int step = 0; step < n; step++) {
                m++;
                term *= itheta / double(m);
            }
        }
    }
    return c;
}

PureState ancilla_state(double theta, int n) {
    if (n > 26) {
        throw std::invalid_argument("ancilla_state: ancilla register too large");
    }
    std::vector<cxd> c = taylor_coefficients(theta, n);
    double norm2 = 0.0;
    for (const cxd& v : c) {
        norm2 += std::norm(v);
    }
    PureState psi = PureState::Zero(std::int64_t(1) << (n - 1));
    for (int k = 0; k < n; k++) {
        psi((std::int64_t(1) << k) - 1) = c[k] / std::sqrt(norm2);
    }
    return psi;
}

namespace {

// Hadamard interference sign of outcome string o against the staircase
// branch with k trailing ones: parity of the overlap of the set bits.
double branch_sign(unsigned o, int k) {
    unsigned mask = (1u << k) - 1u;
    return std::popcount(o & mask) % 2 == 0 ? 1.0 : -1.0;
}

ExponentiationResult staircase_circuit(const Operator& t, const std::vector<cxd>& coeffs,
                                       const PureState& gamma) {
    int n = int(coeffs.size());
    if (n > 26) {
        throw std::invalid_argument("exponentiation: ancilla register too large");
    }
    if (t.rows() != t.cols() || t.rows() != gamma.size()) {
        throw std::invalid_argument("exponentiation: register dimension mismatch");
    }
    if (std::abs(gamma.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("exponentiation: gamma must be normalized");
    }
    double norm2 = 0.0;
    for (const cxd& v : coeffs) {
        norm2 += std::norm(v);
    }
    double inv_norm = 1.0 / std::sqrt(norm2);

    std::vector<PureState> branches(n);
    branches[0] = gamma;
    for (int k = 1; k < n; k++) {
        branches[k] = t * branches[k - 1];
    }

    unsigned n_outcomes = 1u << (n - 1);
    double amp_scale = inv_norm / std::sqrt(double(n_outcomes));
    ExponentiationResult res;
    res.probabilities.resize(n_outcomes);
    for (unsigned o = 0; o < n_outcomes; o++) {
        PureState v = PureState::Zero(gamma.size());
        for (int k = 0; k < n; k++) {
            v += amp_scale * coeffs[k] * branch_sign(o, k) * branches[k];
        }
        res.probabilities[o] = v.squaredNorm();
        if (o == 0) {
            res.p_all_plus = res.probabilities[0];
            if (res.p_all_plus <= 0) {
                throw NumericalError(
                    "exponentiation: all-plus branch has zero amplitude");
            }
            res.post_selected = v / v.norm();
        }
    }
    return res;
}

}  // namespace

ExponentiationResult run_exponentiation_circuit(const CyclicGate& t, double theta,
                                                const PureState& gamma) {
    if (t.order < 2) {
        throw std::invalid_argument(
            "run_exponentiation_circuit: cyclic order must be >= 2");
    }
    return staircase_circuit(t.op, taylor_coefficients(theta, t.order), gamma);
}

std::array<double, 8> plus_basis_probabilities(double theta) {
    std::vector<cxd> c = taylor_coefficients(theta, 4);
    double norm2 = 0.0;
    for (const cxd& v : c) {
        norm2 += std::norm(v);
    }
    std::array<double, 8> p{};
    for (unsigned o = 0; o < 8; o++) {
        cxd amp = 0.0;
        for (int k = 0; k < 4; k++) {
            amp += c[k] * branch_sign(o, k);
        }
        p[o] = std::norm(amp) / (8.0 * norm2);
    }
    return p;
}

ExponentiationResult approximate_exponentiation(const Operator& t, double theta, int m,
                                                const PureState& gamma) {
    if (m < 2) {
        throw std::invalid_argument("approximate_exponentiation: m must be >= 2");
    }
    if (!is_unitary(t, 1e-10)) {
        throw std::invalid_argument("approximate_exponentiation: non-unitary gate");
    }
    // Plain truncated series: one Taylor term per branch.
    std::vector<cxd> coeffs(m);
    cxd term = 1.0;
    coeffs[0] = term;
    for (int k = 1; k < m; k++) {
        term *= cxd(0, theta) / double(k);
        coeffs[k] = term;
    }
    return staircase_circuit(t, coeffs, gamma);
}

}  // namespace ciswap
