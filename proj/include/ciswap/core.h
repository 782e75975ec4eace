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

#ifndef CISWAP_CORE_H
#define CISWAP_CORE_H

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ciswap {

// Raised when a computation leaves its domain of validity (singular
// matrices, failed integrations, infeasible searches). Distinct from
// std::invalid_argument, which flags caller errors.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

using cxd = std::complex<double>;
// Dense complex square matrix; dimension metadata lives in rows()/cols().
using Operator = Eigen::MatrixXcd;
using PureState = Eigen::VectorXcd;

inline constexpr double kTwoPi = 6.28318530717958647692528676656;

// Single-qubit operators. sz = diag(1,-1): |0> has eigenvalue +1.
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();
// raise_op creates an excitation (|0> -> |1>); lower_op removes one.
Operator raise_op();
Operator lower_op();
Operator identity(Eigen::Index dim);

// Kronecker product of all factors, left factor most significant.
Operator tensor_product(const std::vector<Operator>& factors);
Operator kron2(const Operator& a, const Operator& b);
// op acting on qubit k of an n-qubit register; qubit 0 is the most
// significant bit of the basis index.
Operator op_on(const Operator& op, int k, int n_qubits);
// op (dimension 2^k) acting on the k listed qubits of an n-qubit register,
// identity elsewhere. qubits[0] is the most significant bit of op's own
// index. Qubit indices must be distinct and in range.
Operator embed_on_qubits(const Operator& op, const std::vector<int>& qubits,
                         int n_qubits);

// Scaling-and-squaring Pade exponential. Throws on non-finite input.
Operator matrix_exp(const Operator& a);

// Normalized complex-Gaussian vector; provably Haar distributed.
PureState haar_random_state(Eigen::Index dim, std::uint64_t seed);

Operator density_from_state(const PureState& psi);

bool is_hermitian(const Operator& a, double tol = 1e-12);
bool is_unitary(const Operator& a, double tol = 1e-10);
// Hermitian within tol, unit trace within tol, eigenvalues >= -eig_floor.
bool is_valid_density(const Operator& rho, double tol = 1e-9,
                      double eig_floor = 1e-10);

// Column-stacking vectorization (Eigen's native storage order) and inverse.
Eigen::VectorXcd vec(const Operator& a);
Operator unvec(const Eigen::VectorXcd& v, Eigen::Index dim);

}  // namespace ciswap

#endif
