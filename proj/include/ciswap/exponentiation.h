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

#ifndef CISWAP_EXPONENTIATION_H
#define CISWAP_EXPONENTIATION_H

#include <array>
#include <optional>
#include <vector>

#include "ciswap/core.h"

namespace ciswap {

// Smallest n <= n_max with ||T^n - I||_2 <= tol, or nullopt. Throws
// std::invalid_argument for a non-unitary T.
std::optional<int> cyclic_order(const Operator& t, int n_max = 64, double tol = 1e-8);

struct CyclicGate {
    Operator op;
    int order = 0;
};

// Detects and validates the order; throws NumericalError when none exists
// within n_max.
CyclicGate make_cyclic_gate(const Operator& op, int n_max = 64, double tol = 1e-8);

// Residue-class sums of exp(i theta): c_k = sum_j (i theta)^(n j + k) /
// (n j + k)!, k = 0..n-1, summed to machine convergence. Not normalized.
// n >= 2 required; |theta| > 1 is allowed but conditioning degrades.
std::vector<cxd> taylor_coefficients(double theta, int n);

// Normalized (n-1)-qubit state carrying c_k on the staircase basis state
// with k ones from the least significant bit (index 2^k - 1).
PureState ancilla_state(double theta, int n);

struct ExponentiationResult {
    // Probability per ancilla outcome string; bit 1 means the minus
    // outcome, ancilla q at bit position n-2-q (first ancilla most
    // significant).
    std::vector<double> probabilities;
    // Normalized register state conditioned on the all-plus outcome;
    // proportional to exp(i theta T)|gamma> when the plan is exact.
    PureState post_selected;
    double p_all_plus = 0.0;
};

// Staircase exponentiation circuit: ancilla q controls one application of
// T, so the k-excitation branch accumulates T^k; Hadamards then interfere
// the branches. Exact for cyclic T of the plan's order.
ExponentiationResult run_exponentiation_circuit(const CyclicGate& t, double theta,
                                                const PureState& gamma);

// Closed-form +/- statistics of the order-4 plan for a register state that
// T leaves invariant. Outcome indexing as in ExponentiationResult.
std::array<double, 8> plus_basis_probabilities(double theta);

// Truncated plan with coefficients (i theta)^k / k!, k < m, for gates with
// no usable cyclic order; the post-selected state carries the series tail
// as error, bounded by 2 |theta|^m / m! for unitary T.
ExponentiationResult approximate_exponentiation(const Operator& t, double theta, int m,
                                                const PureState& gamma);

}  // namespace ciswap

#endif
