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

#include <cmath>

#include <doctest.h>

#include "ciswap/circuit_quantization.h"
#include "ciswap/gate_models.h"
#include "test_helpers.h"

using namespace ciswap;
using namespace ciswap::testing;

namespace {

GateModelParams one_control_params(double jz, double jx) {
    GateModelParams p;
    p.n_controls = 1;
    p.omega = 5.0 * kGHz;
    p.jz = {jz};
    p.delta = resonant_delta(p.jz);
    p.jx = jx;
    return p;
}

// Complete-graph flip-flop network on k qubits, the generator behind the
// closed-form propagators.
Operator flipflop_network(int k) {
    Operator h = Operator::Zero(1 << k, 1 << k);
    for (int i = 0; i < k; i++) {
        for (int j = i + 1; j < k; j++) {
            h += op_on(raise_op(), i, k) * op_on(lower_op(), j, k);
            h += op_on(lower_op(), i, k) * op_on(raise_op(), j, k);
        }
    }
    return h;
}

}  // namespace

TEST_SUITE("gate_models") {

TEST_CASE("interaction hamiltonian couples the bare target pair") {
    GateModelParams p;
    p.n_controls = 0;
    p.delta = 0.0;
    p.jx = 3.0 * kMHz;
    Operator h = interaction_hamiltonian(p);
    REQUIRE(h.rows() == 4);
    // <01|H|10>: T1 de-excites, T2 excites.
    CHECK(std::abs(h(1, 2) - cxd(p.jx, 0)) < 1e-6);
    CHECK(is_hermitian(h));
}

TEST_CASE("interaction hamiltonian equals the direct Pauli sum") {
    GateModelParams p = one_control_params(50.0 * kMHz, 10.0 * kMHz);
    Operator h = interaction_hamiltonian(p);
    // Qubits [control, T1, T2] with qubit 0 most significant.
    Operator direct = -p.delta * op_on(pauli_z(), 1, 3) +
                      p.jz[0] * op_on(pauli_z(), 0, 3) * op_on(pauli_z(), 1, 3) +
                      p.jx * (op_on(raise_op(), 1, 3) * op_on(lower_op(), 2, 3) +
                              op_on(lower_op(), 1, 3) * op_on(raise_op(), 2, 3));
    CHECK(max_abs_diff(h, direct) < 1e-6);
    CHECK(is_hermitian(h, 1e-6));
}

TEST_CASE("interaction hamiltonian is diagonal-free in the resonant sector") {
    GateModelParams p = one_control_params(50.0 * kMHz, 10.0 * kMHz);
    Operator h = interaction_hamiltonian(p);
    // All-controls-one sector rows 5 and 6 hold the exchange block; the
    // resonance condition zeroes their diagonal.
    CHECK(std::abs(h(5, 5)) < 1e-3);
    CHECK(std::abs(h(6, 6)) < 1e-3);
}

TEST_CASE("gate model validation rejects inconsistent shapes") {
    GateModelParams p = one_control_params(50.0 * kMHz, 10.0 * kMHz);
    p.jz = {50.0 * kMHz, 20.0 * kMHz};
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = one_control_params(50.0 * kMHz, 10.0 * kMHz);
    p.phase_sign = 2;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("resonant_delta balances the summed longitudinal couplings") {
    std::vector<double> jz = {50.0 * kMHz, -20.0 * kMHz};
    CHECK(resonant_delta(jz) == -(jz[0] + jz[1]));
    GateModelParams p = one_control_params(50.0 * kMHz, 10.0 * kMHz);
    CHECK(is_resonant(p));
    p.delta *= 1.01;
    CHECK_FALSE(is_resonant(p));
}

TEST_CASE("ideal_cniswap with no controls is the iSWAP matrix") {
    CHECK(max_abs_diff(ideal_cniswap(0), iswap_matrix()) == 0.0);
    // Opposite phase sign conjugates the off-diagonals.
    CHECK(ideal_cniswap(0, -1)(1, 2) == cxd(0, 1));
}

TEST_CASE("ideal_cniswap acts only in the all-controls-one sector") {
    Operator u = ideal_cniswap(1);
    REQUIRE(u.rows() == 8);
    CHECK(max_abs_diff(u.topLeftCorner(4, 4), identity(4)) == 0.0);
    CHECK(u(5, 6) == cxd(0, -1));
    CHECK(u(6, 5) == cxd(0, -1));
    CHECK(u(5, 5) == cxd(0, 0));
    CHECK(is_unitary(u, 1e-12));
}

TEST_CASE("ideal_cniswap has cyclic order four") {
    Operator u = ideal_cniswap(1);
    Operator u4 = u * u * u * u;
    CHECK(max_abs_diff(u4, identity(8)) < 1e-12);
    CHECK(max_abs_diff(u * u, identity(8)) > 0.5);
}

TEST_CASE("ideal_cniswap conserves target excitation number") {
    Operator u = ideal_cniswap(1);
    Operator num = op_on(pauli_z(), 1, 3) + op_on(pauli_z(), 2, 3);
    CHECK(max_abs_diff(u * num, num * u) < 1e-12);
}

TEST_CASE("ideal_sqrt_iswap squares to the full gate") {
    for (int n : {0, 1, 2}) {
        Operator s = ideal_sqrt_iswap(n);
        CHECK(is_unitary(s, 1e-12));
        CHECK(max_abs_diff(s * s, ideal_cniswap(n)) < 1e-12);
    }
    Operator s0 = ideal_sqrt_iswap(0);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s0(1, 1) - cxd(r, 0)) < 1e-12);
    CHECK(std::abs(s0(1, 2) - cxd(0, -r)) < 1e-12);
}

TEST_CASE("evolution operator starts at the identity") {
    GateModelParams p = one_control_params(50.0 * kMHz, 10.0 * kMHz);
    CHECK(max_abs_diff(evolution_operator(p, 0.0), identity(8)) < 1e-12);
}

TEST_CASE("evolution operator reaches the gate at a quarter exchange period") {
    GateModelParams p = one_control_params(50.0 * kMHz, 10.0 * kMHz);
    double t_gate = (kTwoPi / 4.0) / p.jx;
    CHECK(max_abs_diff(evolution_operator(p, t_gate), ideal_cniswap(1)) < 1e-12);
    CHECK(max_abs_diff(evolution_operator(p, t_gate / 2.0), ideal_sqrt_iswap(1)) <
          1e-12);
    // Odd multiples of the gate time reproduce the gate.
    CHECK(max_abs_diff(evolution_operator(p, 3.0 * t_gate), ideal_cniswap(1)) <
          1e-11);
}

TEST_CASE("evolution operator matches the sector matrix exponential") {
    GateModelParams p = one_control_params(40.0 * kMHz, 7.0 * kMHz);
    double t = 11.3e-9;
    Operator p_ones = Operator::Zero(2, 2);
    p_ones(1, 1) = 1.0;
    Operator h_eff = p.jx * kron2(p_ones, flipflop_network(2));
    CHECK(max_abs_diff(evolution_operator(p, t), matrix_exp(cxd(0, -t) * h_eff)) <
          1e-10);
}

TEST_CASE("evolution operator is a one-parameter group") {
    GateModelParams p = one_control_params(50.0 * kMHz, 10.0 * kMHz);
    double t1 = 7.0e-9;
    double t2 = 12.0e-9;
    CHECK(max_abs_diff(evolution_operator(p, t1 + t2),
                       evolution_operator(p, t1) * evolution_operator(p, t2)) <
          1e-10);
}

TEST_CASE("evolution operator refuses off-resonant parameters") {
    GateModelParams p = one_control_params(50.0 * kMHz, 10.0 * kMHz);
    p.delta = 0.0;
    CHECK_THROWS_AS(evolution_operator(p, 1e-9), std::invalid_argument);
}

TEST_CASE("swap array hamiltonian equals the direct Pauli sum") {
    SwapArrayParams p;
    p.n_targets = 3;
    p.omega_bar = 5.0 * kGHz;
    p.jz = {-20.0 * kMHz, 20.0 * kMHz, 60.0 * kMHz};
    p.detunings = {20.0 * kMHz, -20.0 * kMHz, -60.0 * kMHz};
    p.jx = 4.0 * kMHz;
    Operator h = swap_array_hamiltonian(p);
    REQUIRE(h.rows() == 64);
    CHECK(is_hermitian(h, 1e-6));
    Operator direct = Operator::Zero(64, 64);
    for (int i = 0; i < 3; i++) {
        direct -= (p.omega_bar + p.detunings[i]) * op_on(pauli_z(), 3 + i, 6);
        direct += p.jz[i] * op_on(pauli_z(), i, 6) * op_on(pauli_z(), 3 + i, 6);
        for (int j = i + 1; j < 3; j++) {
            direct += p.jx * op_on(pauli_x(), 3 + i, 6) * op_on(pauli_x(), 3 + j, 6);
        }
    }
    CHECK(max_abs_diff(h, direct) < 1e-3);
}

TEST_CASE("swap array resonance requires opposing detunings") {
    SwapArrayParams p;
    p.n_targets = 2;
    p.jz = {-20.0 * kMHz, 20.0 * kMHz};
    p.detunings = {20.0 * kMHz, -20.0 * kMHz};
    p.jx = 4.0 * kMHz;
    CHECK(is_resonant(p));
    p.detunings[0] *= 1.01;
    CHECK_FALSE(is_resonant(p));
}

TEST_CASE("flipflop propagator starts at identity and stays unitary") {
    for (int k : {1, 2, 3, 4, 5}) {
        CHECK(max_abs_diff(flipflop_propagator(k, 0.0), identity(1 << k)) < 1e-12);
        CHECK(is_unitary(flipflop_propagator(k, 0.7), 1e-10));
    }
}

TEST_CASE("flipflop propagator matches the brute-force exponential") {
    for (int k : {2, 3, 4, 5}) {
        for (double theta : {0.3, 1.1, kTwoPi / 6.0}) {
            Operator closed = flipflop_propagator(k, theta);
            Operator brute = matrix_exp(cxd(0, theta) * flipflop_network(k));
            CHECK(max_abs_diff(closed, brute) < 1e-10);
        }
    }
}

TEST_CASE("flipflop propagator hits the printed third-period block") {
    // At theta = pi/3 the one-excitation block collapses to
    // (i/3) e^{i pi/6} [[-1,2,2],[2,-1,2],[2,2,-1]].
    Operator u = flipflop_propagator(3, kTwoPi / 6.0);
    cxd scale = cxd(0, 1.0 / 3.0) * std::exp(cxd(0, kTwoPi / 12.0));
    int idx[3] = {1, 2, 4};
    for (int a = 0; a < 3; a++) {
        for (int b = 0; b < 3; b++) {
            cxd expect = scale * (a == b ? -1.0 : 2.0);
            CHECK(std::abs(u(idx[a], idx[b]) - expect) < 1e-12);
        }
    }
}

TEST_CASE("swap array ideal unitary gates only flagged targets") {
    double jx = 4.0 * kMHz;
    double t = (kTwoPi / 4.0) / jx;
    Operator u = swap_array_ideal_unitary(3, t, jx);
    REQUIRE(u.rows() == 64);
    CHECK(is_unitary(u, 1e-10));
    // All-controls-zero sector: identity on the targets.
    CHECK(max_abs_diff(u.topLeftCorner(8, 8), identity(8)) < 1e-12);
    // Controls |110>: targets 1,2 swap with +i, target 3 spectates.
    // |110;010> (index 50) -> |110;100> (index 52).
    CHECK(std::abs(u(52, 50) - cxd(0, 1)) < 1e-12);
    CHECK(std::abs(u(50, 50)) < 1e-12);
    CHECK(std::abs(u(51, 51) - std::cos(jx * t)) < 1e-12);
}

TEST_CASE("swap array ideal unitary preserves target excitation") {
    double jx = 4.0 * kMHz;
    Operator u = swap_array_ideal_unitary(3, 17.0e-9, jx);
    Operator num = Operator::Zero(64, 64);
    for (int i = 0; i < 3; i++) {
        num += op_on(pauli_z(), 3 + i, 6);
    }
    CHECK(max_abs_diff(u * num, num * u) < 1e-10);
}

TEST_CASE("swap array ideal unitary covers four targets by brute force") {
    double jx = 4.0 * kMHz;
    double t = 13.0e-9;
    Operator u = swap_array_ideal_unitary(4, t, jx);
    REQUIRE(u.rows() == 256);
    CHECK(is_unitary(u, 1e-9));
    // Fully gated sector equals the four-qubit flip-flop propagator.
    Operator ff = flipflop_propagator(4, jx * t);
    Operator sector = u.bottomRightCorner(16, 16);
    CHECK(max_abs_diff(sector, ff) < 1e-9);
    CHECK_THROWS_AS(swap_array_ideal_unitary(2, t, jx), std::invalid_argument);
}

}  // TEST_SUITE
