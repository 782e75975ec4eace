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

#ifndef CISWAP_GATE_MODELS_H
#define CISWAP_GATE_MODELS_H

#include <vector>

#include "ciswap/core.h"

namespace ciswap {

// Parameters of the n-control iSWAP gate model. All couplings and
// frequencies are angular (rad/s). Qubit ordering is [controls..., T1, T2];
// qubit 0 is the most significant bit of the basis index.
struct GateModelParams {
    int n_controls = 0;
    // Common target frequency; it is absorbed by the rotating frame and
    // does not enter the interaction Hamiltonian.
    double omega = 0.0;
    // Detuning of target 1 relative to target 2.
    double delta = 0.0;
    // Longitudinal coupling between control i and target 1, one per control.
    std::vector<double> jz;
    // Exchange coupling between the two targets.
    double jx = 0.0;
    // +1 selects the -i swap phase, -1 the +i phase.
    int phase_sign = +1;
};

// Throws std::invalid_argument on shape or range violations.
void validate(const GateModelParams& p);

// Detuning that brings the all-controls-one sector onto exchange resonance:
// delta == -sum(jz).
double resonant_delta(const std::vector<double>& jz);

bool is_resonant(const GateModelParams& p, double rel_tol = 1e-9);

// Static interaction Hamiltonian on 2^(n+2) dimensions:
//   -delta sz_T1  +  sum_i jz_i sz_i sz_T1  +  jx (s+_T1 s-_T2 + h.c.)
Operator interaction_hamiltonian(const GateModelParams& p);

// Identity on every control sector except all-controls-one, where the
// target block is the iSWAP with off-diagonal -i*phase_sign.
Operator ideal_cniswap(int n_controls, int phase_sign = +1);

// Square root of ideal_cniswap(n, +1): half-angle target block.
Operator ideal_sqrt_iswap(int n_controls);

// Resonant rotating-frame propagator exp(-i t jx P_ones x flipflop):
// the exchange block turns only in the all-controls-one sector, all other
// sectors are identity. Requires is_resonant(p); otherwise throws
// std::invalid_argument suggesting exact-Hamiltonian simulation.
Operator evolution_operator(const GateModelParams& p, double t);

// Parameters of an n-pair swap array (each target Ti carries one control
// Ci). Angular units (rad/s). Qubit ordering is [C1..Cn, T1..Tn], qubit 0
// most significant.
struct SwapArrayParams {
    int n_targets = 2;
    // Average target frequency. Must stay large against jx so that the
    // counter-rotating half of the sx sx coupling stays off-resonant.
    double omega_bar = kTwoPi * 5e9;
    // Per-target detuning from omega_bar.
    std::vector<double> detunings;
    // Longitudinal coupling of pair i.
    std::vector<double> jz;
    // Uniform all-to-all target exchange.
    double jx = 0.0;
    // Control frequencies; empty means zero for every control. These terms
    // are diagonal per control sector and cancel in the rotating frame.
    std::vector<double> control_freqs;
};

void validate(const SwapArrayParams& p);

// Resonance condition jz_i == -detuning_i for every pair.
bool is_resonant(const SwapArrayParams& p, double rel_tol = 1e-9);

// Static Hamiltonian on 4^n dimensions:
//   sum_i [ -(omega_bar + detuning_i) sz_Ti + jz_i sz_Ci sz_Ti
//           - control_freq_i sz_Ci ]  +  sum_{i<j} jx sx_Ti sx_Tj
// The sx sx coupling is kept in full; no rotating-wave reduction.
Operator swap_array_hamiltonian(const SwapArrayParams& p);

// Propagator exp(+i theta H_ff) on k qubits, H_ff the complete-graph
// flip-flop network sum_{i<j} (s+_i s-_j + h.c.). Closed form on the
// single-excitation and single-hole sectors for k <= 3, Pade exponential
// beyond.
Operator flipflop_propagator(int k, double theta);

// Ideal resonant evolution on 4^n dimensions, block diagonal over control
// sectors: targets whose controls read 1 evolve under exp(+i jx t H_ff)
// with H_ff the mutual flip-flop network of the gated subset; all other
// targets are spectators. Supports n in {3,4}; closed form up to three
// gated targets, brute-force exponential for four.
Operator swap_array_ideal_unitary(int n_targets, double t, double jx);

}  // namespace ciswap

#endif
