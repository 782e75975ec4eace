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

#ifndef CISWAP_DYNAMICS_H
#define CISWAP_DYNAMICS_H

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ciswap/core.h"
#include "ciswap/gate_models.h"

namespace ciswap {

// Relaxation and dephasing times in seconds. Entries may be +infinity to
// disable the corresponding process on a qubit. Vectors of size one
// broadcast to every qubit.
struct DecoherenceSpec {
    std::vector<double> t1;
    std::vector<double> t2;

    static DecoherenceSpec uniform(double t1, double t2);
};

// Enforces t1 > 0, t2 > 0 and t2 <= 2 t1 (up to rounding slack).
void validate(const DecoherenceSpec& spec);

// Pure dephasing rate 1/t2 - 1/(2 t1); zero when both are infinite.
double dephasing_rate(double t1, double t2);

// Per qubit: sqrt(1/t1) lower_op and sqrt(gamma_phi/2) sz. Infinite times
// contribute no operator; fully infinite spec yields an empty list.
std::vector<Operator> collapse_operators(int n_qubits, const DecoherenceSpec& spec);

// Summed dissipator superoperator of the collapse list in the
// column-stacking convention:
//   conj(C) (x) C - 1/2 I (x) C^dag C - 1/2 (C^dag C)^T (x) I.
Operator dissipator_superop(const std::vector<Operator>& collapse, Eigen::Index dim);

// Per-qubit rates expanded from the spec (size-1 entries broadcast).
struct QubitRates {
    std::vector<double> relax;    // 1/t1
    std::vector<double> dephase;  // 1/t2 - 1/(2 t1), clipped at 0
};

QubitRates qubit_rates(const DecoherenceSpec& spec, int n_qubits);

struct DriveTerm {
    Operator op;
    std::function<double(double)> amplitude;
};

// H(t) = base + sum_k amplitude_k(t) * op_k.
struct TimeDependentHamiltonian {
    Operator base;
    std::vector<DriveTerm> drives;

    Operator at(double t) const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Operator> states;
};

// Master-equation integration with an adaptive Dormand-Prince 4(5) step on
// the vectorized density matrix, relative tolerance 1e-8, absolute 1e-10.
// dt_ctrl caps the step (and seeds the initial step); pass <= 0 for
// automatic. Records the state at every accepted step. Throws
// NumericalError with a time stamp on step-size collapse or non-finite
// states.
Trajectory lindblad_evolve(const TimeDependentHamiltonian& h, const Operator& rho0,
                           const std::vector<Operator>& collapse, double t_final,
                           double dt_ctrl = 0.0);

// Conjugates every state by exp(+i h_diag t). h_diag must be diagonal.
Trajectory rotating_frame(const Trajectory& traj, const Operator& h_diag);

// Completely positive map stored as a superoperator in the column-stacking
// convention: vec(E(rho)) = superop * vec(rho).
struct QuantumChannel {
    Eigen::Index dim = 0;
    Operator superop;

    Operator apply(const Operator& rho) const;
    Operator choi() const;
    bool is_trace_preserving(double tol = 1e-8) const;
    bool is_completely_positive(double tol = 1e-8) const;
};

QuantumChannel unitary_channel(const Operator& u);

// Materializes the channel by evolving the d^2 matrix units.
QuantumChannel channel_from_evolution(
    const std::function<Operator(const Operator&)>& evolve, Eigen::Index dim);

// Haar-average fidelity of the channel against a target unitary,
//   F = (Tr(S_U^dag S) + d) / (d^2 + d),   S_U = conj(U) (x) U,
// which equals the Kraus form (sum_k |Tr(U^dag K_k)|^2 + d)/(d^2 + d).
// Throws std::invalid_argument for a non-unitary target.
double average_gate_fidelity(const QuantumChannel& ch, const Operator& u_target);

struct HaarEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

// Monte Carlo estimate of the same Haar average from random pure states;
// cross-check oracle for average_gate_fidelity.
HaarEstimate average_gate_fidelity_haar(const QuantumChannel& ch,
                                        const Operator& u_target, int n_samples,
                                        std::uint64_t seed);

struct CniswapOptions {
    // Restrict the exchange term to the all-controls-one sector. The
    // off-resonant sectors then contribute no coherent error and the
    // undecohered fidelity is exactly 1.
    bool rwa = false;
};

struct GateSimResult {
    double fidelity = 0.0;
    double gate_time = 0.0;  // seconds
};

// Evolves the full interaction Hamiltonian for T = pi/(2 jx), moves to the
// frame rotating with the Hamiltonian diagonal, and scores the channel
// against ideal_cniswap. Decoherence, when given, applies per-qubit
// relaxation and dephasing. Exploits the block structure over control
// sectors; agrees with the dense lindblad_evolve route (tested).
GateSimResult simulate_cniswap(const GateModelParams& p,
                               const std::optional<DecoherenceSpec>& dec = {},
                               const CniswapOptions& opts = {});

// Same protocol for the swap array; target is the adjoint closed form of
// swap_array_ideal_unitary (the simulation evolves exp(-iHt)). Default
// gate time pi/(2 jx).
double simulate_swap_array(const SwapArrayParams& p,
                           const std::optional<DecoherenceSpec>& dec = {},
                           std::optional<double> t = {});

}  // namespace ciswap

#endif
