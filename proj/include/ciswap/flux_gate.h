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

#ifndef CISWAP_FLUX_GATE_H
#define CISWAP_FLUX_GATE_H

#include <optional>
#include <vector>

#include "ciswap/circuit_quantization.h"
#include "ciswap/dynamics.h"

namespace ciswap {

// Harmonic decomposition of the flux-modulated exchange
//   J(t) = dc + a cos(omega_phi t) + b cos(2 omega_phi t)
// for flux(t) = theta + chi cos(omega_phi t) expanded to second order in
// chi, plus the time-averaged one-excitation detunings of the two control
// sectors.
struct FluxDrive {
    double a = 0.0;             // chi * dJ/dphi, rad/s
    double b = 0.0;             // chi^2/4 * d2J/dphi2, rad/s
    double dc = 0.0;            // J(theta) + b, rad/s; kept only on request
    double d_triggered = 0.0;   // control |1>: splitting_bar + jz, rad/s
    double d_idle = 0.0;        // control |0>: splitting_bar - jz, rad/s
    double gate_time = 0.0;     // pi / |a|, seconds
};

FluxDrive flux_drive(const DerivedGateParams& gp, double chi, bool include_dc = false);

// First-order resonance of the triggered sector; drive the flux here.
double flux_resonance_omega(const DerivedGateParams& gp, double chi);

struct FluxGateResult {
    std::vector<double> times;           // seconds
    std::vector<double> fidelity;        // average gate fidelity, bare
    std::vector<double> fidelity_zcal;   // after single-qubit Z calibration
    double gate_time = 0.0;              // seconds
    double omega_phi = 0.0;              // rad/s
};

struct FluxGateOptions {
    bool include_dc = false;
    // Number of reported time points spread over [0, gate_time]; the last
    // point sits exactly at the gate time.
    int n_time_points = 1;
    // Fixed integration step: 24 steps per period of the fastest phase.
    int steps_per_period = 24;
};

// Integrates the driven exchange in the one-excitation blocks of both
// control sectors (single control, two targets) and scores against the
// ideal controlled iSWAP. fidelity_zcal maximizes over residual Z phases
// on the two targets, the per-run single-qubit calibration an experiment
// would apply. With decoherence the per-sector blocks evolve under the
// master equation; the dissipators commute with the frame.
FluxGateResult simulate_flux_driven_gate(const DerivedGateParams& gp, double theta,
                                         double chi, double omega_phi,
                                         const std::optional<DecoherenceSpec>& dec = {},
                                         const FluxGateOptions& opts = {});

}  // namespace ciswap

#endif
