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

#ifndef CISWAP_CIRCUIT_QUANTIZATION_H
#define CISWAP_CIRCUIT_QUANTIZATION_H

#include <array>
#include <vector>

#include "ciswap/core.h"

namespace ciswap {

// Unit conversions. Energies and frequencies are stored angular (rad/s);
// capacitances in femtofarad. External flux is stored as pi * (Phi/Phi0),
// so the bus Josephson term reads 8 E_TB cos(2 flux) literally.
inline constexpr double kGHz = kTwoPi * 1e9;   // 2*pi*GHz in rad/s
inline constexpr double kMHz = kTwoPi * 1e6;   // 2*pi*MHz in rad/s
inline constexpr double kFluxUnit = kTwoPi / 2.0;  // one flux quantum
// Charging-energy scale e^2/(2h) in GHz*fF; multiplied out to rad/s*fF.
inline constexpr double kEcUnitGHzfF = 19.37024;
inline constexpr double kEcUnit = kEcUnitGHzfF * kGHz;

inline double flux_from_phi0_fraction(double f) { return f * kFluxUnit; }
inline double phi0_fraction_from_flux(double flux) { return flux / kFluxUnit; }

// Lumped-element description of the gate circuit: n control transmons
// longitudinally attached to target T1, a tunable bus TB between the two
// targets. Node order everywhere is [controls..., T1, TB, T2].
struct CircuitParams {
    int n_controls = 1;
    std::vector<double> e_control;  // control Josephson energies, rad/s
    double e_t1 = 0.0;
    double e_t2 = 0.0;
    double e_tb = 0.0;              // bus junction energy (single junction)
    std::vector<double> e_z;        // coupler junction energies, rad/s
    std::vector<double> c_control;  // fF
    double c_t1 = 0.0;
    double c_t2 = 0.0;
    double c_tb = 0.0;
    std::vector<double> c_z;        // fF
    double c_x = 0.0;               // target-bus coupling capacitance, fF
    double flux = 0.0;              // pi * (Phi/Phi0)
};

void validate(const CircuitParams& p);

inline int node_count(const CircuitParams& p) { return p.n_controls + 3; }

// Node-basis capacitance matrix (fF). Every control couples to T1 through
// its c_z; the bus couples to both targets through c_x.
Eigen::MatrixXd capacitance_matrix(const CircuitParams& p);

struct DerivedCircuitQuantities {
    Eigen::MatrixXd k_matrix;    // fF
    Eigen::VectorXd e_j;         // effective Josephson energy per node, rad/s
    Eigen::VectorXd e_c;         // effective charging energy per node, rad/s
    Eigen::VectorXd zeta;        // dimensionless node impedances
    Eigen::VectorXd omega_bare;  // sqrt(8 e_j e_c) per node, rad/s
    // Bare frequencies with the quartic cross-junction shifts applied to the
    // controls and T1; TB and T2 carry no shared junction and stay bare.
    Eigen::VectorXd omega_corrected;
    std::vector<double> g_z;     // longitudinal control-T1 coupling, rad/s
    std::vector<double> g_xz;    // mixed control-T1 coupling, rad/s
    double g_x_t1tb = 0.0;       // transverse T1-bus coupling, rad/s
    double g_x_tbt2 = 0.0;       // transverse bus-T2 coupling, rad/s
    double delta_small = 0.0;    // (omega_T1 - omega_T2)/2 with corrections
};

// Effective energies, impedances and bare couplings from the capacitance
// matrix. Throws NumericalError when cos(2 flux) <= 0 (bus junction energy
// loses sign; message carries the offending flux) or when the capacitance
// matrix is singular.
DerivedCircuitQuantities derive_quantities(const CircuitParams& p);

struct PerturbativeParams {
    double delta_t1 = 0.0;     // rad/s
    std::vector<double> jz;    // rad/s per control
};

// Second-order gate parameters from the bare couplings.
PerturbativeParams perturbative_gate_params(const DerivedCircuitQuantities& q);

inline constexpr double kDispersiveThreshold = 0.3;
inline constexpr double kDispersiveWarn = 0.15;

struct DressedParams {
    double omega_t1 = 0.0;   // rad/s
    double omega_t2 = 0.0;   // rad/s
    double jx = 0.0;         // rad/s
    double max_ratio = 0.0;  // max |g/(omega_T - omega_TB)|
};

// Adiabatic elimination of the bus: dressed target frequencies and the
// effective exchange. Throws NumericalError carrying the offending ratio
// when the dispersive condition |g/(omega_T - omega_TB)| < threshold
// fails. Pass +infinity to force evaluation of ill-conditioned designs.
DressedParams dressed_params(const DerivedCircuitQuantities& q,
                             double dispersive_threshold = kDispersiveThreshold);

struct FluxDerivatives {
    double djx_dphi = 0.0;
    double d2jx_dphi2 = 0.0;
    std::array<double, 2> domega_dphi = {0.0, 0.0};    // dressed T1, T2
    std::array<double, 2> d2omega_dphi2 = {0.0, 0.0};  // dressed T1, T2
};

inline constexpr double kFluxStep = 1e-4 * kFluxUnit;

// Central finite differences of the dressed exchange and frequencies with
// respect to the stored flux. Requires [theta - 2h, theta + 2h] inside the
// cos(2 flux) > 0 domain. Step choice is Richardson-checked (tested).
FluxDerivatives flux_derivatives(const CircuitParams& p, double theta,
                                 double h = kFluxStep,
                                 double dispersive_threshold = kDispersiveThreshold);

struct DerivedGateParams {
    // Per-node frequencies [controls..., T1, TB, T2]; targets dressed.
    std::vector<double> omega;
    double delta_t1 = 0.0;
    std::vector<double> jz;
    double jx_dressed = 0.0;
    double omega_t1_dressed = 0.0;
    double omega_t2_dressed = 0.0;
    FluxDerivatives derivs;
    double max_dispersive_ratio = 0.0;
};

// Full pipeline: capacitance matrix -> effective energies -> perturbative
// couplings -> dressing -> flux derivatives at p.flux. Errors from the
// stages propagate with stage labels in the message.
DerivedGateParams gate_params_from_circuit(
    const CircuitParams& p, double dispersive_threshold = kDispersiveThreshold);

struct QualityMetrics {
    // Relative anharmonicity per node, dimensionless (about -0.02 for a
    // healthy transmon); Duffing estimate -e_c/(2 omega).
    std::vector<double> alpha;
    std::vector<double> ej_over_ec;
};

QualityMetrics quality_metrics(const CircuitParams& p);

}  // namespace ciswap

#endif
