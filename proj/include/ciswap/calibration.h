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

#ifndef CISWAP_CALIBRATION_H
#define CISWAP_CALIBRATION_H

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ciswap/circuit_quantization.h"
#include "ciswap/flux_gate.h"

namespace ciswap {

struct ErrorModel {
    // Relative standard deviation applied to every energy and capacitance.
    double rel_sigma = 0.05;
    // Absolute scatter of the drive frequency, rad/s.
    double flux_freq_sigma = kTwoPi * 1e6;
    int n_samples = 1000;
    std::uint64_t rng_seed = 0;
};

void validate(const ErrorModel& em);

// Draws every energy and capacitance from Normal(X0, rel_sigma*X0),
// redrawing non-positive values. The flux is copied unchanged (it is a
// bias setting, not a fabricated element). Deterministic per
// (em.rng_seed, draw_index).
CircuitParams sample_circuit_params(const CircuitParams& nominal, const ErrorModel& em,
                                    std::uint64_t draw_index);

struct ParamStats {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation
};

struct GateParamErrorReport {
    // Per node [controls..., T1, TB, T2], targets dressed.
    std::vector<ParamStats> omega;
    std::vector<ParamStats> jz;
    ParamStats jx;
    int n_success = 0;
    double failure_fraction = 0.0;
};

// Pushes em.n_samples scattered circuits through the derivation pipeline
// and reports per-parameter mean and spread. Samples whose pipeline errors
// out are counted as failures; more than half failing raises
// NumericalError.
GateParamErrorReport propagate_gate_param_errors(
    const CircuitParams& nominal, const ErrorModel& em,
    double dispersive_threshold = kDispersiveThreshold);

struct DriveSettings {
    double theta = 0.1 * kFluxUnit;  // flux bias, stored units
    double chi = 0.1 * kFluxUnit;    // modulation amplitude, stored units
    // Scatter the circuit elements per sample in addition to the drive
    // frequency. Off by default: the headline distribution isolates the
    // drive-frequency error at the nominal circuit.
    bool fabrication_scatter = false;
    bool include_dc = false;
};

struct FidelitySample {
    std::uint64_t draw_index = 0;
    double omega_phi = 0.0;   // rad/s, including the scatter
    double gate_time = 0.0;   // seconds
    double f_bare = 0.0;
    double f_zcal = 0.0;
};

struct FidelityDistribution {
    std::vector<FidelitySample> samples;
    int n_failed = 0;

    // Fractions of successful samples above the threshold.
    double fraction_above(double threshold) const;       // Z-calibrated
    double fraction_above_bare(double threshold) const;
};

// Per sample: (optionally scattered) circuit -> gate parameters at
// ds.theta -> drive frequency |resonance| + Normal(0, flux_freq_sigma) ->
// flux-driven simulation at the per-sample gate time pi/|a|. The drive
// noise stream is independent of the fabrication stream.
FidelityDistribution monte_carlo_gate_fidelity(
    const CircuitParams& nominal, const ErrorModel& em, const DriveSettings& ds,
    const std::optional<DecoherenceSpec>& dec = {});

struct NelderMeadOptions {
    double x_tol = 1e-8;     // simplex diameter
    double f_tol = 1e-12;    // best-worst value spread
    int max_iter = 5000;
    double initial_step = 0.1;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double f = 0.0;
    bool converged = false;
    int iterations = 0;
};

// Standard reflection / expansion / contraction / shrink simplex descent.
// Non-finite f at x0 throws; max-iteration exhaustion returns best-so-far
// with converged == false.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0,
                             const NelderMeadOptions& opts = {});

struct SearchTargets {
    double jz_min = kTwoPi * 30e6;    // |jz| window, rad/s
    double jz_max = kTwoPi * 300e6;
    double jx_min = kTwoPi * 5e6;     // |jx| window, rad/s
    double jx_max = kTwoPi * 50e6;
    double min_detuning = kTwoPi * 0.5e9;  // target-bus spacing floor, rad/s
    double alpha_floor = 0.02;        // require alpha <= -alpha_floor
    double ej_ec_floor = 70.0;
    double weight_range = 1.0;
    double weight_floor = 100.0;
};

void validate(const SearchTargets& t);

struct SearchResult {
    std::vector<CircuitParams> candidates;  // feasible, sorted by cost
    std::vector<double> costs;
};

// Raised when no restart lands on a feasible circuit; carries the best
// infeasible attempt.
class SearchFailure : public NumericalError {
  public:
    SearchFailure(const std::string& what, CircuitParams best, double cost)
        : NumericalError(what), best_infeasible(std::move(best)), best_cost(cost) {}

    CircuitParams best_infeasible;
    double best_cost;
};

// Randomized-restart simplex search over the single-control circuit in log
// space (eleven positive elements). Each returned candidate re-validates
// against every constraint. Deterministic per rng_seed.
SearchResult search_circuit_params(const SearchTargets& targets, int n_restarts,
                                   std::uint64_t rng_seed);

}  // namespace ciswap

#endif
