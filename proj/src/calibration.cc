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

#include "ciswap/calibration.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "ciswap/rng.h"
#include "ciswap/tables.h"

namespace ciswap {

void validate(const ErrorModel& em) {
    if (!(em.rel_sigma >= 0) || !std::isfinite(em.rel_sigma)) {
        throw std::invalid_argument("ErrorModel: rel_sigma must be >= 0");
    }
    if (!(em.flux_freq_sigma >= 0) || !std::isfinite(em.flux_freq_sigma)) {
        throw std::invalid_argument("ErrorModel: flux_freq_sigma must be >= 0");
    }
    if (em.n_samples < 1) {
        throw std::invalid_argument("ErrorModel: n_samples must be >= 1");
    }
}

namespace {

// Normal(x0, rel*x0) truncated to positive values by redrawing.
double scatter_positive(double x0, double rel, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(x0, rel * std::abs(x0));
    double y = dist(rng);
    while (y <= 0) {
        y = dist(rng);
    }
    return y;
}

// Salt separating the drive-frequency noise stream from the fabrication
// stream keyed on the same ErrorModel seed.
constexpr std::uint64_t kDriveStreamSalt = 0x9E3779B97F4A7C15ULL;

}  // namespace

CircuitParams sample_circuit_params(const CircuitParams& nominal, const ErrorModel& em,
                                    std::uint64_t draw_index) {
    validate(nominal);
    validate(em);
    CircuitParams out = nominal;
    if (em.rel_sigma == 0) {
        return out;
    }
    std::mt19937_64 rng = make_rng(em.rng_seed, draw_index);
    double rel = em.rel_sigma;
    for (double& e : out.e_control) {
        e = scatter_positive(e, rel, rng);
    }
    out.e_t1 = scatter_positive(out.e_t1, rel, rng);
    out.e_t2 = scatter_positive(out.e_t2, rel, rng);
    out.e_tb = scatter_positive(out.e_tb, rel, rng);
    for (double& e : out.e_z) {
        e = scatter_positive(e, rel, rng);
    }
    for (double& c : out.c_control) {
        c = scatter_positive(c, rel, rng);
    }
    out.c_t1 = scatter_positive(out.c_t1, rel, rng);
    out.c_t2 = scatter_positive(out.c_t2, rel, rng);
    out.c_tb = scatter_positive(out.c_tb, rel, rng);
    for (double& c : out.c_z) {
        c = scatter_positive(c, rel, rng);
    }
    out.c_x = scatter_positive(out.c_x, rel, rng);
    return out;
}

namespace {

ParamStats stats_of(const std::vector<double>& xs) {
    ParamStats s;
    if (xs.empty()) {
        return s;
    }
    s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
    if (xs.size() < 2) {
        return s;
    }
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - s.mean) * (x - s.mean);
    }
    s.std = std::sqrt(ss / double(xs.size() - 1));
    return s;
}

}  // namespace

GateParamErrorReport propagate_gate_param_errors(const CircuitParams& nominal,
                                                 const ErrorModel& em,
                                                 double dispersive_threshold) {
    validate(nominal);
    validate(em);
    int n_nodes = node_count(nominal);
    int n_controls = nominal.n_controls;
    std::vector<std::vector<double>> omega(n_nodes);
    std::vector<std::vector<double>> jz(n_controls);
    std::vector<double> jx;
    int n_failed = 0;
    for (int s = 0; s < em.n_samples; s++) {
        CircuitParams cp = sample_circuit_params(nominal, em, std::uint64_t(s));
        DerivedGateParams gp;
        try {
            gp = gate_params_from_circuit(cp, dispersive_threshold);
        } catch (const NumericalError&) {
            n_failed++;
            continue;
        }
        for (int k = 0; k < n_nodes; k++) {
            omega[k].push_back(gp.omega[k]);
        }
        for (int k = 0; k < n_controls; k++) {
            jz[k].push_back(gp.jz[k]);
        }
        jx.push_back(gp.jx_dressed);
    }
    GateParamErrorReport report;
    report.n_success = em.n_samples - n_failed;
    report.failure_fraction = double(n_failed) / double(em.n_samples);
    if (report.failure_fraction > 0.5) {
        throw NumericalError(
            "propagate_gate_param_errors: " +
            std::to_string(100.0 * report.failure_fraction) +
            "% of scattered circuits failed the derivation pipeline");
    }
    for (int k = 0; k < n_nodes; k++) {
        report.omega.push_back(stats_of(omega[k]));
    }
    for (int k = 0; k < n_controls; k++) {
        report.jz.push_back(stats_of(jz[k]));
    }
    report.jx = stats_of(jx);
    return report;
}

namespace {

double fraction(const std::vector<FidelitySample>& samples, double threshold,
                double FidelitySample::*field) {
    if (samples.empty()) {
        return 0.0;
    }
    int n = 0;
    for (const FidelitySample& s : samples) {
        if (s.*field > threshold) {
            n++;
        }
    }
    return double(n) / double(samples.size());
}

}  // namespace

double FidelityDistribution::fraction_above(double threshold) const {
    return fraction(samples, threshold, &FidelitySample::f_zcal);
}

double FidelityDistribution::fraction_above_bare(double threshold) const {
    return fraction(samples, threshold, &FidelitySample::f_bare);
}

FidelityDistribution monte_carlo_gate_fidelity(const CircuitParams& nominal,
                                               const ErrorModel& em,
                                               const DriveSettings& ds,
                                               const std::optional<DecoherenceSpec>& dec) {
    validate(nominal);
    validate(em);
    if (!std::isfinite(ds.theta) || !std::isfinite(ds.chi)) {
        throw std::invalid_argument("DriveSettings: theta and chi must be finite");
    }
    FluxGateOptions opts;
    opts.include_dc = ds.include_dc;

    // Without fabrication scatter every sample shares the nominal pipeline
    // output; derive it once.
    std::optional<DerivedGateParams> shared;
    CircuitParams biased = nominal;
    biased.flux = ds.theta;
    if (!ds.fabrication_scatter) {
        shared = gate_params_from_circuit(biased);
    }

    FidelityDistribution dist;
    for (int s = 0; s < em.n_samples; s++) {
        FidelitySample sample;
        sample.draw_index = std::uint64_t(s);
        try {
            DerivedGateParams gp;
            if (shared) {
                gp = *shared;
            } else {
                CircuitParams cp = sample_circuit_params(nominal, em, sample.draw_index);
                cp.flux = ds.theta;
                gp = gate_params_from_circuit(cp);
            }
            double omega_phi = flux_resonance_omega(gp, ds.chi);
            if (em.flux_freq_sigma > 0) {
                std::mt19937_64 rng =
                    make_rng(em.rng_seed ^ kDriveStreamSalt, sample.draw_index);
                std::normal_distribution<double> noise(0.0, em.flux_freq_sigma);
                omega_phi += noise(rng);
            }
            FluxGateResult res =
                simulate_flux_driven_gate(gp, ds.theta, ds.chi, omega_phi, dec, opts);
            sample.omega_phi = omega_phi;
            sample.gate_time = res.gate_time;
            sample.f_bare = res.fidelity.back();
            sample.f_zcal = res.fidelity_zcal.back();
        } catch (const NumericalError&) {
            dist.n_failed++;
            continue;
        }
        dist.samples.push_back(sample);
    }
    return dist;
}

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& opts) {
    int n = int(x0.size());
    if (n < 1) {
        throw std::invalid_argument("nelder_mead: empty starting point");
    }
    if (opts.max_iter < 1 || !(opts.initial_step > 0)) {
        throw std::invalid_argument("nelder_mead: bad options");
    }
    auto eval = [&](const Eigen::VectorXd& x) -> double {
        double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };
    if (!std::isfinite(f(x0))) {
        throw std::invalid_argument("nelder_mead: f not finite at x0");
    }

    std::vector<Eigen::VectorXd> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    for (int i = 0; i < n; i++) {
        xs[i + 1](i) += opts.initial_step;
    }
    for (int i = 0; i <= n; i++) {
        fs[i] = eval(xs[i]);
    }

    auto order = [&]() {
        std::vector<int> idx(n + 1);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return fs[a] < fs[b]; });
        std::vector<Eigen::VectorXd> xs2;
        std::vector<double> fs2;
        for (int i : idx) {
            xs2.push_back(xs[i]);
            fs2.push_back(fs[i]);
        }
        xs = std::move(xs2);
        fs = std::move(fs2);
    };

    NelderMeadResult res;
    int iter = 0;
    for (; iter < opts.max_iter; iter++) {
        order();
        double diameter = 0.0;
        for (int i = 1; i <= n; i++) {
            diameter = std::max(diameter, (xs[i] - xs[0]).norm());
        }
        if (diameter <= opts.x_tol || std::abs(fs[n] - fs[0]) <= opts.f_tol) {
            res.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; i++) {
            centroid += xs[i];
        }
        centroid /= double(n);

        Eigen::VectorXd xr = centroid + (centroid - xs[n]);
        double fr = eval(xr);
        if (fr < fs[0]) {
            Eigen::VectorXd xe = centroid + 2.0 * (xr - centroid);
            double fe = eval(xe);
            if (fe < fr) {
                xs[n] = xe;
                fs[n] = fe;
            } else {
                xs[n] = xr;
                fs[n] = fr;
            }
            continue;
        }
        if (fr < fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
            continue;
        }
        if (fr < fs[n]) {
            Eigen::VectorXd xc = centroid + 0.5 * (xr - centroid);
            double fc = eval(xc);
            if (fc <= fr) {
                xs[n] = xc;
                fs[n] = fc;
                continue;
            }
        } else {
            Eigen::VectorXd xc = centroid - 0.5 * (centroid - xs[n]);
            double fc = eval(xc);
            if (fc < fs[n]) {
                xs[n] = xc;
                fs[n] = fc;
                continue;
            }
        }
        for (int i = 1; i <= n; i++) {
            xs[i] = xs[0] + 0.5 * (xs[i] - xs[0]);
            fs[i] = eval(xs[i]);
        }
    }
    order();
    res.x = xs[0];
    res.f = fs[0];
    res.iterations = iter;
    return res;
}

void validate(const SearchTargets& t) {
    bool ranges_ok = t.jz_min > 0 && t.jz_max > t.jz_min && t.jx_min > 0 &&
                     t.jx_max > t.jx_min && t.min_detuning > 0;
    bool floors_ok = t.alpha_floor > 0 && t.ej_ec_floor > 0;
    bool weights_ok = t.weight_range > 0 && t.weight_floor > 0;
    if (!ranges_ok || !floors_ok || !weights_ok) {
        throw std::invalid_argument("SearchTargets: ranges, floors and weights "
                                    "must be positive and ordered");
    }
}

namespace {

// The eleven positive single-control circuit elements in log space.
Eigen::VectorXd log_elements(const CircuitParams& p) {
    Eigen::VectorXd x(11);
    x << p.e_control[0], p.e_t1, p.e_t2, p.e_tb, p.e_z[0], p.c_control[0], p.c_t1,
        p.c_t2, p.c_tb, p.c_z[0], p.c_x;
    return x.array().log();
}

CircuitParams circuit_from_log(const Eigen::VectorXd& x) {
    Eigen::VectorXd v = x.array().exp();
    CircuitParams p;
    p.n_controls = 1;
    p.e_control = {v(0)};
    p.e_t1 = v(1);
    p.e_t2 = v(2);
    p.e_tb = v(3);
    p.e_z = {v(4)};
    p.c_control = {v(5)};
    p.c_t1 = v(6);
    p.c_t2 = v(7);
    p.c_tb = v(8);
    p.c_z = {v(9)};
    p.c_x = v(10);
    p.flux = 0.0;
    return p;
}

double sq_range_violation(double v, double lo, double hi) {
    if (v < lo) {
        double r = (lo - v) / lo;
        return r * r;
    }
    if (v > hi) {
        double r = (v - hi) / hi;
        return r * r;
    }
    return 0.0;
}

double sq_floor_violation(double shortfall, double scale) {
    double r = std::max(0.0, shortfall / scale);
    return r * r;
}

constexpr double kPipelinePenalty = 1e6;

struct SearchEval {
    double cost = kPipelinePenalty;
    bool feasible = false;
};

SearchEval evaluate_candidate(const CircuitParams& cp, const SearchTargets& t) {
    SearchEval ev;
    DerivedGateParams gp;
    QualityMetrics qm;
    try {
        // Infinite threshold so the hinge on the ratio, not an exception,
        // steers the search back into the dispersive regime.
        gp = gate_params_from_circuit(cp,
                                      std::numeric_limits<double>::infinity());
        qm = quality_metrics(cp);
    } catch (const NumericalError&) {
        return ev;
    }
    int n_nodes = int(gp.omega.size());
    double omega_t1 = gp.omega[n_nodes - 3];
    double omega_tb = gp.omega[n_nodes - 2];
    double omega_t2 = gp.omega[n_nodes - 1];

    double cost = 0.0;
    cost += t.weight_range * sq_range_violation(std::abs(gp.jz[0]), t.jz_min, t.jz_max);
    cost += t.weight_range *
            sq_range_violation(std::abs(gp.jx_dressed), t.jx_min, t.jx_max);
    cost += t.weight_range * sq_floor_violation(t.min_detuning - std::abs(omega_t1 - omega_tb),
                                                t.min_detuning);
    cost += t.weight_range * sq_floor_violation(t.min_detuning - std::abs(omega_t2 - omega_tb),
                                                t.min_detuning);
    for (double a : qm.alpha) {
        // Anharmonicity must sit at or below -alpha_floor.
        cost += t.weight_floor * sq_floor_violation(a + t.alpha_floor, t.alpha_floor);
    }
    for (double r : qm.ej_over_ec) {
        cost += t.weight_floor * sq_floor_violation(t.ej_ec_floor - r, t.ej_ec_floor);
    }
    cost += t.weight_floor * sq_floor_violation(
                                 gp.max_dispersive_ratio - kDispersiveThreshold,
                                 kDispersiveThreshold);
    ev.cost = cost;

    bool ok = std::abs(gp.jz[0]) >= t.jz_min && std::abs(gp.jz[0]) <= t.jz_max &&
              std::abs(gp.jx_dressed) >= t.jx_min &&
              std::abs(gp.jx_dressed) <= t.jx_max &&
              std::abs(omega_t1 - omega_tb) >= t.min_detuning &&
              std::abs(omega_t2 - omega_tb) >= t.min_detuning &&
              gp.max_dispersive_ratio < kDispersiveThreshold;
    for (double a : qm.alpha) {
        ok = ok && a <= -t.alpha_floor;
    }
    for (double r : qm.ej_over_ec) {
        ok = ok && r >= t.ej_ec_floor;
    }
    ev.feasible = ok;
    return ev;
}

}  // namespace

SearchResult search_circuit_params(const SearchTargets& targets, int n_restarts,
                                   std::uint64_t rng_seed) {
    validate(targets);
    if (n_restarts < 1) {
        throw std::invalid_argument("search_circuit_params: n_restarts must be >= 1");
    }
    Eigen::VectorXd x_ref = log_elements(reference_designs()[0]);

    auto cost_fn = [&](const Eigen::VectorXd& x) -> double {
        return evaluate_candidate(circuit_from_log(x), targets).cost;
    };

    NelderMeadOptions nm;
    nm.x_tol = 1e-6;
    nm.f_tol = 1e-12;
    nm.max_iter = 2000;
    nm.initial_step = 0.1;

    std::vector<CircuitParams> feasible;
    std::vector<double> costs;
    bool have_infeasible = false;
    CircuitParams best_infeasible;
    double best_infeasible_cost = std::numeric_limits<double>::infinity();

    for (int r = 0; r < n_restarts; r++) {
        Eigen::VectorXd x0 = x_ref;
        if (r > 0) {
            std::mt19937_64 rng = make_rng(rng_seed, std::uint64_t(r));
            std::normal_distribution<double> jitter(0.0, 0.25);
            for (int i = 0; i < x0.size(); i++) {
                x0(i) += jitter(rng);
            }
        }
        NelderMeadResult nm_res = nelder_mead(cost_fn, x0, nm);
        CircuitParams cp = circuit_from_log(nm_res.x);
        SearchEval ev = evaluate_candidate(cp, targets);
        if (ev.feasible) {
            feasible.push_back(cp);
            costs.push_back(ev.cost);
        } else if (ev.cost < best_infeasible_cost) {
            best_infeasible = cp;
            best_infeasible_cost = ev.cost;
            have_infeasible = true;
        }
    }

    if (feasible.empty()) {
        if (!have_infeasible) {
            best_infeasible = circuit_from_log(x_ref);
        }
        throw SearchFailure("search_circuit_params: no feasible circuit in " +
                                std::to_string(n_restarts) + " restarts",
                            best_infeasible, best_infeasible_cost);
    }

    std::vector<int> idx(feasible.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return costs[a] < costs[b]; });
    SearchResult out;
    for (int i : idx) {
        out.candidates.push_back(feasible[i]);
        out.costs.push_back(costs[i]);
    }
    return out;
}

}  // namespace ciswap
