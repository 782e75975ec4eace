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
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "ciswap/calibration.h"
#include "ciswap/tables.h"
#include "test_helpers.h"

using namespace ciswap;

namespace {

ErrorModel quiet_errors(int n_samples) {
    ErrorModel em;
    em.rel_sigma = 0.0;
    em.flux_freq_sigma = 0.0;
    em.n_samples = n_samples;
    return em;
}

}  // namespace

TEST_SUITE("calibration") {

TEST_CASE("error model validation rejects bad fields") {
    ErrorModel em;
    CHECK_NOTHROW(validate(em));
    em.rel_sigma = -0.1;
    CHECK_THROWS_AS(validate(em), std::invalid_argument);
    em = ErrorModel{};
    em.flux_freq_sigma = -1.0;
    CHECK_THROWS_AS(validate(em), std::invalid_argument);
    em = ErrorModel{};
    em.n_samples = 0;
    CHECK_THROWS_AS(validate(em), std::invalid_argument);
}

TEST_CASE("zero scatter reproduces the nominal circuit exactly") {
    CircuitParams nominal = reference_designs()[0];
    CircuitParams s = sample_circuit_params(nominal, quiet_errors(1), 0);
    CHECK(s.e_control[0] == nominal.e_control[0]);
    CHECK(s.e_t1 == nominal.e_t1);
    CHECK(s.e_t2 == nominal.e_t2);
    CHECK(s.e_tb == nominal.e_tb);
    CHECK(s.e_z[0] == nominal.e_z[0]);
    CHECK(s.c_control[0] == nominal.c_control[0]);
    CHECK(s.c_t1 == nominal.c_t1);
    CHECK(s.c_t2 == nominal.c_t2);
    CHECK(s.c_tb == nominal.c_tb);
    CHECK(s.c_z[0] == nominal.c_z[0]);
    CHECK(s.c_x == nominal.c_x);
    CHECK(s.flux == nominal.flux);
}

TEST_CASE("sampling is deterministic per seed and draw index") {
    CircuitParams nominal = reference_designs()[0];
    ErrorModel em;
    em.rng_seed = 42;
    CircuitParams a = sample_circuit_params(nominal, em, 7);
    CircuitParams b = sample_circuit_params(nominal, em, 7);
    CHECK(a.e_t1 == b.e_t1);
    CHECK(a.c_x == b.c_x);
    CircuitParams c = sample_circuit_params(nominal, em, 8);
    CHECK(a.e_t1 != c.e_t1);
    em.rng_seed = 43;
    CircuitParams d = sample_circuit_params(nominal, em, 7);
    CHECK(a.e_t1 != d.e_t1);
    // The bias flux is a setting, never scattered.
    CHECK(a.flux == nominal.flux);
}

TEST_CASE("scattered elements stay positive under heavy scatter") {
    CircuitParams nominal = reference_designs()[0];
    ErrorModel em;
    em.rel_sigma = 0.5;
    for (std::uint64_t i = 0; i < 500; i++) {
        CircuitParams s = sample_circuit_params(nominal, em, i);
        CHECK_NOTHROW(validate(s));
    }
}

TEST_CASE("scatter statistics match the requested spread") {
    CircuitParams nominal = reference_designs()[0];
    ErrorModel em;
    const int n = 10000;
    double sum = 0.0, sum_sq = 0.0;
    int within = 0;
    for (std::uint64_t i = 0; i < n; i++) {
        double v = sample_circuit_params(nominal, em, i).e_t1;
        sum += v;
        sum_sq += v * v;
        if (std::abs(v / nominal.e_t1 - 1.0) < 0.10) {
            within++;
        }
    }
    double mean = sum / n;
    double var = (sum_sq - n * mean * mean) / (n - 1);
    CHECK(std::abs(mean / nominal.e_t1 - 1.0) < 2e-3);
    CHECK(std::abs(std::sqrt(var) / (em.rel_sigma * nominal.e_t1) - 1.0) < 0.05);
    // +-10% is two standard deviations: about 95.4% of draws.
    double frac = double(within) / n;
    CHECK(frac > 0.94);
    CHECK(frac < 0.97);
}

TEST_CASE("zero-scatter propagation collapses the spread") {
    CircuitParams nominal = reference_designs()[0];
    GateParamErrorReport rep = propagate_gate_param_errors(nominal, quiet_errors(3));
    REQUIRE(rep.omega.size() == 4);
    REQUIRE(rep.jz.size() == 1);
    CHECK(rep.n_success == 3);
    CHECK(rep.failure_fraction == 0.0);
    DerivedGateParams gp = gate_params_from_circuit(nominal);
    for (int i = 0; i < 4; i++) {
        CHECK(rep.omega[i].mean == doctest::Approx(gp.omega[i]).epsilon(1e-12));
        CHECK(std::abs(rep.omega[i].std) < 1e-9 * std::abs(rep.omega[i].mean));
    }
    CHECK(rep.jz[0].mean == doctest::Approx(gp.jz[0]).epsilon(1e-12));
    CHECK(rep.jx.mean == doctest::Approx(gp.jx_dressed).epsilon(1e-12));
    CHECK(std::abs(rep.jx.std) < 1e-9 * std::abs(rep.jx.mean));
}

TEST_CASE("nominal-design propagation reports healthy spreads") {
    CircuitParams nominal = reference_designs()[0];
    ErrorModel em;
    GateParamErrorReport rep = propagate_gate_param_errors(nominal, em);
    CHECK(rep.failure_fraction == 0.0);
    CHECK(rep.n_success == em.n_samples);
    DerivedGateParams gp = gate_params_from_circuit(nominal);
    CHECK(std::abs(rep.omega[0].mean / gp.omega[0] - 1.0) < 0.02);
    CHECK(std::abs(rep.jz[0].mean / gp.jz[0] - 1.0) < 0.02);
    CHECK(std::abs(rep.jx.mean / gp.jx_dressed - 1.0) < 0.02);
    // 5% element scatter maps to a few percent on the frequencies and
    // roughly ten percent on the exchange.
    CHECK(rep.omega[0].std / std::abs(rep.omega[0].mean) > 0.015);
    CHECK(rep.omega[0].std / std::abs(rep.omega[0].mean) < 0.045);
    CHECK(rep.jx.std / std::abs(rep.jx.mean) > 0.05);
    CHECK(rep.jx.std / std::abs(rep.jx.mean) < 0.20);
}

TEST_CASE("overwhelming failure rate raises an error") {
    ErrorModel em;
    em.n_samples = 4;
    CHECK_THROWS_AS(propagate_gate_param_errors(reference_designs()[8], em),
                    NumericalError);
}

TEST_CASE("fidelity distribution fractions count the successful samples") {
    FidelityDistribution d;
    for (double f : {0.2, 0.4, 0.6, 0.8}) {
        FidelitySample s;
        s.f_zcal = f;
        s.f_bare = f / 2.0;
        d.samples.push_back(s);
    }
    d.n_failed = 2;
    CHECK(d.fraction_above(0.5) == 0.5);
    CHECK(d.fraction_above(0.9) == 0.0);
    CHECK(d.fraction_above(0.1) == 1.0);
    CHECK(d.fraction_above_bare(0.25) == 0.5);
}

TEST_CASE("noise-free Monte Carlo pins the nominal fidelity") {
    CircuitParams nominal = reference_designs()[1];
    DriveSettings ds;
    FidelityDistribution d = monte_carlo_gate_fidelity(nominal, quiet_errors(2), ds);
    REQUIRE(d.samples.size() == 2);
    CHECK(d.n_failed == 0);
    CircuitParams biased = nominal;
    biased.flux = ds.theta;
    DerivedGateParams gp = gate_params_from_circuit(biased);
    double w0 = flux_resonance_omega(gp, ds.chi);
    for (const FidelitySample& s : d.samples) {
        CHECK(s.omega_phi == doctest::Approx(w0).epsilon(1e-12));
        CHECK(std::abs(s.f_zcal - 0.999489069) < 1e-6);
        CHECK(std::abs(s.f_bare - 0.999489069) < 1e-6);
        CHECK(s.gate_time == doctest::Approx(82.123669911e-9).epsilon(1e-6));
    }
    CHECK(d.samples[0].draw_index == 0);
    CHECK(d.samples[1].draw_index == 1);
}

TEST_CASE("drive-frequency noise is reproducible and centered") {
    CircuitParams nominal = reference_designs()[1];
    ErrorModel em;
    em.rel_sigma = 0.0;
    em.n_samples = 2;
    em.rng_seed = 7;
    DriveSettings ds;
    FidelityDistribution a = monte_carlo_gate_fidelity(nominal, em, ds);
    FidelityDistribution b = monte_carlo_gate_fidelity(nominal, em, ds);
    REQUIRE(a.samples.size() == 2);
    REQUIRE(b.samples.size() == 2);
    CHECK(a.samples[0].omega_phi == b.samples[0].omega_phi);
    CHECK(a.samples[1].f_zcal == b.samples[1].f_zcal);
    CHECK(a.samples[0].omega_phi != a.samples[1].omega_phi);
    CircuitParams biased = nominal;
    biased.flux = ds.theta;
    double w0 = flux_resonance_omega(gate_params_from_circuit(biased), ds.chi);
    for (const FidelitySample& s : a.samples) {
        CHECK(std::abs(s.omega_phi - w0) < 5.0 * em.flux_freq_sigma);
        CHECK(s.f_zcal <= 0.9995);
        CHECK(s.f_zcal > 0.5);
    }
}

TEST_CASE("bad drive settings are rejected") {
    DriveSettings ds;
    ds.theta = std::nan("");
    CHECK_THROWS_AS(
        monte_carlo_gate_fidelity(reference_designs()[1], quiet_errors(1), ds),
        std::invalid_argument);
}

TEST_CASE("simplex descent minimizes smooth functions") {
    auto quadratic = [](const Eigen::VectorXd& x) {
        return (x(0) - 3.0) * (x(0) - 3.0);
    };
    Eigen::VectorXd x0(1);
    x0 << 0.0;
    NelderMeadResult r = nelder_mead(quadratic, x0);
    CHECK(r.converged);
    CHECK(std::abs(r.x(0) - 3.0) < 1e-6);
    CHECK(r.f == doctest::Approx(quadratic(r.x)).epsilon(1e-12));
    CHECK(r.iterations > 0);

    auto rosenbrock = [](const Eigen::VectorXd& x) {
        double a = 1.0 - x(0);
        double b = x(1) - x(0) * x(0);
        return a * a + 100.0 * b * b;
    };
    Eigen::VectorXd y0(2);
    y0 << -1.2, 1.0;
    NelderMeadResult rr = nelder_mead(rosenbrock, y0);
    CHECK(rr.converged);
    CHECK(std::abs(rr.x(0) - 1.0) < 1e-4);
    CHECK(std::abs(rr.x(1) - 1.0) < 1e-4);
}

TEST_CASE("simplex descent handles degenerate inputs") {
    auto constant = [](const Eigen::VectorXd&) { return 2.5; };
    Eigen::VectorXd x0(2);
    x0 << 1.0, -1.0;
    NelderMeadResult r = nelder_mead(constant, x0);
    CHECK(r.converged);
    CHECK(r.f == 2.5);

    auto bad = [](const Eigen::VectorXd&) {
        return std::numeric_limits<double>::quiet_NaN();
    };
    CHECK_THROWS_AS(nelder_mead(bad, x0), std::invalid_argument);
    CHECK_THROWS_AS(nelder_mead(constant, Eigen::VectorXd()), std::invalid_argument);
    NelderMeadOptions opts;
    opts.max_iter = 0;
    CHECK_THROWS_AS(nelder_mead(constant, x0, opts), std::invalid_argument);
}

TEST_CASE("design search lands on a feasible circuit") {
    SearchTargets targets;
    SearchResult res = search_circuit_params(targets, 1, 0);
    REQUIRE(res.candidates.size() == 1);
    CHECK(res.costs[0] == 0.0);
    const CircuitParams& c = res.candidates[0];
    CHECK_NOTHROW(validate(c));
    DerivedGateParams gp = gate_params_from_circuit(c);
    QualityMetrics qm = quality_metrics(c);
    CHECK(std::abs(gp.jz[0]) >= targets.jz_min);
    CHECK(std::abs(gp.jz[0]) <= targets.jz_max);
    CHECK(std::abs(gp.jx_dressed) >= targets.jx_min);
    CHECK(std::abs(gp.jx_dressed) <= targets.jx_max);
    CHECK(std::abs(gp.omega[1] - gp.omega[2]) >= targets.min_detuning);
    CHECK(std::abs(gp.omega[3] - gp.omega[2]) >= targets.min_detuning);
    for (double alpha : qm.alpha) {
        CHECK(alpha <= -targets.alpha_floor);
    }
    for (double r : qm.ej_over_ec) {
        CHECK(r >= targets.ej_ec_floor);
    }
}

TEST_CASE("design search is deterministic per seed") {
    SearchTargets targets;
    SearchResult a = search_circuit_params(targets, 2, 5);
    SearchResult b = search_circuit_params(targets, 2, 5);
    REQUIRE(a.costs.size() == b.costs.size());
    for (size_t i = 0; i < a.costs.size(); i++) {
        CHECK(a.costs[i] == b.costs[i]);
        CHECK(a.candidates[i].e_t1 == b.candidates[i].e_t1);
    }
}

TEST_CASE("unreachable floors raise a search failure with diagnostics") {
    SearchTargets targets;
    targets.ej_ec_floor = 1e6;
    try {
        search_circuit_params(targets, 1, 0);
        FAIL("expected a search failure");
    } catch (const SearchFailure& e) {
        CHECK(std::string(e.what()).find("no feasible") != std::string::npos);
        CHECK(e.best_cost > 0.0);
        CHECK_NOTHROW(validate(e.best_infeasible));
    }
}

TEST_CASE("search input validation") {
    SearchTargets targets;
    CHECK_THROWS_AS(search_circuit_params(targets, 0, 0), std::invalid_argument);
    targets.jz_min = targets.jz_max * 2.0;
    CHECK_THROWS_AS(validate(targets), std::invalid_argument);
}

}  // TEST_SUITE
