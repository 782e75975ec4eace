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

#include "ciswap/circuit_quantization.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ciswap {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string("CircuitParams: ") + name +
                                    " must be positive and finite");
    }
}

void require_positive(const std::vector<double>& v, size_t n, const char* name) {
    if (v.size() != n) {
        throw std::invalid_argument(std::string("CircuitParams: ") + name +
                                    " must have one entry per control");
    }
    for (double x : v) {
        require_positive(x, name);
    }
}

}  // namespace

void validate(const CircuitParams& p) {
    if (p.n_controls < 1) {
        throw std::invalid_argument("CircuitParams: n_controls must be >= 1");
    }
    size_t n = static_cast<size_t>(p.n_controls);
    require_positive(p.e_control, n, "e_control");
    require_positive(p.e_z, n, "e_z");
    require_positive(p.c_control, n, "c_control");
    require_positive(p.c_z, n, "c_z");
    require_positive(p.e_t1, "e_t1");
    require_positive(p.e_t2, "e_t2");
    require_positive(p.e_tb, "e_tb");
    require_positive(p.c_t1, "c_t1");
    require_positive(p.c_t2, "c_t2");
    require_positive(p.c_tb, "c_tb");
    require_positive(p.c_x, "c_x");
    if (!std::isfinite(p.flux)) {
        throw std::invalid_argument("CircuitParams: flux must be finite");
    }
}

Eigen::MatrixXd capacitance_matrix(const CircuitParams& p) {
    validate(p);
    int n = p.n_controls;
    int t1 = n;
    int tb = n + 1;
    int t2 = n + 2;
    int nn = node_count(p);
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(nn, nn);
    double cz_sum = 0.0;
    for (int i = 0; i < n; i++) {
        k(i, i) = p.c_control[i] + p.c_z[i];
        k(i, t1) = -p.c_z[i];
        k(t1, i) = -p.c_z[i];
        cz_sum += p.c_z[i];
    }
    k(t1, t1) = p.c_t1 + cz_sum + 2.0 * p.c_x;
    k(tb, tb) = 4.0 * p.c_tb + 2.0 * p.c_x;
    k(t2, t2) = p.c_t2 + 2.0 * p.c_x;
    k(t1, tb) = -p.c_x;
    k(tb, t1) = -p.c_x;
    k(tb, t2) = -p.c_x;
    k(t2, tb) = -p.c_x;
    return k;
}

DerivedCircuitQuantities derive_quantities(const CircuitParams& p) {
    validate(p);
    int n = p.n_controls;
    int t1 = n;
    int tb = n + 1;
    int t2 = n + 2;
    int nn = node_count(p);

    DerivedCircuitQuantities q;
    q.k_matrix = capacitance_matrix(p);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(q.k_matrix);
    if (!lu.isInvertible()) {
        throw NumericalError("capacitance matrix is singular");
    }
    Eigen::MatrixXd kinv_e = lu.inverse() * (8.0 * kEcUnit);

    double cos2f = std::cos(2.0 * p.flux);
    if (cos2f <= 0) {
        throw NumericalError(
            "bus junction energy loses sign: cos(2 flux) = " + std::to_string(cos2f) +
            " at flux = " + std::to_string(phi0_fraction_from_flux(p.flux)) +
            " Phi0");
    }

    q.e_j.resize(nn);
    double ez_sum = 0.0;
    for (int i = 0; i < n; i++) {
        q.e_j(i) = p.e_control[i] + p.e_z[i];
        ez_sum += p.e_z[i];
    }
    q.e_j(t1) = p.e_t1 + ez_sum;
    q.e_j(tb) = 8.0 * p.e_tb * cos2f;
    q.e_j(t2) = p.e_t2;

    q.e_c = kinv_e.diagonal() / 8.0;
    q.zeta = (kinv_e.diagonal().array() / q.e_j.array()).sqrt();
    q.omega_bare = (8.0 * q.e_j.array() * q.e_c.array()).sqrt();

    // Quartic cross-junction shifts of the shared coupler, coefficient 1.
    q.omega_corrected = q.omega_bare;
    double ez_zeta_sum = 0.0;
    for (int i = 0; i < n; i++) {
        q.omega_corrected(i) -= p.e_z[i] * q.zeta(i) * q.zeta(t1);
        ez_zeta_sum += p.e_z[i] * q.zeta(i);
    }
    q.omega_corrected(t1) -= q.zeta(t1) * ez_zeta_sum;

    for (int i = 0; i < n; i++) {
        q.g_z.push_back(-(1.0 / 8.0) * p.e_z[i] * q.zeta(i) * q.zeta(t1));
        q.g_xz.push_back(-(1.0 / 16.0) * p.e_z[i] * std::sqrt(q.zeta(i) * q.zeta(t1)));
    }
    q.g_x_t1tb = -0.5 * kinv_e(t1, tb) / std::sqrt(q.zeta(t1) * q.zeta(tb));
    q.g_x_tbt2 = -0.5 * kinv_e(tb, t2) / std::sqrt(q.zeta(t2) * q.zeta(tb));
    q.delta_small = 0.5 * (q.omega_corrected(t1) - q.omega_corrected(t2));
    return q;
}

PerturbativeParams perturbative_gate_params(const DerivedCircuitQuantities& q) {
    PerturbativeParams pp;
    double jz_sum = 0.0;
    for (double gz : q.g_z) {
        pp.jz.push_back(gz / 2.0);
        jz_sum += gz / 2.0;
    }
    pp.delta_t1 = -q.delta_small + jz_sum;
    return pp;
}

DressedParams dressed_params(const DerivedCircuitQuantities& q,
                             double dispersive_threshold) {
    int n = static_cast<int>(q.g_z.size());
    int t1 = n;
    int tb = n + 1;
    int t2 = n + 2;
    double w_t1 = q.omega_corrected(t1);
    double w_tb = q.omega_corrected(tb);
    double w_t2 = q.omega_corrected(t2);
    double r1 = std::abs(q.g_x_t1tb / (w_t1 - w_tb));
    double r2 = std::abs(q.g_x_tbt2 / (w_t2 - w_tb));
    DressedParams d;
    d.max_ratio = std::max(r1, r2);
    if (d.max_ratio >= dispersive_threshold) {
        throw NumericalError(
            "dispersive condition violated: max |g/(omega_T - omega_TB)| = " +
            std::to_string(d.max_ratio) + " >= " +
            std::to_string(dispersive_threshold));
    }
    d.omega_t1 = w_t1 + q.g_x_t1tb * q.g_x_t1tb / (w_t1 - w_tb);
    d.omega_t2 = w_t2 + q.g_x_tbt2 * q.g_x_tbt2 / (w_t2 - w_tb);
    d.jx = 0.5 * q.g_x_t1tb * q.g_x_tbt2 *
           (1.0 / (w_t1 - w_tb) + 1.0 / (w_t2 - w_tb));
    return d;
}

namespace {

struct FluxPoint {
    double jx;
    double w_t1;
    double w_t2;
};

FluxPoint eval_at_flux(const CircuitParams& p, double flux, double threshold) {
    CircuitParams shifted = p;
    shifted.flux = flux;
    DerivedCircuitQuantities q = derive_quantities(shifted);
    DressedParams d = dressed_params(q, threshold);
    return {d.jx, d.omega_t1, d.omega_t2};
}

}  // namespace

FluxDerivatives flux_derivatives(const CircuitParams& p, double theta, double h,
                                 double dispersive_threshold) {
    if (!(h > 0) || !std::isfinite(h) || !std::isfinite(theta)) {
        throw std::invalid_argument("flux_derivatives: bad theta or step");
    }
    for (double margin : {theta - 2.0 * h, theta + 2.0 * h}) {
        if (std::cos(2.0 * margin) <= 0) {
            throw NumericalError(
                "flux derivative stencil leaves the valid domain near flux = " +
                std::to_string(phi0_fraction_from_flux(margin)) + " Phi0");
        }
    }
    FluxPoint lo = eval_at_flux(p, theta - h, dispersive_threshold);
    FluxPoint mid = eval_at_flux(p, theta, dispersive_threshold);
    FluxPoint hi = eval_at_flux(p, theta + h, dispersive_threshold);

    FluxDerivatives fd;
    fd.djx_dphi = (hi.jx - lo.jx) / (2.0 * h);
    fd.d2jx_dphi2 = (hi.jx - 2.0 * mid.jx + lo.jx) / (h * h);
    fd.domega_dphi[0] = (hi.w_t1 - lo.w_t1) / (2.0 * h);
    fd.domega_dphi[1] = (hi.w_t2 - lo.w_t2) / (2.0 * h);
    fd.d2omega_dphi2[0] = (hi.w_t1 - 2.0 * mid.w_t1 + lo.w_t1) / (h * h);
    fd.d2omega_dphi2[1] = (hi.w_t2 - 2.0 * mid.w_t2 + lo.w_t2) / (h * h);
    return fd;
}

DerivedGateParams gate_params_from_circuit(const CircuitParams& p,
                                           double dispersive_threshold) {
    DerivedCircuitQuantities q;
    try {
        q = derive_quantities(p);
    } catch (const NumericalError& e) {
        throw NumericalError(std::string("[capacitance] ") + e.what());
    }
    PerturbativeParams pp = perturbative_gate_params(q);
    DressedParams d;
    try {
        d = dressed_params(q, dispersive_threshold);
    } catch (const NumericalError& e) {
        throw NumericalError(std::string("[dressing] ") + e.what());
    }
    FluxDerivatives fd;
    try {
        fd = flux_derivatives(p, p.flux, kFluxStep, dispersive_threshold);
    } catch (const NumericalError& e) {
        throw NumericalError(std::string("[derivatives] ") + e.what());
    }

    int n = p.n_controls;
    DerivedGateParams gp;
    for (int i = 0; i < n; i++) {
        gp.omega.push_back(q.omega_corrected(i));
    }
    gp.omega.push_back(d.omega_t1);
    gp.omega.push_back(q.omega_corrected(n + 1));
    gp.omega.push_back(d.omega_t2);
    gp.delta_t1 = pp.delta_t1;
    gp.jz = pp.jz;
    gp.jx_dressed = d.jx;
    gp.omega_t1_dressed = d.omega_t1;
    gp.omega_t2_dressed = d.omega_t2;
    gp.derivs = fd;
    gp.max_dispersive_ratio = d.max_ratio;
    return gp;
}

QualityMetrics quality_metrics(const CircuitParams& p) {
    DerivedCircuitQuantities q = derive_quantities(p);
    // Report even strongly non-dispersive designs; the ratio is still the
    // honest diagnostic for them.
    constexpr double kNoThreshold = std::numeric_limits<double>::infinity();
    DressedParams d = dressed_params(q, kNoThreshold);
    int n = p.n_controls;
    QualityMetrics m;
    for (int i = 0; i < n; i++) {
        m.alpha.push_back(-q.e_c(i) / (2.0 * q.omega_corrected(i)));
    }
    m.alpha.push_back(-q.e_c(n) / (2.0 * d.omega_t1));
    m.alpha.push_back(-q.e_c(n + 1) / (2.0 * q.omega_corrected(n + 1)));
    m.alpha.push_back(-q.e_c(n + 2) / (2.0 * d.omega_t2));
    for (int i = 0; i < node_count(p); i++) {
        m.ej_over_ec.push_back(q.e_j(i) / q.e_c(i));
    }
    return m;
}

}  // namespace ciswap
