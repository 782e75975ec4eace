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

#include "ciswap/flux_gate.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace ciswap {

FluxDrive flux_drive(const DerivedGateParams& gp, double chi, bool include_dc) {
    if (gp.jz.size() != 1) {
        throw std::invalid_argument(
            "flux_drive: the driven gate model covers a single control");
    }
    if (!std::isfinite(chi)) {
        throw std::invalid_argument("flux_drive: chi must be finite");
    }
    double j0 = gp.jx_dressed;
    double b = chi * chi / 4.0 * gp.derivs.d2jx_dphi2;
    double splitting = gp.omega_t1_dressed - gp.omega_t2_dressed;
    double splitting_bar =
        splitting + chi * chi / 4.0 *
                        (gp.derivs.d2omega_dphi2[0] - gp.derivs.d2omega_dphi2[1]);
    FluxDrive d;
    d.a = chi * gp.derivs.djx_dphi;
    d.b = b;
    d.dc = include_dc ? j0 + b : 0.0;
    d.d_triggered = splitting_bar + gp.jz[0];
    d.d_idle = splitting_bar - gp.jz[0];
    d.gate_time = d.a != 0.0 ? (kTwoPi / 2.0) / std::abs(d.a)
                             : std::numeric_limits<double>::infinity();
    return d;
}

double flux_resonance_omega(const DerivedGateParams& gp, double chi) {
    return std::abs(flux_drive(gp, chi).d_triggered);
}

namespace {

// Step count for a fixed-step RK4 over [0, t]: steps_per_period steps per
// period of the fastest phase in the integrand.
int step_count(double t, double detuning, double omega_phi, int steps_per_period) {
    double f_max = std::max({std::abs(detuning) + 2.0 * std::abs(omega_phi),
                             std::abs(omega_phi), 1e6});
    double dt = kTwoPi / f_max / steps_per_period;
    return std::max(static_cast<int>(t / dt) + 1, 8);
}

struct DriveWave {
    double dc;
    double a;
    double b;
    double omega_phi;

    double at(double t) const {
        return dc + a * std::cos(omega_phi * t) + b * std::cos(2.0 * omega_phi * t);
    }
};

// One-excitation propagator of a control sector: dU/dt = -i J(t) W(t) U with
// W(t) = [[0, e^{i D t}], [e^{-i D t}, 0]] on the {|01>, |10>} block (the
// frame rotating with the time-averaged diagonal). Advances u in place from
// t0 over n steps of size dt.
void advance_block(Eigen::Matrix2cd& u, const DriveWave& wave, double detuning,
                   double t0, double dt, int n) {
    auto deriv = [&](double t, const Eigen::Matrix2cd& v) -> Eigen::Matrix2cd {
        double jb = wave.at(t);
        cxd ph = std::exp(cxd(0, detuning * t)) * cxd(0, -jb);
        Eigen::Matrix2cd dv;
        dv.row(0) = ph * v.row(1);
        dv.row(1) = -std::conj(ph) * v.row(0);
        return dv;
    };
    double t = t0;
    for (int s = 0; s < n; s++) {
        Eigen::Matrix2cd k1 = deriv(t, u);
        Eigen::Matrix2cd k2 = deriv(t + dt / 2, u + (dt / 2) * k1);
        Eigen::Matrix2cd k3 = deriv(t + dt / 2, u + (dt / 2) * k2);
        Eigen::Matrix2cd k4 = deriv(t + dt, u + dt * k3);
        u += (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
        t = t0 + (s + 1) * dt;
    }
}

// Fidelity of the two-sector propagators against the controlled iSWAP with
// swap amplitude s, from the eight trace coefficients
//   tr(z1, z2, zc) = P + e^{i zc} Q,
//   P = A + B w1 + C w2 + D w1 w2,   Q = E + F w1 + G w2 + H w1 w2,
// (w = e^{iz}) where A..D collect the idle sector and E..H the triggered
// one; |00> and |11> are stationary in this frame (A = D = E = H = 1).
struct TraceCoeffs {
    cxd b, c, f, g;
};

double bare_fidelity(const TraceCoeffs& tc) {
    cxd tr = 2.0 + tc.b + tc.c + 2.0 + tc.f + tc.g;
    return (std::norm(tr) + 8.0) / 72.0;
}

// Z calibration: exact maximum over the control phase (|P| + |Q|), grid
// scan over the two target phases.
double zcal_fidelity(const TraceCoeffs& tc) {
    constexpr int kGrid = 48;
    double best = 0.0;
    for (int i = 0; i < kGrid; i++) {
        cxd w1 = std::exp(cxd(0, kTwoPi * i / kGrid));
        for (int j = 0; j < kGrid; j++) {
            cxd w2 = std::exp(cxd(0, kTwoPi * j / kGrid));
            cxd p = 1.0 + tc.b * w1 + tc.c * w2 + w1 * w2;
            cxd q = 1.0 + tc.f * w1 + tc.g * w2 + w1 * w2;
            best = std::max(best, std::abs(p) + std::abs(q));
        }
    }
    return (best * best + 8.0) / 72.0;
}

// Requested sample times: n points spread over [0, t_gate], last exactly at
// t_gate.
std::vector<double> sample_times(double t_gate, int n_points) {
    std::vector<double> times;
    if (n_points == 1) {
        times.push_back(t_gate);
    } else {
        for (int i = 0; i < n_points; i++) {
            times.push_back(t_gate * double(i) / double(n_points - 1));
        }
    }
    return times;
}

// Segment [t0, t1] into steps no coarser than the global grid.
void advance_segment(Eigen::Matrix2cd& u, const DriveWave& wave, double detuning,
                     double t0, double t1, double dt_global) {
    if (t1 <= t0) {
        return;
    }
    int n = std::max(1, static_cast<int>(std::ceil((t1 - t0) / dt_global)));
    advance_block(u, wave, detuning, t0, (t1 - t0) / n, n);
}

struct LindbladBlocks {
    // Superoperator propagators S_cc' for (idle, triggered) sector pairs,
    // indexed [c][c'], 16x16 on the two-target space.
    Operator s[2][2];
};

// Matrix RK4 on dS/dt = L(t) S for one coherence block.
void advance_superop(Operator& s, const DriveWave& wave, double det_c, double det_cp,
                     const Operator& diss, double scalar, double t0, double t1,
                     double dt_global) {
    if (t1 <= t0) {
        return;
    }
    Operator eye4 = Operator::Identity(4, 4);
    Operator eye16 = Operator::Identity(16, 16);
    auto lt = [&](double t) -> Operator {
        double jb = wave.at(t);
        Operator hc = Operator::Zero(4, 4);
        hc(1, 2) = jb * std::exp(cxd(0, det_c * t));
        hc(2, 1) = std::conj(hc(1, 2));
        Operator hcp = Operator::Zero(4, 4);
        hcp(1, 2) = jb * std::exp(cxd(0, det_cp * t));
        hcp(2, 1) = std::conj(hcp(1, 2));
        return cxd(0, -1) * (kron2(eye4, hc) - kron2(hcp.transpose(), eye4)) +
               diss + scalar * eye16;
    };
    int n = std::max(1, static_cast<int>(std::ceil((t1 - t0) / dt_global)));
    double dt = (t1 - t0) / n;
    double t = t0;
    for (int i = 0; i < n; i++) {
        Operator k1 = lt(t) * s;
        Operator k2 = lt(t + dt / 2) * (s + (dt / 2) * k1);
        Operator k3 = lt(t + dt / 2) * (s + (dt / 2) * k2);
        Operator k4 = lt(t + dt) * (s + dt * k3);
        s += (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
        t = t0 + (i + 1) * dt;
    }
}

}  // namespace

FluxGateResult simulate_flux_driven_gate(const DerivedGateParams& gp, double theta,
                                         double chi, double omega_phi,
                                         const std::optional<DecoherenceSpec>& dec,
                                         const FluxGateOptions& opts) {
    if (!(omega_phi >= 0) || !std::isfinite(omega_phi)) {
        throw std::invalid_argument("simulate_flux_driven_gate: bad omega_phi");
    }
    if (!std::isfinite(theta) || !std::isfinite(chi)) {
        throw std::invalid_argument(
            "simulate_flux_driven_gate: theta and chi must be finite");
    }
    if (opts.n_time_points < 1 || opts.steps_per_period < 4) {
        throw std::invalid_argument("simulate_flux_driven_gate: bad options");
    }
    // The modulation swings the flux across [theta - chi, theta + chi].
    for (double swing : {theta - chi, theta + chi}) {
        if (std::cos(2.0 * swing) <= 0) {
            throw NumericalError(
                "flux modulation leaves the valid domain at flux = " +
                std::to_string(phi0_fraction_from_flux(swing)) + " Phi0");
        }
    }
    FluxDrive drive = flux_drive(gp, chi, opts.include_dc);

    FluxGateResult res;
    res.omega_phi = omega_phi;
    if (drive.a == 0.0) {
        // No first-harmonic drive: the exchange never turns on and no finite
        // gate time exists; report the undriven (identity) channel.
        res.gate_time = 0.0;
        res.times = {0.0};
        TraceCoeffs tc{1.0, 1.0, 0.0, 0.0};
        res.fidelity = {bare_fidelity(tc)};
        res.fidelity_zcal = {zcal_fidelity(tc)};
        return res;
    }
    res.gate_time = drive.gate_time;
    res.times = sample_times(drive.gate_time, opts.n_time_points);

    DriveWave wave{drive.dc, drive.a, drive.b, omega_phi};
    cxd s = cxd(0, drive.a >= 0 ? -1.0 : 1.0);

    QubitRates rates;
    bool lindblad = false;
    if (dec) {
        rates = qubit_rates(*dec, 3);  // [control, T1, T2]
        auto zero = [](double v) { return v == 0.0; };
        lindblad = !std::all_of(rates.relax.begin(), rates.relax.end(), zero) ||
                   !std::all_of(rates.dephase.begin(), rates.dephase.end(), zero);
    }

    if (!lindblad) {
        Eigen::Matrix2cd u0 = Eigen::Matrix2cd::Identity();
        Eigen::Matrix2cd u1 = Eigen::Matrix2cd::Identity();
        double dt0 = drive.gate_time /
                     step_count(drive.gate_time, drive.d_idle, omega_phi,
                                opts.steps_per_period);
        double dt1 = drive.gate_time /
                     step_count(drive.gate_time, drive.d_triggered, omega_phi,
                                opts.steps_per_period);
        double prev = 0.0;
        for (double t : res.times) {
            advance_segment(u0, wave, drive.d_idle, prev, t, dt0);
            advance_segment(u1, wave, drive.d_triggered, prev, t, dt1);
            prev = t;
            TraceCoeffs tc{u0(0, 0), u0(1, 1), std::conj(s) * u1(0, 1),
                           std::conj(s) * u1(1, 0)};
            res.fidelity.push_back(bare_fidelity(tc));
            res.fidelity_zcal.push_back(zcal_fidelity(tc));
        }
        return res;
    }

    // Master-equation route: coherence blocks between the two control
    // sectors on the 4-dim two-target space. Relaxation and dephasing
    // dissipators commute with the rotating frame (sz exactly, lower_op up
    // to a phase that cancels inside the dissipator), so the frame-picture
    // generator only adds the static dissipator and the control's scalar
    // decay.
    std::vector<Operator> cops;
    for (int q = 0; q < 2; q++) {
        if (rates.relax[1 + q] > 0) {
            cops.push_back(std::sqrt(rates.relax[1 + q]) * op_on(lower_op(), q, 2));
        }
        if (rates.dephase[1 + q] > 0) {
            cops.push_back(std::sqrt(rates.dephase[1 + q] / 2.0) *
                           op_on(pauli_z(), q, 2));
        }
    }
    Operator diss = dissipator_superop(cops, 4);
    double dets[2] = {drive.d_idle, drive.d_triggered};
    Operator tgt[2];
    tgt[0] = Operator::Identity(4, 4);
    tgt[1] = Operator::Identity(4, 4);
    tgt[1](1, 1) = 0;
    tgt[1](2, 2) = 0;
    tgt[1](1, 2) = s;
    tgt[1](2, 1) = s;

    LindbladBlocks blocks;
    double dt_pair[2][2];
    for (int c = 0; c < 2; c++) {
        for (int cp = 0; cp < 2; cp++) {
            blocks.s[c][cp] = Operator::Identity(16, 16);
            double worst = std::max(std::abs(dets[c]), std::abs(dets[cp]));
            dt_pair[c][cp] = drive.gate_time /
                             step_count(drive.gate_time, worst, omega_phi,
                                        opts.steps_per_period);
        }
    }

    double prev = 0.0;
    constexpr int kGrid = 48;
    for (double t : res.times) {
        for (int c = 0; c < 2; c++) {
            for (int cp = 0; cp < 2; cp++) {
                double scalar = -0.5 * rates.relax[0] * (c + cp) -
                                rates.dephase[0] * (c != cp);
                advance_superop(blocks.s[c][cp], wave, dets[c], dets[cp], diss,
                                scalar, prev, t, dt_pair[c][cp]);
            }
        }
        prev = t;

        // t_cc' = Tr[(conj(Z G_c') (x) Z G_c)^dag S_cc'];
        // bare takes all phases zero, calibration maximizes
        // Re(t00 + t11) + |t01| + |t10| over the target phases (the control
        // phase maximum is exact).
        double bare_sum = 0.0;
        double best = 0.0;
        for (int i = 0; i < kGrid; i++) {
            for (int j = 0; j < kGrid; j++) {
                bool zero_point = (i == 0 && j == 0);
                Eigen::Vector4cd z;
                z << 1.0, std::exp(cxd(0, kTwoPi * j / kGrid)),
                    std::exp(cxd(0, kTwoPi * i / kGrid)),
                    std::exp(cxd(0, kTwoPi * (i + j) / kGrid));
                cxd tcc[2][2];
                for (int c = 0; c < 2; c++) {
                    for (int cp = 0; cp < 2; cp++) {
                        Operator gc = z.asDiagonal() * tgt[c];
                        Operator gcp = z.asDiagonal() * tgt[cp];
                        // Tr(A^dag S) as an elementwise contraction.
                        tcc[c][cp] = kron2(gcp.conjugate(), gc)
                                         .conjugate()
                                         .cwiseProduct(blocks.s[c][cp])
                                         .sum();
                    }
                }
                if (zero_point) {
                    bare_sum = (tcc[0][0] + tcc[1][1] + tcc[0][1] + tcc[1][0]).real();
                }
                double cal = (tcc[0][0] + tcc[1][1]).real() + std::abs(tcc[0][1]) +
                             std::abs(tcc[1][0]);
                best = std::max(best, cal);
            }
        }
        res.fidelity.push_back((8.0 + bare_sum) / 72.0);
        res.fidelity_zcal.push_back((8.0 + best) / 72.0);
    }
    return res;
}

}  // namespace ciswap
