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

#include "ciswap/dynamics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ciswap/rng.h"

namespace ciswap {

DecoherenceSpec DecoherenceSpec::uniform(double t1, double t2) {
    DecoherenceSpec s;
    s.t1 = {t1};
    s.t2 = {t2};
    return s;
}

namespace {

double broadcast_at(const std::vector<double>& v, size_t i) {
    return v.size() == 1 ? v[0] : v[i];
}

}  // namespace

void validate(const DecoherenceSpec& spec) {
    if (spec.t1.empty() || spec.t2.empty()) {
        throw std::invalid_argument("DecoherenceSpec: t1 and t2 must be non-empty");
    }
    if (spec.t1.size() != spec.t2.size() && spec.t1.size() != 1 && spec.t2.size() != 1) {
        throw std::invalid_argument("DecoherenceSpec: t1/t2 sizes incompatible");
    }
    size_t n = std::max(spec.t1.size(), spec.t2.size());
    for (size_t i = 0; i < n; i++) {
        double t1 = broadcast_at(spec.t1, i);
        double t2 = broadcast_at(spec.t2, i);
        if (!(t1 > 0) || !(t2 > 0)) {
            throw std::invalid_argument("DecoherenceSpec: times must be positive");
        }
        // t2 > 2 t1 would need a negative pure-dephasing rate.
        if (dephasing_rate(t1, t2) < -1e-12 / t2) {
            throw std::invalid_argument("DecoherenceSpec: t2 exceeds 2 t1");
        }
    }
}

double dephasing_rate(double t1, double t2) {
    if (!(t1 > 0) || !(t2 > 0)) {
        throw std::invalid_argument("dephasing_rate: times must be positive");
    }
    double inv1 = std::isinf(t1) ? 0.0 : 1.0 / t1;
    double inv2 = std::isinf(t2) ? 0.0 : 1.0 / t2;
    return inv2 - 0.5 * inv1;
}

QubitRates qubit_rates(const DecoherenceSpec& spec, int n_qubits) {
    validate(spec);
    size_t given = std::max(spec.t1.size(), spec.t2.size());
    if (given != 1 && given != static_cast<size_t>(n_qubits)) {
        throw std::invalid_argument(
            "DecoherenceSpec: expected 1 or " + std::to_string(n_qubits) +
            " entries, got " + std::to_string(given));
    }
    QubitRates r;
    for (int q = 0; q < n_qubits; q++) {
        size_t i = given == 1 ? 0 : static_cast<size_t>(q);
        double t1 = broadcast_at(spec.t1, i);
        double t2 = broadcast_at(spec.t2, i);
        r.relax.push_back(std::isinf(t1) ? 0.0 : 1.0 / t1);
        r.dephase.push_back(std::max(0.0, dephasing_rate(t1, t2)));
    }
    return r;
}

namespace {

bool all_zero(const QubitRates& r) {
    for (double v : r.relax) {
        if (v != 0.0) {
            return false;
        }
    }
    for (double v : r.dephase) {
        if (v != 0.0) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::vector<Operator> collapse_operators(int n_qubits, const DecoherenceSpec& spec) {
    if (n_qubits < 1) {
        throw std::invalid_argument("collapse_operators: n_qubits must be >= 1");
    }
    QubitRates r = qubit_rates(spec, n_qubits);
    std::vector<Operator> ops;
    for (int q = 0; q < n_qubits; q++) {
        if (r.relax[q] > 0) {
            ops.push_back(std::sqrt(r.relax[q]) * op_on(lower_op(), q, n_qubits));
        }
        if (r.dephase[q] > 0) {
            ops.push_back(std::sqrt(r.dephase[q] / 2.0) * op_on(pauli_z(), q, n_qubits));
        }
    }
    return ops;
}

Operator dissipator_superop(const std::vector<Operator>& collapse, Eigen::Index dim) {
    Operator diss = Operator::Zero(dim * dim, dim * dim);
    Operator eye = Operator::Identity(dim, dim);
    for (const Operator& c : collapse) {
        if (c.rows() != dim || c.cols() != dim) {
            throw std::invalid_argument("dissipator_superop: dimension mismatch");
        }
        Operator cc = c.adjoint() * c;
        diss += kron2(c.conjugate(), c) - 0.5 * kron2(eye, cc) -
                0.5 * kron2(cc.transpose(), eye);
    }
    return diss;
}

Operator TimeDependentHamiltonian::at(double t) const {
    Operator h = base;
    for (const DriveTerm& d : drives) {
        h += d.amplitude(t) * d.op;
    }
    return h;
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384,      0.0,        500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84,  0.0};
constexpr double kB4[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

}  // namespace

Trajectory lindblad_evolve(const TimeDependentHamiltonian& h, const Operator& rho0,
                           const std::vector<Operator>& collapse, double t_final,
                           double dt_ctrl) {
    Eigen::Index d = rho0.rows();
    if (d < 1 || rho0.cols() != d) {
        throw std::invalid_argument("lindblad_evolve: rho0 must be square");
    }
    if (h.base.rows() != d || h.base.cols() != d) {
        throw std::invalid_argument("lindblad_evolve: Hamiltonian dimension mismatch");
    }
    for (const DriveTerm& dr : h.drives) {
        if (dr.op.rows() != d || dr.op.cols() != d || !dr.amplitude) {
            throw std::invalid_argument("lindblad_evolve: bad drive term");
        }
    }
    for (const Operator& c : collapse) {
        if (c.rows() != d || c.cols() != d) {
            throw std::invalid_argument("lindblad_evolve: collapse dimension mismatch");
        }
    }
    if (!(t_final >= 0) || !std::isfinite(t_final)) {
        throw std::invalid_argument("lindblad_evolve: t_final must be finite and >= 0");
    }

    std::vector<Operator> cdc;  // C^dag C, precomputed
    cdc.reserve(collapse.size());
    for (const Operator& c : collapse) {
        cdc.push_back(c.adjoint() * c);
    }
    auto rhs = [&](double t, const Operator& rho) -> Operator {
        Operator hm = h.at(t);
        Operator out = cxd(0, -1) * (hm * rho - rho * hm);
        for (size_t k = 0; k < collapse.size(); k++) {
            out += collapse[k] * rho * collapse[k].adjoint() -
                   0.5 * (cdc[k] * rho + rho * cdc[k]);
        }
        return out;
    };

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(rho0);
    if (t_final == 0.0) {
        return traj;
    }

    const double rtol = 1e-8;
    const double atol = 1e-10;
    double t = 0.0;
    Operator y = rho0;
    double dt = dt_ctrl > 0 ? std::min(dt_ctrl, t_final) : t_final / 100.0;
    const double dt_min = 1e-16 * t_final;

    Operator k[7];
    while (t < t_final) {
        dt = std::min(dt, t_final - t);
        if (dt < dt_min) {
            throw NumericalError("lindblad_evolve: step size collapsed at t = " +
                                 std::to_string(t));
        }
        for (int s = 0; s < 7; s++) {
            Operator ys = y;
            for (int j = 0; j < s; j++) {
                if (kA[s][j] != 0.0) {
                    ys += (dt * kA[s][j]) * k[j];
                }
            }
            k[s] = rhs(t + kC[s] * dt, ys);
        }
        Operator y5 = y;
        Operator y4 = y;
        for (int s = 0; s < 7; s++) {
            if (kB5[s] != 0.0) {
                y5 += (dt * kB5[s]) * k[s];
            }
            if (kB4[s] != 0.0) {
                y4 += (dt * kB4[s]) * k[s];
            }
        }
        // RMS of the embedded error against the mixed tolerance.
        double acc = 0.0;
        for (Eigen::Index idx = 0; idx < y5.size(); idx++) {
            double sc = atol + rtol * std::max(std::abs(y5.data()[idx]),
                                               std::abs(y.data()[idx]));
            double e = std::abs(y5.data()[idx] - y4.data()[idx]) / sc;
            acc += e * e;
        }
        double err = std::sqrt(acc / double(y5.size()));
        double factor = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        factor = std::clamp(factor, 0.2, 5.0);
        if (err <= 1.0) {
            t += dt;
            y = y5;
            if (!y.allFinite()) {
                throw NumericalError("lindblad_evolve: non-finite state at t = " +
                                     std::to_string(t));
            }
            traj.times.push_back(t);
            traj.states.push_back(y);
        }
        dt *= factor;
        if (dt_ctrl > 0) {
            dt = std::min(dt, dt_ctrl);
        }
    }
    return traj;
}

Trajectory rotating_frame(const Trajectory& traj, const Operator& h_diag) {
    if (h_diag.rows() != h_diag.cols()) {
        throw std::invalid_argument("rotating_frame: Hamiltonian not square");
    }
    double off = 0.0;
    for (Eigen::Index i = 0; i < h_diag.rows(); i++) {
        for (Eigen::Index j = 0; j < h_diag.cols(); j++) {
            if (i != j) {
                off = std::max(off, std::abs(h_diag(i, j)));
            }
        }
    }
    double scale = std::max(1.0, h_diag.cwiseAbs().maxCoeff());
    if (off > 1e-12 * scale) {
        throw std::invalid_argument("rotating_frame: Hamiltonian must be diagonal");
    }
    Trajectory out;
    out.times = traj.times;
    out.states.reserve(traj.states.size());
    for (size_t s = 0; s < traj.states.size(); s++) {
        const Operator& rho = traj.states[s];
        if (rho.rows() != h_diag.rows() || rho.cols() != h_diag.cols()) {
            throw std::invalid_argument("rotating_frame: state dimension mismatch");
        }
        double t = traj.times[s];
        Eigen::VectorXcd u(h_diag.rows());
        for (Eigen::Index i = 0; i < h_diag.rows(); i++) {
            u(i) = std::exp(cxd(0, h_diag(i, i).real() * t));
        }
        out.states.push_back(u.asDiagonal() * rho * u.conjugate().asDiagonal());
    }
    return out;
}

Operator QuantumChannel::apply(const Operator& rho) const {
    if (rho.rows() != dim || rho.cols() != dim) {
        throw std::invalid_argument("QuantumChannel::apply: dimension mismatch");
    }
    return unvec(superop * vec(rho), dim);
}

Operator QuantumChannel::choi() const {
    Operator c = Operator::Zero(dim * dim, dim * dim);
    for (Eigen::Index j = 0; j < dim; j++) {
        for (Eigen::Index i = 0; i < dim; i++) {
            Operator image = unvec(superop.col(j * dim + i), dim);
            // kron with the matrix unit E_ij places image at block (i, j).
            for (Eigen::Index r = 0; r < dim; r++) {
                for (Eigen::Index s = 0; s < dim; s++) {
                    c(r * dim + i, s * dim + j) += image(r, s);
                }
            }
        }
    }
    return c;
}

bool QuantumChannel::is_trace_preserving(double tol) const {
    for (Eigen::Index j = 0; j < dim; j++) {
        for (Eigen::Index i = 0; i < dim; i++) {
            cxd tr = unvec(superop.col(j * dim + i), dim).trace();
            cxd want = i == j ? cxd(1, 0) : cxd(0, 0);
            if (std::abs(tr - want) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool QuantumChannel::is_completely_positive(double tol) const {
    Operator c = choi();
    if (!is_hermitian(c, tol)) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Operator> es((c + c.adjoint()) / 2.0);
    return es.eigenvalues().minCoeff() >= -tol * std::max(1.0, es.eigenvalues().maxCoeff());
}

QuantumChannel unitary_channel(const Operator& u) {
    if (!is_unitary(u)) {
        throw std::invalid_argument("unitary_channel: matrix is not unitary");
    }
    QuantumChannel ch;
    ch.dim = u.rows();
    ch.superop = kron2(u.conjugate(), u);
    return ch;
}

QuantumChannel channel_from_evolution(
    const std::function<Operator(const Operator&)>& evolve, Eigen::Index dim) {
    if (!evolve || dim < 1) {
        throw std::invalid_argument("channel_from_evolution: bad arguments");
    }
    QuantumChannel ch;
    ch.dim = dim;
    ch.superop = Operator::Zero(dim * dim, dim * dim);
    for (Eigen::Index j = 0; j < dim; j++) {
        for (Eigen::Index i = 0; i < dim; i++) {
            Operator unit = Operator::Zero(dim, dim);
            unit(i, j) = 1.0;
            Operator image = evolve(unit);
            if (image.rows() != dim || image.cols() != dim) {
                throw std::invalid_argument(
                    "channel_from_evolution: evolver changed dimensions");
            }
            ch.superop.col(j * dim + i) = vec(image);
        }
    }
    return ch;
}

double average_gate_fidelity(const QuantumChannel& ch, const Operator& u_target) {
    if (u_target.rows() != ch.dim || u_target.cols() != ch.dim) {
        throw std::invalid_argument("average_gate_fidelity: dimension mismatch");
    }
    if (!is_unitary(u_target)) {
        throw std::invalid_argument("average_gate_fidelity: target is not unitary");
    }
    double d = double(ch.dim);
    Operator su = kron2(u_target.conjugate(), u_target);
    double overlap = (su.adjoint() * ch.superop).trace().real();
    return (overlap + d) / (d * d + d);
}

HaarEstimate average_gate_fidelity_haar(const QuantumChannel& ch,
                                        const Operator& u_target, int n_samples,
                                        std::uint64_t seed) {
    if (n_samples < 1) {
        throw std::invalid_argument("average_gate_fidelity_haar: n_samples must be >= 1");
    }
    if (u_target.rows() != ch.dim || u_target.cols() != ch.dim) {
        throw std::invalid_argument("average_gate_fidelity_haar: dimension mismatch");
    }
    double sum = 0.0;
    double sumsq = 0.0;
    for (int s = 0; s < n_samples; s++) {
        PureState psi = haar_random_state(ch.dim, mix_seed(seed, s));
        PureState phi = u_target * psi;
        Operator out = ch.apply(density_from_state(psi));
        double f = (phi.adjoint() * out * phi).value().real();
        sum += f;
        sumsq += f * f;
    }
    HaarEstimate est;
    est.mean = sum / n_samples;
    if (n_samples > 1) {
        double var = (sumsq - sum * sum / n_samples) / (n_samples - 1);
        est.std_error = std::sqrt(std::max(0.0, var) / n_samples);
    }
    return est;
}

namespace {

// Control bit of qubit i in sector c (qubit i at bit n-1-i); +1 for |0>.
double sector_sign(int c, int i, int n) {
    return ((c >> (n - 1 - i)) & 1) ? -1.0 : 1.0;
}

int sector_bit(int c, int i, int n) {
    return (c >> (n - 1 - i)) & 1;
}

// Shared blocked-evolution fidelity engine. The full Hamiltonian is block
// diagonal over control sectors; coherences between sectors only pick up
// scalar decay from the sector-diagonal control dissipators (the discarded
// relaxation feed terms are orthogonal to the target coherences and cannot
// change the trace below). Per sector c the frame phase
// R_c = exp(+i diag(H_c) t) removes the diagonal part, and
//   F = (sum_{c,c'} Tr[(conj(G_c') (x) G_c)^dag (conj(R_c') (x) R_c) S_cc'] + d)
//       / (d^2 + d)
// with S_cc' = exp(L_cc' t) the coherence-block propagator and G_c the
// target blocks. Without decoherence this reduces to
// F = (|sum_c Tr(G_c^dag R_c exp(-i H_c t))|^2 + d) / (d^2 + d).
struct BlockedProblem {
    std::vector<Operator> h;    // per-sector target-space Hamiltonian
    std::vector<Operator> tgt;  // per-sector target unitary block
    int n_controls = 0;
    double d_total = 0.0;  // full Hilbert-space dimension
};

Eigen::VectorXcd frame_phases(const Operator& h, double t) {
    Eigen::VectorXcd r(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); i++) {
        r(i) = std::exp(cxd(0, h(i, i).real() * t));
    }
    return r;
}

double blocked_unitary_fidelity(const BlockedProblem& bp, double t) {
    cxd tr = 0.0;
    int ns = 1 << bp.n_controls;
    for (int c = 0; c < ns; c++) {
        Operator u = matrix_exp(cxd(0, -t) * bp.h[c]);
        Eigen::VectorXcd r = frame_phases(bp.h[c], t);
        tr += (bp.tgt[c].adjoint() * (r.asDiagonal() * u)).trace();
    }
    double d = bp.d_total;
    return (std::norm(tr) + d) / (d * d + d);
}

double blocked_lindblad_fidelity(const BlockedProblem& bp, double t,
                                 const std::vector<Operator>& target_cops,
                                 const QubitRates& rates) {
    int ns = 1 << bp.n_controls;
    Eigen::Index dt = bp.h[0].rows();
    Operator diss = dissipator_superop(target_cops, dt);
    Operator eye = Operator::Identity(dt, dt);
    double tsum = 0.0;
    for (int c = 0; c < ns; c++) {
        for (int cp = 0; cp < ns; cp++) {
            double scalar = 0.0;
            for (int i = 0; i < bp.n_controls; i++) {
                int b = sector_bit(c, i, bp.n_controls);
                int b2 = sector_bit(cp, i, bp.n_controls);
                scalar += -0.5 * rates.relax[i] * (b + b2) - rates.dephase[i] * (b != b2);
            }
            Operator lb = cxd(0, -1) * (kron2(eye, bp.h[c]) -
                                        kron2(bp.h[cp].transpose(), eye)) +
                          diss +
                          scalar * Operator::Identity(dt * dt, dt * dt);
            Operator sb = matrix_exp(t * lb);
            Eigen::VectorXcd rc = frame_phases(bp.h[c], t);
            Eigen::VectorXcd rcp = frame_phases(bp.h[cp], t);
            Eigen::VectorXcd rf(dt * dt);
            for (Eigen::Index i = 0; i < dt; i++) {
                for (Eigen::Index j = 0; j < dt; j++) {
                    rf(i * dt + j) = std::conj(rcp(i)) * rc(j);
                }
            }
            Operator gt = kron2(bp.tgt[cp].conjugate(), bp.tgt[c]);
            tsum += (gt.adjoint() * (rf.asDiagonal() * sb)).trace().real();
        }
    }
    double d = bp.d_total;
    return (d + tsum) / (d * d + d);
}

// Target-qubit collapse operators on the target subspace; qubit offset maps
// subspace qubit q to full-register qubit offset+q for rate lookup.
std::vector<Operator> target_collapse(const QubitRates& rates, int offset, int n_target) {
    std::vector<Operator> ops;
    for (int q = 0; q < n_target; q++) {
        if (rates.relax[offset + q] > 0) {
            ops.push_back(std::sqrt(rates.relax[offset + q]) * op_on(lower_op(), q, n_target));
        }
        if (rates.dephase[offset + q] > 0) {
            ops.push_back(std::sqrt(rates.dephase[offset + q] / 2.0) *
                          op_on(pauli_z(), q, n_target));
        }
    }
    return ops;
}

}  // namespace

GateSimResult simulate_cniswap(const GateModelParams& p,
                               const std::optional<DecoherenceSpec>& dec,
                               const CniswapOptions& opts) {
    validate(p);
    if (!(p.jx > 0)) {
        throw std::invalid_argument("simulate_cniswap: jx must be positive");
    }
    int n = p.n_controls;
    double t = (kTwoPi / 4.0) / p.jx;  // pi / (2 jx)
    int ns = 1 << n;
    int all_ones = ns - 1;

    BlockedProblem bp;
    bp.n_controls = n;
    bp.d_total = double(Eigen::Index(1) << (n + 2));
    for (int c = 0; c < ns; c++) {
        double a = -p.delta;
        for (int i = 0; i < n; i++) {
            a += p.jz[i] * sector_sign(c, i, n);
        }
        Operator h = Operator::Zero(4, 4);
        h(0, 0) = a;
        h(1, 1) = a;
        h(2, 2) = -a;
        h(3, 3) = -a;
        if (!opts.rwa || c == all_ones) {
            h(1, 2) = p.jx;
            h(2, 1) = p.jx;
        }
        bp.h.push_back(h);
        Operator g = Operator::Identity(4, 4);
        if (c == all_ones) {
            g(1, 1) = 0;
            g(2, 2) = 0;
            g(1, 2) = cxd(0, -double(p.phase_sign));
            g(2, 1) = cxd(0, -double(p.phase_sign));
        }
        bp.tgt.push_back(g);
    }

    GateSimResult res;
    res.gate_time = t;
    if (!dec) {
        res.fidelity = blocked_unitary_fidelity(bp, t);
        return res;
    }
    QubitRates rates = qubit_rates(*dec, n + 2);
    if (all_zero(rates)) {
        res.fidelity = blocked_unitary_fidelity(bp, t);
        return res;
    }
    res.fidelity = blocked_lindblad_fidelity(bp, t, target_collapse(rates, n, 2), rates);
    return res;
}

double simulate_swap_array(const SwapArrayParams& p,
                           const std::optional<DecoherenceSpec>& dec,
                           std::optional<double> t) {
    validate(p);
    if (!t && !(p.jx > 0)) {
        throw std::invalid_argument(
            "simulate_swap_array: default gate time needs jx > 0");
    }
    double tt = t ? *t : (kTwoPi / 4.0) / p.jx;
    if (!(tt >= 0) || !std::isfinite(tt)) {
        throw std::invalid_argument("simulate_swap_array: bad gate time");
    }
    int n = p.n_targets;
    int ns = 1 << n;
    Eigen::Index dt = Eigen::Index(1) << n;

    BlockedProblem bp;
    bp.n_controls = n;
    bp.d_total = double(Eigen::Index(1) << (2 * n));
    Operator xx = Operator::Zero(dt, dt);
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            xx += p.jx * (op_on(pauli_x(), i, n) * op_on(pauli_x(), j, n));
        }
    }
    for (int c = 0; c < ns; c++) {
        Operator h = xx;
        for (int i = 0; i < n; i++) {
            double coeff = -(p.omega_bar + p.detunings[i]) +
                           p.jz[i] * sector_sign(c, i, n);
            h += coeff * op_on(pauli_z(), i, n);
            if (!p.control_freqs.empty()) {
                // Sector-diagonal scalar; cancels against the frame phase.
                h -= p.control_freqs[i] * sector_sign(c, i, n) *
                     Operator::Identity(dt, dt);
            }
        }
        bp.h.push_back(h);

        std::vector<int> gated;
        for (int i = 0; i < n; i++) {
            if (sector_bit(c, i, n)) {
                gated.push_back(i);
            }
        }
        if (gated.size() <= 1) {
            bp.tgt.push_back(Operator::Identity(dt, dt));
        } else {
            // Adjoint of the +i closed form: the simulation evolves exp(-iHt).
            bp.tgt.push_back(embed_on_qubits(
                flipflop_propagator(int(gated.size()), -p.jx * tt), gated, n));
        }
    }

    if (!dec) {
        return blocked_unitary_fidelity(bp, tt);
    }
    QubitRates rates = qubit_rates(*dec, 2 * n);
    if (all_zero(rates)) {
        return blocked_unitary_fidelity(bp, tt);
    }
    return blocked_lindblad_fidelity(bp, tt, target_collapse(rates, n, n), rates);
}

}  // namespace ciswap
