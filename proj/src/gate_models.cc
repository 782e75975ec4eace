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

#include "ciswap/gate_models.h"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ciswap {

namespace {

bool all_finite(const std::vector<double>& v) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            return false;
        }
    }
    return true;
}

// Sign of sz on control i (qubit i, bit n-1-i of the sector index c).
double control_sign(int sector, int i, int n_controls) {
    return ((sector >> (n_controls - 1 - i)) & 1) ? -1.0 : 1.0;
}

}  // namespace

void validate(const GateModelParams& p) {
    if (p.n_controls < 0) {
        throw std::invalid_argument("GateModelParams: n_controls must be >= 0");
    }
    if (static_cast<int>(p.jz.size()) != p.n_controls) {
        throw std::invalid_argument("GateModelParams: jz size must equal n_controls");
    }
    if (p.phase_sign != 1 && p.phase_sign != -1) {
        throw std::invalid_argument("GateModelParams: phase_sign must be +1 or -1");
    }
    if (!std::isfinite(p.omega) || !std::isfinite(p.delta) || !std::isfinite(p.jx) ||
        !all_finite(p.jz)) {
        throw std::invalid_argument("GateModelParams: non-finite entry");
    }
}

double resonant_delta(const std::vector<double>& jz) {
    double sum = 0.0;
    for (double v : jz) {
        sum += v;
    }
    return -sum;
}

bool is_resonant(const GateModelParams& p, double rel_tol) {
    double want = resonant_delta(p.jz);
    return std::abs(p.delta - want) <= rel_tol * std::max(1.0, std::abs(want));
}

Operator interaction_hamiltonian(const GateModelParams& p) {
    validate(p);
    int nq = p.n_controls + 2;
    int t1 = p.n_controls;
    int t2 = p.n_controls + 1;
    Operator sz_t1 = op_on(pauli_z(), t1, nq);
    Operator h = -p.delta * sz_t1;
    for (int i = 0; i < p.n_controls; i++) {
        h += p.jz[i] * (sz_t1 * op_on(pauli_z(), i, nq));
    }
    h += p.jx * (op_on(raise_op(), t1, nq) * op_on(lower_op(), t2, nq) +
                 op_on(raise_op(), t2, nq) * op_on(lower_op(), t1, nq));
    return h;
}

namespace {

// Identity everywhere except the all-controls-one target block.
Operator cniswap_like(int n_controls, const Operator& block) {
    if (n_controls < 0) {
        throw std::invalid_argument("n_controls must be >= 0");
    }
    if (n_controls > 28) {
        throw std::invalid_argument("n_controls too large for dense construction");
    }
    Eigen::Index dim = Eigen::Index(1) << (n_controls + 2);
    Operator u = Operator::Identity(dim, dim);
    u.block(dim - 4, dim - 4, 4, 4) = block;
    return u;
}

// Target-pair block of the resonant rotating-frame propagator at angle
// theta = jx * t: basis (00, 01, 10, 11).
Operator iswap_block(double theta, int phase_sign) {
    Operator b = Operator::Identity(4, 4);
    b(1, 1) = std::cos(theta);
    b(2, 2) = std::cos(theta);
    b(1, 2) = cxd(0, -phase_sign * std::sin(theta));
    b(2, 1) = b(1, 2);
    return b;
}

}  // namespace

Operator ideal_cniswap(int n_controls, int phase_sign) {
    if (phase_sign != 1 && phase_sign != -1) {
        throw std::invalid_argument("phase_sign must be +1 or -1");
    }
    return cniswap_like(n_controls, iswap_block(kTwoPi / 4.0, phase_sign));
}

Operator ideal_sqrt_iswap(int n_controls) {
    return cniswap_like(n_controls, iswap_block(kTwoPi / 8.0, +1));
}

Operator evolution_operator(const GateModelParams& p, double t) {
    validate(p);
    if (!is_resonant(p)) {
        throw std::invalid_argument(
            "evolution_operator: parameters are off resonance (delta = " +
            std::to_string(p.delta) + ", resonance needs " +
            std::to_string(resonant_delta(p.jz)) +
            "); the closed form does not apply, simulate the exact "
            "Hamiltonian instead");
    }
    return cniswap_like(p.n_controls, iswap_block(p.jx * t, p.phase_sign));
}

void validate(const SwapArrayParams& p) {
    if (p.n_targets < 2) {
        throw std::invalid_argument("SwapArrayParams: n_targets must be >= 2");
    }
    if (static_cast<int>(p.detunings.size()) != p.n_targets ||
        static_cast<int>(p.jz.size()) != p.n_targets) {
        throw std::invalid_argument(
            "SwapArrayParams: detunings and jz must have n_targets entries");
    }
    if (!p.control_freqs.empty() &&
        static_cast<int>(p.control_freqs.size()) != p.n_targets) {
        throw std::invalid_argument(
            "SwapArrayParams: control_freqs must be empty or have n_targets entries");
    }
    if (!std::isfinite(p.omega_bar) || !std::isfinite(p.jx) ||
        !all_finite(p.detunings) || !all_finite(p.jz) || !all_finite(p.control_freqs)) {
        throw std::invalid_argument("SwapArrayParams: non-finite entry");
    }
}

bool is_resonant(const SwapArrayParams& p, double rel_tol) {
    for (int i = 0; i < p.n_targets; i++) {
        double want = -p.detunings[i];
        if (std::abs(p.jz[i] - want) > rel_tol * std::max(1.0, std::abs(want))) {
            return false;
        }
    }
    return true;
}

Operator swap_array_hamiltonian(const SwapArrayParams& p) {
    validate(p);
    int n = p.n_targets;
    int nq = 2 * n;
    Eigen::Index dim = Eigen::Index(1) << nq;
    Operator h = Operator::Zero(dim, dim);
    for (int i = 0; i < n; i++) {
        Operator sz_t = op_on(pauli_z(), n + i, nq);
        h += -(p.omega_bar + p.detunings[i]) * sz_t;
        h += p.jz[i] * (op_on(pauli_z(), i, nq) * sz_t);
        if (!p.control_freqs.empty()) {
            h += -p.control_freqs[i] * op_on(pauli_z(), i, nq);
        }
    }
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            h += p.jx * (op_on(pauli_x(), n + i, nq) * op_on(pauli_x(), n + j, nq));
        }
    }
    return h;
}

namespace {

// exp(+i theta (ones_k - I)) acting on a k-dim excitation sector.
void fill_hopping_sector(Operator& w, const std::vector<int>& basis, double theta, int k) {
    cxd diag = std::exp(cxd(0, -theta));
    cxd hop = (std::exp(cxd(0, theta * (k - 1))) - diag) / double(k);
    for (size_t r = 0; r < basis.size(); r++) {
        for (size_t c = 0; c < basis.size(); c++) {
            w(basis[r], basis[c]) = hop + (r == c ? diag : cxd(0, 0));
        }
    }
}

}  // namespace

Operator flipflop_propagator(int k, double theta) {
    if (k < 0 || k > 12) {
        throw std::invalid_argument("flipflop_propagator: k out of range");
    }
    Eigen::Index dim = Eigen::Index(1) << k;
    if (k <= 3) {
        // H_ff restricted to the single-excitation (and single-hole) sector
        // is ones_k - I; every other sector is untouched for k <= 3.
        Operator w = Operator::Identity(dim, dim);
        std::vector<int> one_exc;
        std::vector<int> hole;
        for (int v = 0; v < dim; v++) {
            int pc = __builtin_popcount(unsigned(v));
            if (pc == 1) {
                one_exc.push_back(v);
            }
            if (pc == k - 1) {
                hole.push_back(v);
            }
        }
        fill_hopping_sector(w, one_exc, theta, k);
        if (k >= 3) {
            fill_hopping_sector(w, hole, theta, k);
        }
        return w;
    }
    // k >= 4: intermediate excitation sectors are not complete-graph walks;
    // use the brute-force exponential.
    Operator h = Operator::Zero(dim, dim);
    for (int i = 0; i < k; i++) {
        for (int j = i + 1; j < k; j++) {
            h += op_on(raise_op(), i, k) * op_on(lower_op(), j, k) +
                 op_on(lower_op(), i, k) * op_on(raise_op(), j, k);
        }
    }
    return matrix_exp(cxd(0, theta) * h);
}

Operator swap_array_ideal_unitary(int n_targets, double t, double jx) {
    if (n_targets != 3 && n_targets != 4) {
        throw std::invalid_argument(
            "swap_array_ideal_unitary: closed forms cover n_targets 3 and 4, got " +
            std::to_string(n_targets));
    }
    if (t < 0) {
        throw std::invalid_argument("swap_array_ideal_unitary: t must be >= 0");
    }
    int n = n_targets;
    Eigen::Index dt = Eigen::Index(1) << n;
    Eigen::Index dim = dt * dt;
    Operator u = Operator::Zero(dim, dim);
    double theta = jx * t;
    for (int c = 0; c < dt; c++) {
        // Targets whose control reads |1>; target i at bit n-1-i.
        std::vector<int> gated;
        for (int i = 0; i < n; i++) {
            if ((c >> (n - 1 - i)) & 1) {
                gated.push_back(i);
            }
        }
        int k = static_cast<int>(gated.size());
        Eigen::Index base = Eigen::Index(c) * dt;
        if (k <= 1) {
            u.block(base, base, dt, dt).setIdentity();
            continue;
        }
        u.block(base, base, dt, dt) =
            embed_on_qubits(flipflop_propagator(k, theta), gated, n);
    }
    return u;
}

}  // namespace ciswap
