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

#include "ciswap/tables.h"

namespace ciswap {

namespace {

// Energies in 2*pi*GHz, capacitances in fF, column order
// (E_1, E_T1, E_T2, E_TB, E_z1, C_1, C_T1, C_T2, C_TB, C_z1, C_x).
constexpr double kDesigns[kNumReferenceDesigns][11] = {
    {44.22, 12.63, 11.44, 0.41, 14.70, 1.00, 1.00, 68.32, 100.00, 54.26, 27.16},
    {24.88, 21.28, 53.12, 1.46, 9.18, 41.84, 31.47, 12.39, 27.92, 6.74, 7.46},
    {8.10, 33.93, 44.86, 5.09, 58.93, 16.63, 16.93, 29.69, 8.35, 10.01, 1.00},
    {0.09, 0.01, 13.27, 0.41, 33.39, 8.28, 19.38, 36.98, 99.30, 60.64, 35.75},
    {32.32, 20.14, 35.10, 0.51, 24.50, 4.80, 1.00, 1.00, 82.82, 79.21, 20.58},
    {20.48, 0.01, 17.14, 1.03, 50.65, 1.01, 23.85, 61.90, 39.50, 45.53, 10.27},
    {52.99, 45.93, 29.78, 1.04, 6.44, 8.21, 3.06, 27.90, 39.54, 70.97, 9.79},
    {29.58, 7.72, 21.40, 0.71, 28.64, 26.54, 32.89, 33.37, 56.54, 1.00, 16.55},
    {9.50, 26.92, 31.10, 2.90, 8.08, 72.77, 37.09, 30.97, 12.31, 49.03, 7.34},
    {10.77, 10.58, 17.51, 1.59, 16.70, 56.66, 7.18, 61.71, 23.92, 52.22, 10.16},
};

// (omega_1, omega~_T1, omega_TB, omega~_T2) in 2*pi*GHz, (Jz, Jx) in
// 2*pi*MHz.
constexpr double kGate[kNumReferenceDesigns][6] = {
    {16.61, 7.21, 1.08, 3.98, -90.7, 8.2},
    {9.63, 8.90, 3.82, 17.65, -55.6, 20.7},
    {16.37, 18.56, 13.37, 14.85, -299.6, 27.3},
    {8.45, 4.82, 1.06, 4.51, -148.9, 11.8},
    {14.66, 10.13, 1.34, 11.54, -123.9, 11.1},
    {17.69, 10.28, 2.70, 5.82, -252.8, 14.3},
    {18.51, 15.92, 2.73, 10.18, -41.1, 13.6},
    {15.84, 7.09, 1.88, 7.30, -141.6, 12.2},
    {4.71, 2.90, 7.62, 10.64, -35.6, 16.7},
    {6.07, 7.41, 4.19, 5.87, -93.5, 47.3},
};

// Row 0 one-sigma spreads under 5% fabrication scatter, same units.
constexpr double kGateSpreadRow0[6] = {0.43, 0.20, 0.04, 0.12, 5.2, 0.8};

// Relative anharmonicities in percent and E^J/E^C ratios, node order
// (control, T1, TB, T2).
constexpr double kQuality[kNumReferenceDesigns][8] = {
    {-2.1, -2.5, -2.1, -2.0, 85.1, 77.1, 73.6, 71.4},
    {-2.1, -2.1, -2.1, -2.0, 83.9, 81.4, 74.3, 73.7},
    {-2.6, -2.1, -2.1, -2.1, 80.2, 120.6, 74.3, 73.3},
    {-2.6, -2.1, -2.0, -2.0, 76.4, 164.4, 74.4, 72.4},
    {-2.1, -2.1, -2.0, -2.0, 93.3, 104.9, 74.7, 74.3},
    {-2.3, -2.1, -2.0, -2.0, 85.7, 117.1, 74.4, 72.4},
    {-2.1, -2.1, -2.1, -2.0, 76.9, 79.6, 73.9, 72.1},
    {-2.2, -2.1, -2.1, -2.0, 82.7, 123.6, 73.9, 72.2},
    {-2.1, -4.2, -2.0, -2.0, 88.7, 144.9, 74.5, 71.9},
    {-2.1, -2.4, -2.1, -2.0, 105.4, 75.7, 74.3, 73.3},
};

}  // namespace

const std::vector<CircuitParams>& reference_designs() {
    static const std::vector<CircuitParams> designs = [] {
        std::vector<CircuitParams> out;
        for (const auto& row : kDesigns) {
            CircuitParams p;
            p.n_controls = 1;
            p.e_control = {row[0] * kGHz};
            p.e_t1 = row[1] * kGHz;
            p.e_t2 = row[2] * kGHz;
            p.e_tb = row[3] * kGHz;
            p.e_z = {row[4] * kGHz};
            p.c_control = {row[5]};
            p.c_t1 = row[6];
            p.c_t2 = row[7];
            p.c_tb = row[8];
            p.c_z = {row[9]};
            p.c_x = row[10];
            p.flux = 0.0;
            out.push_back(p);
        }
        return out;
    }();
    return designs;
}

namespace {

ExpectedGateParams gate_row(const double (&row)[6]) {
    ExpectedGateParams g;
    g.omega_c = row[0] * kGHz;
    g.omega_t1 = row[1] * kGHz;
    g.omega_tb = row[2] * kGHz;
    g.omega_t2 = row[3] * kGHz;
    g.jz = row[4] * kMHz;
    g.jx = row[5] * kMHz;
    return g;
}

}  // namespace

const std::vector<ExpectedGateParams>& expected_gate_params() {
    static const std::vector<ExpectedGateParams> vals = [] {
        std::vector<ExpectedGateParams> out;
        for (const auto& row : kGate) {
            out.push_back(gate_row(row));
        }
        return out;
    }();
    return vals;
}

const ExpectedGateParams& expected_gate_param_spread_row0() {
    static const ExpectedGateParams spread = gate_row(kGateSpreadRow0);
    return spread;
}

const std::vector<ExpectedQuality>& expected_quality() {
    static const std::vector<ExpectedQuality> vals = [] {
        std::vector<ExpectedQuality> out;
        for (const auto& row : kQuality) {
            ExpectedQuality q;
            for (int i = 0; i < 4; i++) {
                q.alpha[i] = row[i] / 100.0;
                q.ej_over_ec[i] = row[4 + i];
            }
            out.push_back(q);
        }
        return out;
    }();
    return vals;
}

}  // namespace ciswap
