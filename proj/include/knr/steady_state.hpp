// Copyright 2026 The knrsim Authors
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

#pragma once

// Semiclassical steady states of the pumped Kerr resonator.
//
// In the frame rotating at omega_p the mean field obeys
//
//   (Delta_p + K n + K' n^2 - i kappa/2) alpha = -i epsilon_p,   n = |alpha|^2,
//
// whose modulus gives a quintic (cubic when K' = 0) in the photon number:
//
//   n [ (Delta_p + K n + K' n^2)^2 + kappa^2/4 ] = epsilon_p^2.

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "knr/execution.hpp"
#include "knr/model.hpp"

namespace knr {

enum class Branch { kLow, kHigh, kUnstable };
std::string_view branch_name(Branch b);  // "L", "H", "UNSTABLE"

struct SteadyStateSolution {
    std::complex<double> alpha;
    double n = 0.0;
    bool stable = false;
    Branch branch = Branch::kUnstable;
};

/// Coefficients (lowest degree first, in units of kappa^2) of
/// n [ (Delta + K n + K' n^2)^2 + kappa^2/4 ] with frequencies scaled by kappa.
/// The steady-state equation is drive_response(n) = (epsilon_p/kappa)^2.
std::array<double, 6> drive_response_coefficients(const ResonatorParams &res, double detuning);

/// |(Delta + K n + K' n^2 - i kappa/2) alpha + i epsilon_p| with n = |alpha|^2.
double steady_state_residual(const ResonatorParams &res, const DriveParams &drive,
                             std::complex<double> alpha);

/// Residual tolerance used for returned solutions and stability contracts.
double steady_state_tolerance(const ResonatorParams &res, const DriveParams &drive);

std::vector<double> photon_number_roots(const ResonatorParams &res, const DriveParams &drive);

/// Linearized drift: A = Delta + 2Kn + 3K'n^2, |C| = |K + 2K'n| n, B = A^2 - |C|^2.
struct DriftCoefficients {
    double A = 0.0;
    double C = 0.0;
    double B = 0.0;
};
DriftCoefficients drift_coefficients(const ResonatorParams &res, double detuning, double n);

/// Stable iff the drift eigenvalues -kappa/2 +- sqrt(-B) have negative real part.
/// Throws kContract when alpha does not satisfy the steady-state equation.
bool classify_stability(const ResonatorParams &res, const DriveParams &drive,
                        std::complex<double> alpha);

std::vector<SteadyStateSolution> solve_steady_states(const ResonatorParams &res,
                                                     const DriveParams &drive);

/// Smallest positive inflection point of the drive response curve; separates
/// the low and high amplitude regimes when only one stable state exists.
std::optional<double> branch_separator(const ResonatorParams &res, double detuning);

/// First stable solution carrying the requested label, if any.
std::optional<SteadyStateSolution> find_branch(std::span<const SteadyStateSolution> solutions,
                                               Branch branch);

struct BifurcationThresholds {
    double p_minus = 0.0;        // watts; H disappears below
    double p_plus = 0.0;         // watts; L disappears above
    double eps2_minus = 0.0;     // epsilon_p^2 at p_minus
    double eps2_plus = 0.0;      // epsilon_p^2 at p_plus
    double n_at_plus = 0.0;      // photon number where L merges with the unstable branch
    double n_at_minus = 0.0;     // photon number where H merges with the unstable branch
};

/// Power window in which three steady states coexist at reduced detuning Omega.
/// The edges are the turning points of the drive response curve. Throws
/// kNoBistability when no window exists (Omega < sqrt(3) for K' = 0) and
/// kLinearResonator when K = K' = 0.
BifurcationThresholds bifurcation_thresholds(const ResonatorParams &res, double reduced);

enum class Region { kLow, kHigh, kBistable };
std::string_view region_name(Region r);  // "L", "H", "B"

struct BistabilityDiagram {
    std::vector<double> omega_axis;  // reduced detuning
    std::vector<double> power_axis;  // P / P_c
    std::vector<Region> region;      // omega-major: region[i * power_axis.size() + j]
    std::vector<double> p_plus;      // P_+ / P_c per omega, NaN when no window
    std::vector<double> p_minus;

    Region at(std::size_t omega_index, std::size_t power_index) const {
        return region[omega_index * power_axis.size() + power_index];
    }
};

/// Any cell with at least two stable solutions is B.
BistabilityDiagram stability_diagram(const ResonatorParams &res,
                                     std::span<const double> omega_grid,
                                     std::span<const double> power_over_pc_grid,
                                     Exec exec = Exec::kParallel);

}  // namespace knr
