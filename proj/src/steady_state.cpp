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

#include "knr/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "knr/error.hpp"
#include "knr/grid.hpp"
#include "knr/polynomial.hpp"

namespace knr {

namespace {
constexpr std::string_view kModule = "steadystate";
constexpr std::complex<double> kI{0.0, 1.0};

// Turning points of the drive response are accepted with a looser imaginary
// tolerance than ordinary roots: at the critical point they form a double root.
constexpr double kTurningPointImagTol = 1e-6;

std::complex<double> amplitude_from_photon_number(const ResonatorParams &res, double detuning,
                                                  double epsilon, double n) {
    const double u = detuning + res.kerr * n + res.kerr2 * n * n;
    return -kI * epsilon / std::complex<double>(u, -0.5 * res.kappa);
}

}  // namespace

std::string_view branch_name(Branch b) {
    switch (b) {
        case Branch::kLow: return "L";
        case Branch::kHigh: return "H";
        case Branch::kUnstable: return "UNSTABLE";
    }
    return "?";
}

std::string_view region_name(Region r) {
    switch (r) {
        case Region::kLow: return "L";
        case Region::kHigh: return "H";
        case Region::kBistable: return "B";
    }
    return "?";
}

std::array<double, 6> drive_response_coefficients(const ResonatorParams &res, double detuning) {
    const double d = detuning / res.kappa;
    const double k = res.kerr / res.kappa;
    const double k2 = res.kerr2 / res.kappa;
    return {0.0, d * d + 0.25, 2.0 * d * k, k * k + 2.0 * d * k2, 2.0 * k * k2, k2 * k2};
}

double steady_state_residual(const ResonatorParams &res, const DriveParams &drive,
                             std::complex<double> alpha) {
    const double n = std::norm(alpha);
    const double u = pump_detuning(res, drive.omega_p) + res.kerr * n + res.kerr2 * n * n;
    return std::abs(std::complex<double>(u, -0.5 * res.kappa) * alpha + kI * drive.epsilon_p);
}

double steady_state_tolerance(const ResonatorParams &res, const DriveParams &drive) {
    return 1e-9 * std::max(drive.epsilon_p, res.kappa);
}

std::vector<double> photon_number_roots(const ResonatorParams &res, const DriveParams &drive) {
    res.validate();
    drive.validate();
    if (drive.epsilon_p == 0.0) return {0.0};
    auto coeffs = drive_response_coefficients(res, pump_detuning(res, drive.omega_p));
    const double e = drive.epsilon_p / res.kappa;
    coeffs[0] = -e * e;
    return poly::nonnegative_real_roots(coeffs);
}

DriftCoefficients drift_coefficients(const ResonatorParams &res, double detuning, double n) {
    DriftCoefficients d;
    d.A = detuning + 2.0 * res.kerr * n + 3.0 * res.kerr2 * n * n;
    d.C = std::abs(res.kerr + 2.0 * res.kerr2 * n) * n;
    d.B = d.A * d.A - d.C * d.C;
    return d;
}

bool classify_stability(const ResonatorParams &res, const DriveParams &drive,
                        std::complex<double> alpha) {
    const double residual = steady_state_residual(res, drive, alpha);
    if (!(residual <= steady_state_tolerance(res, drive))) {
        std::ostringstream msg;
        msg << "alpha is not a steady state (residual " << residual << " 1/s)";
        throw Error(ErrorCode::kContract, kModule, msg.str());
    }
    const auto d = drift_coefficients(res, pump_detuning(res, drive.omega_p), std::norm(alpha));
    if (d.B > 0.0) return true;
    return std::sqrt(-d.B) < 0.5 * res.kappa;
}

std::optional<double> branch_separator(const ResonatorParams &res, double detuning) {
    const auto coeffs = drive_response_coefficients(res, detuning);
    const auto second = poly::derivative(poly::derivative(coeffs));
    for (double n : poly::nonnegative_real_roots(second)) {
        if (n > 0.0) return n;
    }
    return std::nullopt;
}

std::vector<SteadyStateSolution> solve_steady_states(const ResonatorParams &res,
                                                     const DriveParams &drive) {
    const double detuning = pump_detuning(res, drive.omega_p);
    const auto roots = photon_number_roots(res, drive);

    std::vector<SteadyStateSolution> out;
    out.reserve(roots.size());
    for (double n : roots) {
        SteadyStateSolution s;
        s.alpha = amplitude_from_photon_number(res, detuning, drive.epsilon_p, n);
        s.n = std::norm(s.alpha);
        const auto d = drift_coefficients(res, detuning, s.n);
        s.stable = d.B > 0.0 || std::sqrt(-d.B) < 0.5 * res.kappa;
        out.push_back(s);
    }

    std::vector<std::size_t> stable;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].stable) stable.push_back(i);
    }
    const auto separator = branch_separator(res, detuning);
    auto by_separator = [&](double n) {
        return (separator && n >= *separator) ? Branch::kHigh : Branch::kLow;
    };
    for (std::size_t k = 0; k < stable.size(); ++k) {
        auto &s = out[stable[k]];
        if (stable.size() >= 2 && k == 0) s.branch = Branch::kLow;
        else if (stable.size() >= 2 && k + 1 == stable.size()) s.branch = Branch::kHigh;
        else s.branch = by_separator(s.n);
    }
    return out;
}

std::optional<SteadyStateSolution> find_branch(std::span<const SteadyStateSolution> solutions,
                                               Branch branch) {
    for (const auto &s : solutions) {
        if (s.stable && s.branch == branch) return s;
    }
    return std::nullopt;
}

BifurcationThresholds bifurcation_thresholds(const ResonatorParams &res, double reduced) {
    res.validate();
    if (res.kerr == 0.0 && res.kerr2 == 0.0) {
        throw Error(ErrorCode::kLinearResonator, kModule, "K = K' = 0: no bifurcation exists");
    }
    const double detuning = detuning_from_reduced(res, reduced);
    const auto coeffs = drive_response_coefficients(res, detuning);
    const auto slope = poly::derivative(coeffs);
    std::vector<double> turning;
    for (double n : poly::nonnegative_real_roots(slope, kTurningPointImagTol)) {
        if (n > 0.0) turning.push_back(n);
    }
    if (turning.empty()) {
        std::ostringstream msg;
        msg << "no bistable window at reduced detuning " << reduced;
        throw Error(ErrorCode::kNoBistability, kModule, msg.str());
    }

    BifurcationThresholds t;
    t.n_at_plus = turning[0];
    t.n_at_minus = turning.size() >= 2 ? turning[1] : turning[0];
    const double k2 = res.kappa * res.kappa;
    t.eps2_plus = k2 * poly::evaluate(coeffs, t.n_at_plus);
    t.eps2_minus = k2 * poly::evaluate(coeffs, t.n_at_minus);
    if (t.eps2_minus > t.eps2_plus) {
        std::swap(t.eps2_minus, t.eps2_plus);
        std::swap(t.n_at_minus, t.n_at_plus);
    }
    const double omega_p = res.omega_c - detuning;
    if (!(omega_p > 0.0)) {
        throw Error(ErrorCode::kDomain, kModule, "reduced detuning puts omega_p below zero");
    }
    t.p_plus = amplitude_to_power(res, omega_p, std::sqrt(t.eps2_plus));
    t.p_minus = amplitude_to_power(res, omega_p, std::sqrt(t.eps2_minus));
    return t;
}

BistabilityDiagram stability_diagram(const ResonatorParams &res,
                                     std::span<const double> omega_grid,
                                     std::span<const double> power_over_pc_grid, Exec exec) {
    res.validate();
    if (omega_grid.empty() || power_over_pc_grid.empty()) {
        throw Error(ErrorCode::kDomain, kModule, "diagram grids must be non-empty");
    }
    if (!is_strictly_ascending(omega_grid) || !is_strictly_ascending(power_over_pc_grid)) {
        throw Error(ErrorCode::kDomain, kModule, "diagram grids must be strictly ascending");
    }
    BistabilityDiagram diagram;
    diagram.omega_axis.assign(omega_grid.begin(), omega_grid.end());
    diagram.power_axis.assign(power_over_pc_grid.begin(), power_over_pc_grid.end());
    const std::size_t rows = omega_grid.size();
    const std::size_t cols = power_over_pc_grid.size();
    diagram.region.assign(rows * cols, Region::kLow);
    diagram.p_plus.assign(rows, std::numeric_limits<double>::quiet_NaN());
    diagram.p_minus.assign(rows, std::numeric_limits<double>::quiet_NaN());

    const double eps2_c = critical_amplitude_squared(res);
    for_each_index(exec, rows * cols, [&](std::size_t cell) {
        const std::size_t i = cell / cols;
        const std::size_t j = cell % cols;
        const auto drive = drive_at(res, omega_grid[i], power_over_pc_grid[j]);
        const auto solutions = solve_steady_states(res, drive);
        int stable = 0;
        Branch single = Branch::kLow;
        for (const auto &s : solutions) {
            if (!s.stable) continue;
            ++stable;
            single = s.branch;
        }
        Region r = Region::kLow;
        if (stable >= 2) r = Region::kBistable;
        else if (single == Branch::kHigh) r = Region::kHigh;
        diagram.region[cell] = r;
    });
    for_each_index(exec, rows, [&](std::size_t i) {
        try {
            const auto t = bifurcation_thresholds(res, omega_grid[i]);
            diagram.p_plus[i] = t.eps2_plus / eps2_c;
            diagram.p_minus[i] = t.eps2_minus / eps2_c;
        } catch (const Error &e) {
            if (e.code() != ErrorCode::kNoBistability) throw;
        }
    });
    return diagram;
}

}  // namespace knr
