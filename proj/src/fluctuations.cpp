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

#include "knr/fluctuations.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "knr/error.hpp"
#include "knr/grid.hpp"

namespace knr {

namespace {
constexpr std::string_view kModule = "fluctuations";

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }
}  // namespace

std::string_view teff_convention_name(TeffConvention c) {
    return c == TeffConvention::kDressedLab ? "dressed-lab" : "quasienergy";
}

double bose_temperature(double n_tilde, double omega_ref) {
    if (n_tilde <= 0.0) return 0.0;
    return kHbar * std::abs(omega_ref) / (kBoltzmann * std::log1p(1.0 / n_tilde));
}

double effective_temperature(const LinearizedMode &mode, TeffConvention convention) {
    const double omega_ref = convention == TeffConvention::kDressedLab
                                 ? mode.omega_c_tilde
                                 : std::abs(mode.delta_tilde);
    return bose_temperature(mode.n_tilde, omega_ref);
}

LinearizedMode linearize(const ResonatorParams &res, const DriveParams &drive,
                         const SteadyStateSolution &solution, TeffConvention convention) {
    if (!solution.stable) {
        throw Error(ErrorCode::kContract, kModule, "cannot linearize around an unstable solution");
    }
    const double detuning = pump_detuning(res, drive.omega_p);
    const double n = std::norm(solution.alpha);
    const auto drift = drift_coefficients(res, detuning, n);
    if (!(drift.B > 1e-10 * drift.A * drift.A)) {
        std::ostringstream msg;
        msg << "B = " << drift.B << " (A = " << drift.A
            << "): fluctuations are parametrically amplified, no real dressed frequency";
        throw Error(ErrorCode::kLinearizationInvalid, kModule, msg.str());
    }

    LinearizedMode m;
    m.A = drift.A;
    m.B = drift.B;
    m.delta_tilde = sign_of(drift.A) * std::sqrt(drift.B);
    m.omega_c_tilde = drive.omega_p + m.delta_tilde;
    m.r = 0.5 * std::atanh(drift.C / std::abs(drift.A));
    m.mu = std::cosh(m.r);
    const double s = std::sinh(m.r);
    m.n_tilde = s * s;

    const double theta_c = std::arg(solution.alpha);
    const int pairing_sign = sign_of(res.kerr + 2.0 * res.kerr2 * n);
    m.theta = sign_of(m.delta_tilde) == pairing_sign ? theta_c : theta_c + 0.5 * std::numbers::pi;
    m.nu = std::polar(std::sinh(m.r), 2.0 * m.theta);

    m.alpha = solution.alpha;
    m.n = n;
    m.kappa = res.kappa;
    m.omega_p = drive.omega_p;
    m.convention = convention;
    m.t_eff = effective_temperature(m, convention);
    return m;
}

LinearizedMode mode_from_occupation(double delta_tilde, double n_tilde, double kappa,
                                    double omega_p) {
    if (!(n_tilde >= 0.0) || !(kappa > 0.0) || delta_tilde == 0.0) {
        throw Error(ErrorCode::kDomain, kModule, "need n_tilde >= 0, kappa > 0, delta_tilde != 0");
    }
    LinearizedMode m;
    m.r = std::asinh(std::sqrt(n_tilde));
    m.mu = std::cosh(m.r);
    m.nu = std::sinh(m.r);
    m.n_tilde = n_tilde;
    m.delta_tilde = delta_tilde;
    m.A = delta_tilde * std::cosh(2.0 * m.r);
    m.B = delta_tilde * delta_tilde;
    m.omega_c_tilde = omega_p + delta_tilde;
    m.kappa = kappa;
    m.omega_p = omega_p;
    m.t_eff = effective_temperature(m, m.convention);
    return m;
}

std::vector<HeatingRow> heating_sweep(const ResonatorParams &res, double reduced,
                                      std::span<const double> power_grid_watts, Branch branch,
                                      TeffConvention convention, Exec exec) {
    res.validate();
    if (branch == Branch::kUnstable) {
        throw Error(ErrorCode::kDomain, kModule, "heating sweep needs branch L or H");
    }
    if (power_grid_watts.empty() || !is_strictly_ascending(power_grid_watts)) {
        throw Error(ErrorCode::kDomain, kModule, "power grid must be non-empty and ascending");
    }
    const double omega_p = pump_frequency_from_reduced(res, reduced);
    double p_plus = std::numeric_limits<double>::quiet_NaN();
    try {
        p_plus = bifurcation_thresholds(res, reduced).p_plus;
    } catch (const Error &e) {
        if (e.code() != ErrorCode::kNoBistability && e.code() != ErrorCode::kLinearResonator) throw;
    }

    std::vector<HeatingRow> rows(power_grid_watts.size());
    for_each_index(exec, rows.size(), [&](std::size_t i) {
        HeatingRow &row = rows[i];
        row.p_watts = power_grid_watts[i];
        row.p_over_pplus = row.p_watts / p_plus;
        row.branch = branch;
        const DriveParams drive{omega_p, power_to_amplitude(res, omega_p, row.p_watts)};
        const auto solutions = solve_steady_states(res, drive);
        const auto picked = find_branch(solutions, branch);
        if (!picked) return;
        try {
            const auto mode = linearize(res, drive, *picked, convention);
            row.valid = true;
            row.n = mode.n;
            row.delta_tilde = mode.delta_tilde;
            row.n_tilde = mode.n_tilde;
            row.t_eff = mode.t_eff;
        } catch (const Error &e) {
            if (e.code() != ErrorCode::kLinearizationInvalid) throw;
            row.n = picked->n;
        }
    });
    return rows;
}

}  // namespace knr
