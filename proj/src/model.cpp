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

#include "knr/model.hpp"

#include <cmath>
#include <sstream>

#include "knr/error.hpp"

namespace knr {

namespace {
constexpr std::string_view kModule = "model";

void require(bool ok, const std::string &what) {
    if (!ok) throw Error(ErrorCode::kDomain, kModule, what);
}
}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
    require(watts > 0.0, "power must be positive to express in dBm");
    return 10.0 * std::log10(watts) + 30.0;
}

void ResonatorParams::validate() const {
    require(std::isfinite(omega_c) && omega_c > 0.0, "omega_c must be positive");
    require(std::isfinite(kappa) && kappa > 0.0, "kappa must be positive");
    require(std::isfinite(kerr) && std::isfinite(kerr2), "Kerr constants must be finite");
    const double q = quality();
    require(std::isfinite(q) && q > 1.0, "quality factor omega_c/kappa must exceed 1");
}

void DriveParams::validate() const {
    require(std::isfinite(omega_p) && omega_p > 0.0, "omega_p must be positive");
    require(std::isfinite(epsilon_p) && epsilon_p >= 0.0, "epsilon_p must be non-negative");
}

void QubitParams::validate() const {
    require(std::isfinite(omega_ge) && omega_ge > 0.0, "omega_ge must be positive");
    require(std::isfinite(g0) && g0 >= 0.0, "g0 must be non-negative");
    require(gamma_down_extra >= 0.0 && gamma_up_extra >= 0.0 && gamma_phi >= 0.0,
            "qubit rates must be non-negative");
}

std::optional<std::string> QubitParams::dispersive_warning(const ResonatorParams &res) const {
    const double detuning = std::abs(omega_ge - res.omega_c);
    if (g0 > 0.0 && detuning < 5.0 * g0) {
        std::ostringstream msg;
        msg << "qubit-resonator detuning is only " << detuning / g0
            << " g0; dispersive approximations are unreliable";
        return msg.str();
    }
    return std::nullopt;
}

double pump_detuning(const ResonatorParams &res, double omega_p) { return res.omega_c - omega_p; }

double reduced_detuning(const ResonatorParams &res, double omega_p) {
    return 2.0 * res.quality() * pump_detuning(res, omega_p) / res.omega_c;
}

double detuning_from_reduced(const ResonatorParams &res, double reduced) {
    return reduced * res.omega_c / (2.0 * res.quality());
}

double pump_frequency_from_reduced(const ResonatorParams &res, double reduced) {
    return res.omega_c - detuning_from_reduced(res, reduced);
}

double power_to_amplitude(const ResonatorParams &res, double omega_p, double power_watts) {
    require(power_watts >= 0.0, "pump power must be non-negative");
    require(omega_p > 0.0, "omega_p must be positive");
    return std::sqrt(res.kappa * power_watts / (kHbar * omega_p));
}

double amplitude_to_power(const ResonatorParams &res, double omega_p, double epsilon_p) {
    require(epsilon_p >= 0.0, "epsilon_p must be non-negative");
    return epsilon_p * epsilon_p * kHbar * omega_p / res.kappa;
}

double critical_power(const ResonatorParams &res, double omega_p) {
    if (res.kerr == 0.0) {
        throw Error(ErrorCode::kLinearResonator, kModule,
                    "K = 0: a linear resonator has no bifurcation");
    }
    return res.kappa * res.kappa * kHbar * omega_p / (3.0 * kSqrt3 * std::abs(res.kerr));
}

double critical_amplitude_squared(const ResonatorParams &res) {
    if (res.kerr == 0.0) {
        throw Error(ErrorCode::kLinearResonator, kModule,
                    "K = 0: a linear resonator has no bifurcation");
    }
    return res.kappa * res.kappa * res.kappa / (3.0 * kSqrt3 * std::abs(res.kerr));
}

DriveParams drive_at(const ResonatorParams &res, double reduced, double power_over_pc) {
    require(power_over_pc >= 0.0, "power ratio must be non-negative");
    DriveParams drive;
    drive.omega_p = pump_frequency_from_reduced(res, reduced);
    drive.epsilon_p = std::sqrt(power_over_pc * critical_amplitude_squared(res));
    return drive;
}

}  // namespace knr
