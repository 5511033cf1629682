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

// Physical parameters of the pumped Kerr resonator, its drive and the
// two-level probe. Every frequency and rate is stored as an angular quantity
// (rad/s); "_hz" values at the boundaries mean omega / 2pi.

#include <numbers>
#include <optional>
#include <string>

namespace knr {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K
inline constexpr double kSqrt3 = std::numbers::sqrt3;

constexpr double hz_to_angular(double hz) { return kTwoPi * hz; }
constexpr double angular_to_hz(double omega) { return omega / kTwoPi; }

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

struct ResonatorParams {
    double omega_c = 0.0;  // linear-regime resonance
    double kerr = 0.0;     // K, coefficient of (K/2) a+^2 a^2
    double kerr2 = 0.0;    // K', coefficient of (K'/3) a+^3 a^3
    double kappa = 0.0;    // energy damping rate

    double quality() const { return omega_c / kappa; }

    /// Throws kDomain when kappa, omega_c or Q are out of range.
    void validate() const;
};

/// The drive phase is fixed so that epsilon_p is real and non-negative.
struct DriveParams {
    double omega_p = 0.0;
    double epsilon_p = 0.0;

    void validate() const;
};

struct QubitParams {
    double omega_ge = 0.0;
    double g0 = 0.0;
    double gamma_down_extra = 0.0;
    double gamma_up_extra = 0.0;
    double gamma_phi = 0.0;

    void validate() const;

    /// Message when |omega_ge - omega_c| < 5 g0, nullopt otherwise.
    std::optional<std::string> dispersive_warning(const ResonatorParams &res) const;
};

/// Delta_p = omega_c - omega_p.
double pump_detuning(const ResonatorParams &res, double omega_p);

/// Omega = 2 Q Delta_p / omega_c.
double reduced_detuning(const ResonatorParams &res, double omega_p);

/// Inverse of reduced_detuning: Delta_p = Omega omega_c / (2 Q).
double detuning_from_reduced(const ResonatorParams &res, double reduced);
double pump_frequency_from_reduced(const ResonatorParams &res, double reduced);

/// epsilon_p = sqrt(kappa P / (hbar omega_p)).
double power_to_amplitude(const ResonatorParams &res, double omega_p, double power_watts);
double amplitude_to_power(const ResonatorParams &res, double omega_p, double epsilon_p);

/// P_c = kappa^2 hbar omega_p / (3 sqrt(3) |K|). Throws kLinearResonator for K = 0.
double critical_power(const ResonatorParams &res, double omega_p);

/// epsilon_p^2 at the critical power, kappa^3 / (3 sqrt(3) |K|); independent of omega_p.
double critical_amplitude_squared(const ResonatorParams &res);

/// Drive at reduced detuning Omega with P = ratio * P_c.
DriveParams drive_at(const ResonatorParams &res, double reduced, double power_over_pc);

}  // namespace knr
