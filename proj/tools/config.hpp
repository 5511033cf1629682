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

// Run configuration. Frequencies are given either as "<name>_hz" (omega/2pi,
// converted to rad/s) or as "<name>" (angular, taken verbatim, which is how
// scaled kappa = 1 runs are written). Exactly one form per quantity.

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "knr/model.hpp"
#include "knr/steady_state.hpp"

namespace knr::cli {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 1;
    bool log = false;
};

enum class PowerUnit { kOverPc, kOverPplus, kDbm };

enum class AmplitudeKind { kNone, kEpsilon, kDbm, kOverPc };

struct OracleSettings {
    int truncation = 20;
    int max_dim = 64;
    double top_tol = 1e-6;
    int harmonics = 2;
    int steps_per_period = 64;
    double period_tol = 1e-5;
};

struct SpectroscopySettings {
    double g_eff = 0.0;
    std::complex<double> alpha_s{0.0, 0.0};
    double epsilon_s = 0.0;  // direct qubit drive used by the oracle
    std::optional<GridSpec> grid;  // omega_q - omega_stark, rad/s
    std::optional<double> fit_fwhm;
};

struct SpectrumSettings {
    std::optional<GridSpec> grid;  // omega - omega_p, rad/s
    bool absorption = false;
};

struct FitSettings {
    std::string input;
    std::array<double, 3> expected_centers{};
    double initial_fwhm = 0.0;
};

struct RunConfig {
    nlohmann::json document;
    std::string sha256;

    ResonatorParams resonator;
    std::optional<double> omega_p;
    AmplitudeKind amplitude_kind = AmplitudeKind::kNone;
    double amplitude_value = 0.0;
    std::optional<QubitParams> qubit;

    std::optional<GridSpec> omega_sweep;
    std::optional<GridSpec> power_sweep;
    PowerUnit power_unit = PowerUnit::kOverPc;
    Branch branch = Branch::kHigh;

    OracleSettings oracle;
    SpectroscopySettings spectroscopy;
    SpectrumSettings spectrum;
    std::optional<FitSettings> fit;

    /// Pump frequency; throws ConfigError when the drive block lacks one.
    double pump_frequency() const;
    /// Full drive; throws ConfigError when no amplitude is given.
    DriveParams drive() const;
};

/// Throws ConfigError with "line L, column C" for syntax errors.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string &path);

std::string sha256_hex(std::string_view data);

}  // namespace knr::cli
