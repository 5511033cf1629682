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

// Quadratic fluctuations around a driven steady state. Writing a_bar = alpha + a
// and keeping terms quadratic in a gives
//
//   H_l = A a+a + G a^2 + G* a+^2,   G = (K/2 + K'|alpha|^2) alpha*^2,
//
// which the squeezing transformation a~ = mu a + nu a+ (mu = cosh r,
// nu = exp(2i theta) sinh r) maps onto delta_tilde a~+ a~. Under cavity damping
// the dressed mode relaxes to a thermal state with <n~> = |nu|^2.

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "knr/execution.hpp"
#include "knr/model.hpp"
#include "knr/steady_state.hpp"

namespace knr {

/// Reference frequency of the Bose factor that defines T_eff: the dressed
/// mode's lab frequency omega_c~ (default) or the quasienergy |delta_tilde|.
enum class TeffConvention { kDressedLab, kQuasienergy };
std::string_view teff_convention_name(TeffConvention c);  // "dressed-lab" | "quasienergy"

struct LinearizedMode {
    double A = 0.0;              // rad/s
    double B = 0.0;              // (rad/s)^2
    double delta_tilde = 0.0;    // sign(A) sqrt(B)
    double omega_c_tilde = 0.0;  // omega_p + delta_tilde
    double r = 0.0;
    double theta = 0.0;
    double mu = 1.0;
    std::complex<double> nu{0.0, 0.0};
    double n_tilde = 0.0;        // |nu|^2 = sinh^2 r
    double t_eff = 0.0;          // kelvin
    TeffConvention convention = TeffConvention::kDressedLab;

    // Operating point the mode was built around.
    std::complex<double> alpha{0.0, 0.0};
    double n = 0.0;
    double kappa = 0.0;
    double omega_p = 0.0;
};

/// Throws kContract for an unstable solution and kLinearizationInvalid when
/// B <= 1e-10 A^2 (no real dressed frequency).
LinearizedMode linearize(const ResonatorParams &res, const DriveParams &drive,
                         const SteadyStateSolution &solution,
                         TeffConvention convention = TeffConvention::kDressedLab);

/// Mode with prescribed dressed detuning and occupation (r, mu, nu consistent,
/// theta = 0). Used to probe spectroscopy formulas away from a concrete drive.
LinearizedMode mode_from_occupation(double delta_tilde, double n_tilde, double kappa,
                                    double omega_p = 0.0);

/// hbar omega_ref / (k_B ln(1 + 1/n)); exactly 0 for n = 0.
double bose_temperature(double n_tilde, double omega_ref);

double effective_temperature(const LinearizedMode &mode, TeffConvention convention);

struct HeatingRow {
    double p_watts = 0.0;
    double p_over_pplus = 0.0;  // NaN when the detuning has no bistable window
    bool valid = false;         // branch present and linearizable
    Branch branch = Branch::kHigh;
    double n = 0.0;
    double delta_tilde = 0.0;
    double n_tilde = 0.0;
    double t_eff = 0.0;
};

/// One row per grid point (invalid rows keep their power and are flagged).
std::vector<HeatingRow> heating_sweep(const ResonatorParams &res, double reduced,
                                      std::span<const double> power_grid_watts, Branch branch,
                                      TeffConvention convention = TeffConvention::kDressedLab,
                                      Exec exec = Exec::kParallel);

}  // namespace knr
