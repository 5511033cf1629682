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

// Qubit sideband spectroscopy of the dressed mode.
//
// The qubit sees the dressed mode through an effective coupling g_eff. In the
// frame of the Stark-shifted qubit line (delta = omega_stark - omega_q):
//
//   gamma_down = gamma_down''' + g_eff^2 [ (L(-delta) + L(delta)) |nu|^2 + L(-delta) ]
//   gamma_up   = gamma_up'''   + g_eff^2 [ (L(-delta) + L(delta)) |nu|^2 + L(delta)  ]
//   L(delta)   = (kappa/2) / (kappa^2/4 + (delta_tilde + delta)^2)
//
// so the Stokes line (|g,n~> -> |e,n~+1>) sits at omega_q = omega_stark +
// delta_tilde and the anti-Stokes line at omega_stark - delta_tilde.

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "knr/fluctuations.hpp"
#include "knr/model.hpp"
#include "knr/trace.hpp"

namespace knr {

/// chi = g0^2 / (omega_ge - omega_c). Throws kDivergence when omega_ge = omega_c.
double dispersive_shift(const QubitParams &qubit, const ResonatorParams &res);

/// omega_ge + 2 chi n.
double stark_shifted_frequency(const QubitParams &qubit, const ResonatorParams &res, double n);

struct SidebandRates {
    double gamma_up = 0.0;
    double gamma_down = 0.0;
};

SidebandRates sideband_rates(const LinearizedMode &mode, const QubitParams &qubit, double g_eff,
                             double delta);

/// Stationary excited population of the reduced qubit master equation at
/// delta = omega_stark - omega_q. Throws kDegenerateRates when gamma_up +
/// gamma_down = 0.
double qubit_excited_population(const LinearizedMode &mode, const QubitParams &qubit,
                                double g_eff, std::complex<double> alpha_s, double delta);

/// P(|1>) on a grid of x = omega_q - omega_stark (rad/s).
SpectrumTrace qubit_spectrum_analytic(const LinearizedMode &mode, const QubitParams &qubit,
                                      double g_eff, std::complex<double> alpha_s,
                                      std::span<const double> qubit_detuning_grid);

/// Offsets x = omega_q - omega_stark of the Stokes and anti-Stokes lines.
struct SidebandPositions {
    double stokes = 0.0;
    double anti_stokes = 0.0;
};
SidebandPositions sideband_positions(const LinearizedMode &mode);

/// |nu|^2 / (1 + |nu|^2). Warns when |delta_tilde| < 3 kappa.
double ratio_prediction(const LinearizedMode &mode);

struct LorentzianPeak {
    double center = 0.0;
    double fwhm = 0.0;
    double height = 0.0;
    bool present = true;
};

struct LorentzianFit {
    std::array<LorentzianPeak, 3> peaks;  // in the order of the expected centers
    double baseline = 0.0;
    double residual_rms = 0.0;
    bool converged = false;
    int iterations = 0;
};

struct FitOptions {
    double initial_fwhm = 0.0;    // required, typically kappa
    double xtol = 1e-8;           // relative parameter change
    int max_evaluations = 20000;
    double absence_sigma = 3.0;   // heights below this many residual rms are absent
};

/// Damped least squares (Levenberg-Marquardt) for baseline + three
/// Lorentzians. Throws kFit when the iteration cap is hit, reporting the best
/// parameters seen.
LorentzianFit fit_three_lorentzians(const SpectrumTrace &trace,
                                    const std::array<double, 3> &expected_centers,
                                    const FitOptions &options);

struct ThermometryResult {
    double r = 0.0;
    double n_tilde = 0.0;
    double t_eff = 0.0;
    int stokes = -1;       // index into fit.peaks
    int anti_stokes = -1;
};

/// r = anti-Stokes / Stokes height, n~ = r / (1 - r). Throws kUnphysicalRatio
/// for r >= 1 or a missing Stokes line.
ThermometryResult thermometry_from_heights(double anti_stokes_height, double stokes_height,
                                           double omega_ref);

/// Satellites are identified by sign(delta_tilde) of the reference mode, never
/// by height. T_eff uses the reference mode's frequency for the convention.
ThermometryResult thermometry(const LorentzianFit &fit, const LinearizedMode &reference,
                              TeffConvention convention = TeffConvention::kDressedLab);

/// nf / (1 - nf) with nf = noise_std / stokes_height. Throws kNoBound when
/// stokes_height <= noise_std.
double detection_limit(double noise_std, double stokes_height);

}  // namespace knr
