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

// Parameter sets and independent reference helpers shared by the test suites.

#include <cmath>
#include <complex>

#include "knr/fluctuations.hpp"
#include "knr/model.hpp"
#include "knr/spectroscopy.hpp"

namespace knr::testing {

/// kappa = 1 units with the sample-A ratios K/kappa and K'/kappa.
inline ResonatorParams scaled() { return {1000.0, -0.0625, -1.25e-4, 1.0}; }

/// Sample A in rad/s.
inline ResonatorParams sample_a() {
    return {hz_to_angular(6.4535e9), hz_to_angular(-625e3), hz_to_angular(-1.25e3), hz_to_angular(10e6)};
}

inline ResonatorParams pure_kerr() { return {1000.0, -0.0625, 0.0, 1.0}; }

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

/// Number of real roots of a real polynomial in [lo, hi] from a Sturm
/// sequence, counted independently of any eigenvalue solver. Coefficients are
/// lowest degree first.
int sturm_count(std::vector<long double> p, long double lo, long double hi);

/// Weak-probe qubit used for sideband thermometry in kappa = 1 units.
QubitParams weak_probe_qubit();
inline constexpr double kWeakProbeGeff = 0.1;
inline constexpr double kWeakProbeAlphaS = 0.02;

/// Analytic spectrum of a mode with dressed detuning delta_tilde (kappa = 1)
/// and occupation nu2, sampled with ten points per linewidth over +-3 delta_tilde.
SpectrumTrace weak_probe_spectrum(const LinearizedMode &mode);

/// n~ recovered by fitting and thermometry from weak_probe_spectrum.
double round_trip_occupation(double nu2, double delta_tilde);

}  // namespace knr::testing
