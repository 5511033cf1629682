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


#include <algorithm>
#include <vector>

#include "knr/grid.hpp"
#include "support.hpp"

namespace knr::testing {

namespace {

using Poly = std::vector<long double>;

void trim(Poly &p) {
    long double scale = 0.0L;
    for (auto c : p) scale = std::max(scale, std::abs(c));
    while (p.size() > 1 && std::abs(p.back()) <= 1e-14L * scale) p.pop_back();
}

long double eval(const Poly &p, long double x) {
    long double v = 0.0L;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

Poly derivative(const Poly &p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(static_cast<long double>(i) * p[i]);
    if (d.empty()) d.push_back(0.0L);
    return d;
}

// Remainder of a / b.
Poly remainder(Poly a, const Poly &b) {
    while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0.0L)) {
        const long double f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        if (a.empty()) {
            a.push_back(0.0L);
            break;
        }
    }
    trim(a);
    return a;
}

int sign_changes(const std::vector<Poly> &chain, long double x) {
    int changes = 0;
    int last = 0;
    for (const auto &p : chain) {
        const long double v = eval(p, x);
        const int s = (v > 0) - (v < 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace

int sturm_count(Poly p, long double lo, long double hi) {
    trim(p);
    std::vector<Poly> chain{p, derivative(p)};
    trim(chain[1]);
    while (chain.back().size() > 1 || chain.back()[0] != 0.0L) {
        Poly r = remainder(chain[chain.size() - 2], chain.back());
        for (auto &c : r) c = -c;
        if (r.size() == 1 && r[0] == 0.0L) break;
        chain.push_back(r);
        if (r.size() == 1) break;
    }
    return sign_changes(chain, lo) - sign_changes(chain, hi);
}

QubitParams weak_probe_qubit() { return {1000.0, 1.0, 0.05, 0.0, 0.0}; }

SpectrumTrace weak_probe_spectrum(const LinearizedMode &mode) {
    const double reach = 3.0 * std::abs(mode.delta_tilde);
    const auto count = static_cast<std::size_t>(std::lround(2.0 * reach / 0.1)) + 1;
    const auto grid = linear_grid(-reach, reach, count);
    return qubit_spectrum_analytic(mode, weak_probe_qubit(), kWeakProbeGeff, kWeakProbeAlphaS, grid);
}

double round_trip_occupation(double nu2, double delta_tilde) {
    const auto mode = mode_from_occupation(delta_tilde, nu2, 1.0, 1000.0);
    const auto trace = weak_probe_spectrum(mode);
    FitOptions opts;
    opts.initial_fwhm = 1.0;
    const auto fit = fit_three_lorentzians(trace, {-delta_tilde, 0.0, delta_tilde}, opts);
    return thermometry(fit, mode).n_tilde;
}

}  // namespace knr::testing
