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

#include "knr/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace knr::poly {

double evaluate(std::span<const double> coeffs, double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::complex<double> evaluate(std::span<const double> coeffs, std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::vector<double> derivative(std::span<const double> coeffs) {
    if (coeffs.size() <= 1) return {0.0};
    std::vector<double> out(coeffs.size() - 1);
    for (std::size_t i = 1; i < coeffs.size(); ++i) out[i - 1] = static_cast<double>(i) * coeffs[i];
    return out;
}

double magnitude(std::span<const double> coeffs, double x) {
    double acc = 0.0;
    const double ax = std::abs(x);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * ax + std::abs(*it);
    return acc;
}

namespace {

// Parlett-Reinsch balancing with radix-2 scaling (similarity transform, so
// eigenvalues are unchanged and exactly representable).
void balance(Eigen::MatrixXd &m) {
    const Eigen::Index n = m.rows();
    constexpr double kRadix = 2.0;
    bool converged = false;
    while (!converged) {
        converged = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(m(j, i));
                r += std::abs(m(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / kRadix, f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= kRadix;
                c *= kRadix * kRadix;
            }
            g = r * kRadix;
            while (c > g) {
                f /= kRadix;
                c /= kRadix * kRadix;
            }
            if ((c + r) / f < 0.95 * s) {
                converged = false;
                m.row(i) /= f;
                m.col(i) *= f;
            }
        }
    }
}

}  // namespace

std::vector<std::complex<double>> roots(std::span<const double> coeffs) {
    std::size_t hi = coeffs.size();
    while (hi > 0 && coeffs[hi - 1] == 0.0) --hi;
    if (hi <= 1) return {};
    std::size_t lo = 0;
    while (coeffs[lo] == 0.0) ++lo;

    std::vector<std::complex<double>> out(lo, 0.0);
    const std::size_t degree = hi - 1 - lo;
    if (degree == 0) return out;

    const double lead = coeffs[hi - 1];
    if (degree == 1) {
        out.emplace_back(-coeffs[lo] / lead, 0.0);
        return out;
    }

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (std::size_t i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < degree; ++i) companion(i, degree - 1) = -coeffs[lo + i] / lead;
    balance(companion);

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    const auto &ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) out.push_back(ev[i]);
    return out;
}

double polish_real_root(std::span<const double> coeffs, double x) {
    auto eval = [&](long double t, long double &dp) {
        long double p = 0.0L;
        dp = 0.0L;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            dp = dp * t + p;
            p = p * t + static_cast<long double>(*it);
        }
        return p;
    };
    long double t = x;
    long double dp = 0.0L;
    long double p = eval(t, dp);
    for (int iter = 0; iter < 60 && p != 0.0L; ++iter) {
        if (dp == 0.0L) break;
        const long double next = t - p / dp;
        long double dnext = 0.0L;
        const long double pnext = eval(next, dnext);
        if (!(std::fabs(pnext) < std::fabs(p))) break;
        t = next;
        p = pnext;
        dp = dnext;
    }
    return static_cast<double>(t);
}

std::vector<double> nonnegative_real_roots(std::span<const double> coeffs, double imag_tol,
                                           double dedup_rel) {
    std::vector<double> candidates;
    for (const auto &z : roots(coeffs)) {
        const double scale = std::max(1.0, std::abs(z));
        if (std::abs(z.imag()) > imag_tol * scale) continue;
        double x = z.real() == 0.0 ? 0.0 : polish_real_root(coeffs, z.real());
        if (x < 0.0) {
            if (x > -1e-12 * scale) x = 0.0;
            else continue;
        }
        candidates.push_back(x);
    }
    std::sort(candidates.begin(), candidates.end());
    std::vector<double> out;
    for (double x : candidates) {
        if (!out.empty()) {
            const double ref = std::max(std::abs(out.back()), std::abs(x));
            if (std::abs(x - out.back()) <= dedup_rel * ref) continue;
        }
        out.push_back(x);
    }
    return out;
}

}  // namespace knr::poly
