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

// Real-coefficient polynomials, coefficients stored lowest degree first.

#include <complex>
#include <span>
#include <vector>

namespace knr::poly {

double evaluate(std::span<const double> coeffs, double x);
std::complex<double> evaluate(std::span<const double> coeffs, std::complex<double> z);

std::vector<double> derivative(std::span<const double> coeffs);

/// sum_i |c_i| |x|^i, the natural scale against which a residual is judged.
double magnitude(std::span<const double> coeffs, double x);

/// All complex roots, from the eigenvalues of the balanced companion matrix.
/// Exact zero roots (vanishing low-order coefficients) are returned as 0.
/// Trailing zero high-order coefficients are dropped; an identically zero or
/// constant polynomial has no roots.
std::vector<std::complex<double>> roots(std::span<const double> coeffs);

/// Newton iteration in extended precision starting at x, stopping when the
/// residual no longer decreases. Returns the polished root.
double polish_real_root(std::span<const double> coeffs, double x);

/// Real roots >= 0 sorted ascending. A companion eigenvalue is kept when its
/// imaginary part is below imag_tol * max(1, |z|); kept roots are polished and
/// merged when closer than dedup_rel relative.
std::vector<double> nonnegative_real_roots(std::span<const double> coeffs,
                                           double imag_tol = 1e-7,
                                           double dedup_rel = 1e-8);

}  // namespace knr::poly
