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
#include <random>

#include "doctest.h"
#include "knr/polynomial.hpp"
#include "support.hpp"

using namespace knr;

namespace {
std::vector<double> from_roots(const std::vector<double> &roots) {
    std::vector<double> p{1.0};
    for (double r : roots) {
        std::vector<double> next(p.size() + 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            next[i + 1] += p[i];
            next[i] -= r * p[i];
        }
        p = next;
    }
    return p;
}
}  // namespace

TEST_CASE("evaluate and derivative") {
    const std::vector<double> p{1.0, -3.0, 0.0, 2.0};  // 2x^3 - 3x + 1
    CHECK(poly::evaluate(p, 2.0) == doctest::Approx(11.0));
    const auto d = poly::derivative(p);
    REQUIRE(d.size() == 3);
    CHECK(d[0] == -3.0);
    CHECK(d[1] == 0.0);
    CHECK(d[2] == 6.0);
    CHECK(std::abs(poly::evaluate(p, std::complex<double>(0.0, 1.0)) - std::complex<double>(1.0, -5.0)) < 1e-15);
}

TEST_CASE("roots of a polynomial with known roots") {
    const auto p = from_roots({1.0, 2.0, 3.0});
    const auto r = poly::nonnegative_real_roots(p);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r[1] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r[2] == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(poly::roots(p).size() == 3);
}

TEST_CASE("negative and complex roots are excluded") {
    // (x + 1)(x^2 + 1)(x - 0.5)
    const std::vector<double> p{-0.5, 0.5, 0.5, 0.5, 1.0};
    const auto r = poly::nonnegative_real_roots(p);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("zero roots and trailing zeros") {
    const std::vector<double> p{0.0, 0.0, -1.0, 1.0, 0.0};  // x^3 - x^2
    const auto r = poly::nonnegative_real_roots(p);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == 0.0);
    CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(poly::roots(std::vector<double>{3.0}).empty());
}

TEST_CASE("double roots are merged") {
    const auto p = from_roots({2.0, 2.0, 5.0});
    const auto r = poly::nonnegative_real_roots(p, 1e-6);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("polish improves a perturbed root") {
    const auto p = from_roots({0.1, 7.0, 40.0});
    const double x = poly::polish_real_root(p, 7.0 + 1e-5);
    CHECK(std::abs(x - 7.0) < 1e-13);
    CHECK(poly::magnitude(p, 1.0) > 0.0);
}

TEST_CASE("real root counts agree with a Sturm sequence on random quintics") {
    std::mt19937_64 rng(20261015);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> count(0, 5);
    for (int trial = 0; trial < 300; ++trial) {
        // Well separated positive roots plus complex pairs keep the count unambiguous.
        const int k = count(rng);
        std::vector<double> roots;
        for (int i = 0; i < k; ++i) roots.push_back(0.5 + 1.5 * i + 0.4 * u(rng));
        auto p = from_roots(roots);
        for (int i = k; i + 1 < 5; i += 2) {
            const double re = 2.0 * u(rng), im = 0.5 + std::abs(u(rng));
            std::vector<double> q{re * re + im * im, -2.0 * re, 1.0};
            std::vector<double> next(p.size() + 2, 0.0);
            for (std::size_t a = 0; a < p.size(); ++a)
                for (std::size_t b = 0; b < 3; ++b) next[a + b] += p[a] * q[b];
            p = next;
        }
        std::vector<long double> pl(p.begin(), p.end());
        const int sturm = knr::testing::sturm_count(pl, 0.0L, 1e3L);
        CHECK(static_cast<int>(poly::nonnegative_real_roots(p).size()) == sturm);
        CHECK(sturm == k);
    }
}
