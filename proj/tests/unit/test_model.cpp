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


#include "doctest.h"
#include "knr/error.hpp"
#include "knr/model.hpp"
#include "support.hpp"

using namespace knr;
using knr::testing::sample_a;

TEST_CASE("unit conversions round trip") {
    CHECK(angular_to_hz(hz_to_angular(6.4535e9)) == doctest::Approx(6.4535e9).epsilon(1e-15));
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dbm_to_watts(-90.0) == doctest::Approx(1e-12).epsilon(1e-14));
    CHECK(watts_to_dbm(dbm_to_watts(-87.3)) == doctest::Approx(-87.3).epsilon(1e-13));
}

TEST_CASE("power and amplitude") {
    const auto res = sample_a();
    const double wp = hz_to_angular(6.434e9);
    CHECK(power_to_amplitude(res, wp, 0.0) == 0.0);
    const double p = 3.2e-15;
    const double eps = power_to_amplitude(res, wp, p);
    CHECK(eps == doctest::Approx(std::sqrt(res.kappa * p / (kHbar * wp))).epsilon(1e-14));
    CHECK(amplitude_to_power(res, wp, eps) == doctest::Approx(p).epsilon(1e-12));
    CHECK(power_to_amplitude(res, wp, 2.0 * p) == doctest::Approx(std::sqrt(2.0) * eps).epsilon(1e-12));
    CHECK_THROWS_AS(power_to_amplitude(res, wp, -1.0), Error);
}

TEST_CASE("critical power golden and scalings") {
    const auto res = sample_a();
    const double wp = hz_to_angular(6.434e9);
    const double pc = critical_power(res, wp);
    CHECK(pc == doctest::Approx(8.24812159333443e-16).epsilon(1e-12));
    // At P = P_c the amplitude reproduces kappa^3 / (3 sqrt 3 |K|).
    const double eps = power_to_amplitude(res, wp, pc);
    CHECK(eps * eps == doctest::Approx(critical_amplitude_squared(res)).epsilon(1e-12));

    auto half = res;
    half.kerr *= 0.5;
    CHECK(critical_power(half, wp) == doctest::Approx(2.0 * pc).epsilon(1e-13));
    auto wide = res;
    wide.kappa *= 2.0;
    CHECK(critical_power(wide, wp) == doctest::Approx(4.0 * pc).epsilon(1e-13));

    auto linear = res;
    linear.kerr = 0.0;
    try {
        critical_power(linear, wp);
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::kLinearResonator);
    }
}

TEST_CASE("reduced detuning") {
    const auto res = sample_a();
    const double wp = pump_frequency_from_reduced(res, 3.9);
    CHECK(reduced_detuning(res, wp) == doctest::Approx(3.9).epsilon(1e-12));
    // Omega = 3.9 with kappa/2pi = 10 MHz is Delta_p/2pi = 19.5 MHz.
    CHECK(angular_to_hz(pump_detuning(res, wp)) == doctest::Approx(19.5e6).epsilon(1e-12));
    CHECK(detuning_from_reduced(res, 2.0) == doctest::Approx(res.kappa).epsilon(1e-15));
}

TEST_CASE("parameter validation") {
    ResonatorParams bad{1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(bad.validate(), Error);
    ResonatorParams low_q{1.0, 0.0, 0.0, 2.0};
    CHECK_THROWS_AS(low_q.validate(), Error);
    DriveParams negative{1.0, -0.1};
    CHECK_THROWS_AS(negative.validate(), Error);
    QubitParams q{hz_to_angular(5.718e9), hz_to_angular(44e6), -1.0, 0.0, 0.0};
    CHECK_THROWS_AS(q.validate(), Error);
}

TEST_CASE("dispersive warning") {
    const auto res = sample_a();
    QubitParams far{hz_to_angular(5.718e9), hz_to_angular(44e6), 0.0, 0.0, 0.0};
    CHECK_FALSE(far.dispersive_warning(res).has_value());
    QubitParams near{res.omega_c + hz_to_angular(100e6), hz_to_angular(44e6), 0.0, 0.0, 0.0};
    CHECK(near.dispersive_warning(res).has_value());
}

TEST_CASE("drive_at places the drive on the requested point") {
    const auto res = knr::testing::scaled();
    const auto d = drive_at(res, 3.9, 2.5);
    CHECK(reduced_detuning(res, d.omega_p) == doctest::Approx(3.9).epsilon(1e-12));
    CHECK(d.epsilon_p * d.epsilon_p / critical_amplitude_squared(res) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("error codes are module qualified") {
    const Error e(ErrorCode::kNoBistability, "steadystate", "x");
    CHECK(e.qualified().find("steadystate.") == 0);
    CHECK(error_code_name(ErrorCode::kTruncation).size() > 0);
}
