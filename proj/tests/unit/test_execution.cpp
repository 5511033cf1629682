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


#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "knr/execution.hpp"

using namespace knr;

TEST_CASE("serial and parallel loops fill identical slots") {
    std::vector<double> a(1000), b(1000);
    auto body = [](std::vector<double> &out) {
        return [&out](std::size_t i) { out[i] = std::sin(0.37 * static_cast<double>(i)) / (1.0 + i); };
    };
    for_each_index(Exec::kSerial, a.size(), body(a));
    for_each_index(Exec::kParallel, b.size(), body(b));
    CHECK(a == b);
}

TEST_CASE("every index runs once") {
    std::vector<std::atomic<int>> hits(257);
    for_each_index(Exec::kParallel, hits.size(), [&](std::size_t i) { hits[i]++; });
    for (const auto &h : hits) CHECK(h.load() == 1);
    for_each_index(Exec::kParallel, 0, [](std::size_t) { FAIL("no iterations expected"); });
}

TEST_CASE("the lowest failing index is rethrown") {
    for (Exec exec : {Exec::kSerial, Exec::kParallel}) {
        try {
            for_each_index(exec, 100, [](std::size_t i) {
                if (i == 17 || i == 80) throw std::runtime_error(std::to_string(i));
            });
            FAIL("expected an exception");
        } catch (const std::runtime_error &e) {
            CHECK(std::string(e.what()) == "17");
        }
    }
}

TEST_CASE("thread count") {
    set_thread_count(2);
    CHECK(thread_count() == 2);
    set_thread_count(0);
    CHECK(thread_count() >= 1);
}
