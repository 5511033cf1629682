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

#include "knr/grid.hpp"

#include <cmath>

#include "knr/error.hpp"

namespace knr {

std::vector<double> linear_grid(double first, double last, std::size_t count) {
    if (count == 0) throw Error(ErrorCode::kDomain, "grid", "grid needs at least one point");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = first;
        return out;
    }
    const double step = (last - first) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = first + step * static_cast<double>(i);
    out.back() = last;
    return out;
}

std::vector<double> log_grid(double first, double last, std::size_t count) {
    if (!(first > 0.0 && last > 0.0)) {
        throw Error(ErrorCode::kDomain, "grid", "logarithmic grid bounds must be positive");
    }
    auto exponents = linear_grid(std::log(first), std::log(last), count);
    for (double &e : exponents) e = std::exp(e);
    exponents.front() = first;
    if (count > 1) exponents.back() = last;
    return exponents;
}

bool is_strictly_ascending(std::span<const double> values) {
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) return false;
    }
    return true;
}

}  // namespace knr
