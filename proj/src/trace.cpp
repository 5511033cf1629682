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


#include "knr/trace.hpp"

#include <algorithm>
#include <cmath>

#include "knr/error.hpp"
#include "knr/grid.hpp"

namespace knr {

void validate_trace(const SpectrumTrace &trace) {
    if (trace.x.size() != trace.y.size() || trace.x.empty()) {
        throw Error(ErrorCode::kDomain, "trace", "trace needs matching, non-empty x and y");
    }
    if (!is_strictly_ascending(trace.x)) {
        throw Error(ErrorCode::kDomain, "trace", "trace x must be strictly ascending");
    }
    for (double v : trace.y) {
        if (!std::isfinite(v)) throw Error(ErrorCode::kDomain, "trace", "trace y must be finite");
    }
}

SpectrumTrace fold_trace(const SpectrumTrace &trace) {
    validate_trace(trace);
    const std::size_t n = trace.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double a = trace.x[i];
        const double b = trace.x[n - 1 - i];
        if (std::abs(a + b) > 1e-9 * std::max(std::abs(a), std::abs(b)) + 1e-300) {
            throw Error(ErrorCode::kDomain, "trace", "folding needs a grid symmetric about zero");
        }
    }
    SpectrumTrace out;
    out.x_label = "|" + trace.x_label + "|";
    out.y_label = trace.y_label;
    out.meta = trace.meta;
    for (std::size_t i = n / 2; i < n; ++i) {
        const std::size_t mirror = n - 1 - i;
        out.x.push_back(trace.x[i]);
        out.y.push_back(mirror == i ? 2.0 * trace.y[i] : trace.y[i] + trace.y[mirror]);
    }
    return out;
}

double dominant_peak(const SpectrumTrace &trace) {
    validate_trace(trace);
    const auto it = std::max_element(trace.y.begin(), trace.y.end());
    const std::size_t i = static_cast<std::size_t>(it - trace.y.begin());
    if (i == 0 || i + 1 == trace.size()) return trace.x[i];
    const double x0 = trace.x[i - 1], x1 = trace.x[i], x2 = trace.x[i + 1];
    const double y0 = trace.y[i - 1], y1 = trace.y[i], y2 = trace.y[i + 1];
    // vertex of the parabola through the three points
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double curvature = (d12 - d01) / (x2 - x0);
    if (!(curvature < 0.0)) return x1;
    const double vertex = 0.5 * (x0 + x1) - d01 / (2.0 * curvature);
    return std::clamp(vertex, x0, x2);
}

std::vector<std::size_t> local_maxima(const SpectrumTrace &trace) {
    validate_trace(trace);
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < trace.size(); ++i) {
        if (trace.y[i] > trace.y[i - 1] && trace.y[i] > trace.y[i + 1]) out.push_back(i);
    }
    return out;
}

}  // namespace knr
