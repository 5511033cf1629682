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

#include <string>
#include <utility>
#include <vector>

namespace knr {

/// Frequency-sampled curve. x is strictly ascending (rad/s); meta carries
/// key/value provenance that writers copy into file headers.
struct SpectrumTrace {
    std::vector<double> x;
    std::vector<double> y;
    std::string x_label = "x";
    std::string y_label = "y";
    std::vector<std::pair<std::string, std::string>> meta;

    std::size_t size() const { return x.size(); }
};

/// Throws kDomain unless x is strictly ascending, y finite and sizes agree.
void validate_trace(const SpectrumTrace &trace);

/// S(|x|) = S(x) + S(-x) on the non-negative half of a grid symmetric about 0.
SpectrumTrace fold_trace(const SpectrumTrace &trace);

/// Position of the global maximum refined by a three-point parabola.
double dominant_peak(const SpectrumTrace &trace);

/// Indices of strict local maxima (endpoints excluded).
std::vector<std::size_t> local_maxima(const SpectrumTrace &trace);

}  // namespace knr
