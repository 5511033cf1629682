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

#include <cstddef>
#include <span>
#include <vector>

namespace knr {

/// count points from first to last inclusive; count == 1 yields {first}.
std::vector<double> linear_grid(double first, double last, std::size_t count);

/// Geometrically spaced points, first and last > 0.
std::vector<double> log_grid(double first, double last, std::size_t count);

bool is_strictly_ascending(std::span<const double> values);

}  // namespace knr
