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
#include <exception>
#include <mutex>

namespace knr {

/// Sweep kernels come in two flavours: an OpenMP data-parallel loop and the
/// plain serial loop it is checked against. Both write each grid point into
/// its own output slot, so results do not depend on the schedule.
enum class Exec { kSerial, kParallel };

/// Sets the OpenMP team size used by Exec::kParallel (0 keeps the default).
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, count). Exceptions thrown inside the parallel
/// region are captured and the one with the lowest index is rethrown.
template <typename Body>
void for_each_index(Exec exec, std::size_t count, Body &&body);

}  // namespace knr

#include "knr/detail/execution_impl.hpp"
