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

#include "knr/error.hpp"

#include <atomic>
#include <iostream>

namespace knr {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kDomain: return "domain";
        case ErrorCode::kLinearResonator: return "linear_resonator";
        case ErrorCode::kNoBistability: return "no_bistability";
        case ErrorCode::kContract: return "contract";
        case ErrorCode::kLinearizationInvalid: return "linearization_invalid";
        case ErrorCode::kAmbiguity: return "ambiguity";
        case ErrorCode::kTruncation: return "truncation";
        case ErrorCode::kSolver: return "solver";
        case ErrorCode::kConvergence: return "convergence";
        case ErrorCode::kDegenerateRates: return "degenerate_rates";
        case ErrorCode::kFit: return "fit";
        case ErrorCode::kUnphysicalRatio: return "unphysical_ratio";
        case ErrorCode::kNoBound: return "no_bound";
        case ErrorCode::kDivergence: return "divergence";
        case ErrorCode::kConfig: return "config";
    }
    return "unknown";
}

Error::Error(ErrorCode code, std::string_view module, const std::string &message)
    : std::runtime_error(message), code_(code), module_(module) {}

std::string Error::qualified() const {
    std::string out = module_;
    out += '.';
    out += error_code_name(code_);
    out += ": ";
    out += what();
    return out;
}

namespace {
std::atomic<bool> g_muted{false};
}

void warn(std::string_view module, std::string_view message) {
    if (g_muted.load(std::memory_order_relaxed)) return;
    std::cerr << "warning [" << module << "]: " << message << '\n';
}

void set_warnings_muted(bool muted) { g_muted.store(muted, std::memory_order_relaxed); }

}  // namespace knr
