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

#include <stdexcept>
#include <string>
#include <string_view>

namespace knr {

enum class ErrorCode {
    kDomain,
    kLinearResonator,
    kNoBistability,
    kContract,
    kLinearizationInvalid,
    kAmbiguity,
    kTruncation,
    kSolver,
    kConvergence,
    kDegenerateRates,
    kFit,
    kUnphysicalRatio,
    kNoBound,
    kDivergence,
    kConfig,
};

/// Stable, module-qualified identifier such as "steadystate.no_bistability".
std::string_view error_code_name(ErrorCode code);

/// All library failures are reported through this exception. The code is
/// what callers (and the CLI exit-status mapping) dispatch on; the message is
/// for humans.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string_view module, const std::string &message);

    ErrorCode code() const noexcept { return code_; }
    const std::string &module() const noexcept { return module_; }

    /// "<module>.<code>: <message>"
    std::string qualified() const;

  private:
    ErrorCode code_;
    std::string module_;
};

/// Non-fatal diagnostics (regime warnings). Written to stderr unless muted.
void warn(std::string_view module, std::string_view message);
void set_warnings_muted(bool muted);

}  // namespace knr
