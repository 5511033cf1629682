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

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace knr::cli {

/// Shortest round-trip decimal ("nan", "inf", "-inf" for non-finite values).
std::string format_number(double value);

class CsvDocument {
  public:
    void add_meta(std::string key, std::string value);
    void set_header(std::vector<std::string> columns);
    void add_row(std::vector<std::string> cells);
    std::string str() const;

  private:
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes every file into dir (created if needed) only after all contents
/// are known, so a failed run leaves no partial output behind.
void write_files(const std::string &dir, const std::map<std::string, std::string> &files);

}  // namespace knr::cli
