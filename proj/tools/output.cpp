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


#include "output.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace knr::cli {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

void CsvDocument::add_meta(std::string key, std::string value) {
    meta_.emplace_back(std::move(key), std::move(value));
}

void CsvDocument::set_header(std::vector<std::string> columns) { header_ = std::move(columns); }

void CsvDocument::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw std::logic_error("CSV row width does not match header");
    rows_.push_back(std::move(cells));
}

std::string CsvDocument::str() const {
    std::string out;
    for (const auto &[k, v] : meta_) out += "# " + k + ": " + v + "\n";
    auto line = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header_);
    for (const auto &row : rows_) line(row);
    return out;
}

void write_files(const std::string &dir, const std::map<std::string, std::string> &files) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    for (const auto &[name, content] : files) {
        const fs::path target = fs::path(dir) / name;
        const fs::path temp = fs::path(dir) / (name + ".partial");
        {
            std::ofstream out(temp, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cannot write " + temp.string());
            out << content;
            if (!out) throw std::runtime_error("cannot write " + temp.string());
        }
        fs::rename(temp, target);
    }
}

}  // namespace knr::cli
