// Copyright 2026 The kerrsplit Authors
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

#ifndef KERRSPLIT_OUTPUT_HPP_
#define KERRSPLIT_OUTPUT_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace kerrsplit {

inline constexpr std::string_view kToolName = "kerrsplit";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum class OutputFormat { kCsv, kJson };

/// Decimal, 12 significant digits, no negative zero.
std::string format_number(double value);

/// `value` rounded to the 12 digits format_number would print.
double round_to_printed(double value);

struct Column {
    std::string name;
    bool integer = false;
};

/// A flat numeric table. CSV carries only the header and rows; JSON adds
/// the metadata object and mirrors each row as an object keyed by column.
struct Table {
    std::vector<Column> columns;
    std::vector<std::vector<double>> rows;
    nlohmann::json metadata = nlohmann::json::object();

    std::string render(OutputFormat format) const;
};

/// Writes `content` verbatim (binary mode, so output is byte-stable).
void write_text_file(const std::filesystem::path &path, std::string_view content);

std::string_view extension(OutputFormat format);

}  // namespace kerrsplit

#endif  // KERRSPLIT_OUTPUT_HPP_
