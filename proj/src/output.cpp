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

#include "kerrsplit/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace kerrsplit {

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    if (value == 0.0) {
        return "0";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

double round_to_printed(double value) {
    if (!std::isfinite(value)) {
        return value;
    }
    return std::strtod(format_number(value).c_str(), nullptr);
}

std::string Table::render(OutputFormat format) const {
    if (format == OutputFormat::kCsv) {
        std::string out;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out += (c ? "," : "") + columns[c].name;
        }
        out += '\n';
        for (const auto &row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) {
                    out += ',';
                }
                out += format_number(row[c]);
            }
            out += '\n';
        }
        return out;
    }
    nlohmann::ordered_json doc;
    doc["metadata"] = nlohmann::ordered_json::parse(metadata.dump());
    auto &data = doc["data"] = nlohmann::ordered_json::array();
    for (const auto &row : rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size() && c < columns.size(); ++c) {
            if (columns[c].integer) {
                obj[columns[c].name] = static_cast<long long>(std::llround(row[c]));
            } else {
                obj[columns[c].name] = round_to_printed(row[c]);
            }
        }
        data.push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path &path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

std::string_view extension(OutputFormat format) {
    return format == OutputFormat::kCsv ? ".csv" : ".json";
}

}  // namespace kerrsplit
