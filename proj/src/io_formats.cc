// Copyright 2026 The ciswap Authors
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

#include "ciswap/io_formats.h"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace ciswap {

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n\r") != std::string::npos;
}

std::string quoted(const std::string& field) {
    if (!needs_quoting(field)) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

void append_row(std::string& out, const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); i++) {
        if (i) {
            out += ',';
        }
        out += quoted(cells[i]);
    }
    out += '\n';
}

}  // namespace

void CsvTable::add_comment(const std::string& line) { comments_.push_back(line); }

void CsvTable::set_header(const std::vector<std::string>& columns) {
    header_ = columns;
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
    if (!header_.empty() && cells.size() != header_.size()) {
        throw std::invalid_argument("CsvTable: row width does not match header");
    }
    rows_.push_back(cells);
}

std::string CsvTable::to_string() const {
    std::string out;
    for (const std::string& c : comments_) {
        out += "# " + c + "\n";
    }
    if (!header_.empty()) {
        append_row(out, header_);
    }
    for (const auto& row : rows_) {
        append_row(out, row);
    }
    return out;
}

void CsvTable::write(const std::string& path) const { write_text_file(path, to_string()); }

std::string format_fixed(double v, int decimals) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed,
                             decimals);
    if (res.ec != std::errc()) {
        throw std::invalid_argument("format_fixed: value does not fit");
    }
    return std::string(buf, res.ptr);
}

std::string format_general(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) {
        throw std::invalid_argument("format_general: value does not fit");
    }
    return std::string(buf, res.ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

}  // namespace ciswap
