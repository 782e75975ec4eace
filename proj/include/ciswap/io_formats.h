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

#ifndef CISWAP_IO_FORMATS_H
#define CISWAP_IO_FORMATS_H

#include <string>
#include <vector>

namespace ciswap {

// RFC-4180 CSV with '#'-prefixed provenance comments above the header row.
class CsvTable {
  public:
    void add_comment(const std::string& line);
    void set_header(const std::vector<std::string>& columns);
    void add_row(const std::vector<std::string>& cells);

    // Quotes fields containing separators, quotes or newlines.
    std::string to_string() const;
    void write(const std::string& path) const;

  private:
    std::vector<std::string> comments_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// Fixed-point decimal with '.' separator, locale independent.
std::string format_fixed(double v, int decimals);
// Shortest round-trip representation, for summary values.
std::string format_general(double v);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace ciswap

#endif
