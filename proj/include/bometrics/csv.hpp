// Copyright 2026-present the bometrics project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace bometrics::csv {

// Shortest round-trip decimal form; NaN becomes an empty cell.
std::string
format_double(double v);

// Empty cell parses as NaN; malformed text throws ConfigError.
double
parse_double(std::string_view cell);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Index of a header column; throws ConfigError when absent.
    std::size_t
    column(std::string_view name) const;
};

// Comma-separated, no quoting. Throws IoError if unreadable, ConfigError on
// rows whose width differs from the header.
Table
read(const std::filesystem::path& path);

void
write(std::ostream& out, const Table& table);

void
write(const std::filesystem::path& path, const Table& table);

}  // namespace bometrics::csv
