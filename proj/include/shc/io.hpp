// Copyright 2026 The shc Authors
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

#include <iosfwd>
#include <string>
#include <vector>

#include "shc/grid.hpp"

namespace shc::io {

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

// One value per line for d = 1; n comma-separated values per row for d = 2.
void write_grid_csv(std::ostream& out, const Grid& grid);

// Lines starting with '#' and blank lines are skipped. A file whose rows hold
// one value is read as d = 1; otherwise it must be square.
Grid read_grid_csv(std::istream& in);
Grid read_grid_file(const std::string& path);

// Comma-separated table rows, '#' comments and blank lines dropped; the first
// row is the header.
std::vector<std::vector<std::string>> read_csv_rows(std::istream& in);

}  // namespace shc::io
