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

#include "shc/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "shc/errors.hpp"

namespace shc::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& text, std::size_t line) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ConfigurationError("line " + std::to_string(line) + ": cannot parse '" + text + "' as a number");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void write_grid_csv(std::ostream& out, const Grid& grid) {
  const auto v = grid.values();
  if (grid.dim() == 1) {
    for (double x : v) out << format_double(x) << '\n';
    return;
  }
  const auto n = static_cast<std::size_t>(grid.side());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c) out << ',';
      out << format_double(v[r * n + c]);
    }
    out << '\n';
  }
}

Grid read_grid_csv(std::istream& in) {
  std::vector<double> values;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto cells = split(t);
    if (rows == 0) width = cells.size();
    if (cells.size() != width) {
      throw ConfigurationError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                               " values, got " + std::to_string(cells.size()));
    }
    for (const auto& c : cells) values.push_back(parse_double(c, line_no));
    ++rows;
  }
  if (rows == 0) throw ConfigurationError("dataset is empty");
  if (width == 1) return Grid(static_cast<std::int32_t>(rows), 1, std::move(values));
  if (rows != width) {
    throw ConfigurationError("2-D dataset must be square, got " + std::to_string(rows) + " x " + std::to_string(width));
  }
  return Grid(static_cast<std::int32_t>(rows), 2, std::move(values));
}

Grid read_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open dataset '" + path + "'");
  return read_grid_csv(in);
}

std::vector<std::vector<std::string>> read_csv_rows(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    rows.push_back(split(t));
  }
  return rows;
}

}  // namespace shc::io
