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

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace shc {

enum class Shape { interval, rectangle, ball };

std::string to_string(Shape shape);
Shape parse_shape(const std::string& name);

// Half-open integer interval (lo, hi]; covers cells lo+1 .. hi.
struct Interval {
  std::int32_t lo = 0;
  std::int32_t hi = 0;

  std::int64_t length() const { return static_cast<std::int64_t>(hi) - lo; }
  auto operator<=>(const Interval&) const = default;
};

// Cells (row, col_lo..col_hi) covered by one row of a region, inclusive.
struct RowSpan {
  std::int32_t row = 0;
  std::int32_t col_lo = 0;
  std::int32_t col_hi = 0;

  auto operator<=>(const RowSpan&) const = default;
};

// A set of grid cells: an interval on {1..n}, an axis-parallel rectangle on
// {1..n}^2, or an open Euclidean ball on {1..n}^2. Grid coordinates are
// 1-based; the first axis indexes rows of a row-major array.
class Region {
 public:
  Region() = default;

  static Region interval(std::int32_t lo, std::int32_t hi);
  static Region rectangle(Interval rows, Interval cols);
  // Open ball {(x, y) : (x - cx)^2 + (y - cy)^2 < radius_sq}, clipped to
  // {1..grid_side}^2.
  static Region ball(double cx, double cy, double radius_sq, std::int32_t grid_side);

  Shape kind() const { return kind_; }
  const Interval& rows() const { return rows_; }
  const Interval& cols() const { return cols_; }
  double center_x() const { return cx_; }
  double center_y() const { return cy_; }
  double radius_sq() const { return radius_sq_; }
  std::int64_t size() const { return size_; }

  // Row spans covering the region; intervals report a single span on row 1
  // with the interval's cells as columns.
  std::vector<RowSpan> spans() const;

  bool contains(std::int32_t x, std::int32_t y = 1) const;

  // Lexicographic key used for deterministic tie-breaking.
  bool lex_less(const Region& other) const;

  std::string describe() const;

  friend bool operator==(const Region& a, const Region& b);

 private:
  Shape kind_ = Shape::interval;
  Interval rows_{};
  Interval cols_{};
  double cx_ = 0.0;
  double cy_ = 0.0;
  double radius_sq_ = 0.0;
  std::int64_t size_ = 0;
  std::vector<RowSpan> ball_spans_;
};

// |a symmetric-difference b| by exact cell counting.
std::int64_t symmetric_difference(const Region& a, const Region& b);

// Cells of an open ball of squared radius radius_sq centred on a lattice
// point, as (dx, half_width) rows: the ball covers dy in [-half_width, half_width].
struct BallRow {
  std::int32_t dx;
  std::int32_t half_width;
};
std::vector<BallRow> lattice_ball_rows(double radius_sq);

}  // namespace shc
