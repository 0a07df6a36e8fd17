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

#include <cstdint>
#include <span>
#include <vector>

#include "shc/region.hpp"

namespace shc {

// Observations on {1..n} (dim 1) or {1..n}^2 (dim 2), row-major.
class Grid {
 public:
  Grid() = default;
  Grid(std::int32_t side, int dim);
  Grid(std::int32_t side, int dim, std::vector<double> values);

  std::int32_t side() const { return side_; }
  int dim() const { return dim_; }
  std::size_t cell_count() const { return values_.size(); }

  double at(std::int32_t i) const { return values_[static_cast<std::size_t>(i - 1)]; }
  double at(std::int32_t x, std::int32_t y) const { return values_[index(x, y)]; }
  double& at(std::int32_t i) { return values_[static_cast<std::size_t>(i - 1)]; }
  double& at(std::int32_t x, std::int32_t y) { return values_[index(x, y)]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  bool contains(const Region& region) const;

 private:
  std::size_t index(std::int32_t x, std::int32_t y) const {
    return static_cast<std::size_t>(x - 1) * static_cast<std::size_t>(side_) + static_cast<std::size_t>(y - 1);
  }

  std::int32_t side_ = 0;
  int dim_ = 1;
  std::vector<double> values_;
};

// Constant-time interval and rectangle sums via a prefix-sum array (dim 1) or
// summed-area table (dim 2); balls cost one rectangle lookup per row.
class CellSums {
 public:
  explicit CellSums(const Grid& grid);

  std::int32_t side() const { return side_; }
  int dim() const { return dim_; }

  // Sum over (lo, hi] of a 1-D grid.
  double interval(std::int32_t lo, std::int32_t hi) const { return prefix_[hi] - prefix_[lo]; }

  // Sum over rows (r.lo, r.hi] x cols (c.lo, c.hi] of a 2-D grid.
  double rectangle(std::int32_t row_lo, std::int32_t row_hi, std::int32_t col_lo, std::int32_t col_hi) const {
    const std::size_t w = static_cast<std::size_t>(side_) + 1;
    return prefix_[row_hi * w + col_hi] - prefix_[row_lo * w + col_hi] - prefix_[row_hi * w + col_lo] +
           prefix_[row_lo * w + col_lo];
  }

  double region(const Region& region) const;

 private:
  std::int32_t side_;
  int dim_;
  std::vector<double> prefix_;
};

// Upper-tail p-value of the standardized aggregate sum(region) / sqrt(|region|),
// clamped into (0, 1). Throws std::out_of_range if the region leaves the grid.
double region_pvalue(const Grid& grid, const Region& region);

}  // namespace shc
