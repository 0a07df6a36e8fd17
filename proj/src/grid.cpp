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

#include "shc/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "shc/errors.hpp"
#include "shc/gauss.hpp"

namespace shc {

namespace {

std::size_t cells_for(std::int32_t side, int dim) {
  if (side < 1) throw ConfigurationError("grid side must be positive");
  if (dim != 1 && dim != 2) throw ConfigurationError("grid dimension must be 1 or 2");
  const auto s = static_cast<std::size_t>(side);
  return dim == 1 ? s : s * s;
}

}  // namespace

Grid::Grid(std::int32_t side, int dim) : side_(side), dim_(dim), values_(cells_for(side, dim), 0.0) {}

Grid::Grid(std::int32_t side, int dim, std::vector<double> values)
    : side_(side), dim_(dim), values_(std::move(values)) {
  if (values_.size() != cells_for(side, dim)) {
    throw ConfigurationError("grid of side " + std::to_string(side) + " in dimension " + std::to_string(dim) +
                             " needs " + std::to_string(cells_for(side, dim)) + " values, got " +
                             std::to_string(values_.size()));
  }
}

bool Grid::contains(const Region& region) const {
  if (region.kind() == Shape::interval) return dim_ == 1 && region.rows().lo >= 0 && region.rows().hi <= side_;
  if (dim_ != 2) return false;
  if (region.kind() == Shape::rectangle) {
    return region.rows().lo >= 0 && region.rows().hi <= side_ && region.cols().lo >= 0 && region.cols().hi <= side_;
  }
  // Ball spans are clipped at construction, but the grid may be smaller than
  // the side the ball was clipped to.
  return region.rows().lo >= 0 && region.rows().hi <= side_ && region.cols().lo >= 0 && region.cols().hi <= side_;
}

CellSums::CellSums(const Grid& grid) : side_(grid.side()), dim_(grid.dim()) {
  const auto n = static_cast<std::size_t>(side_);
  const auto v = grid.values();
  if (dim_ == 1) {
    prefix_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix_[i + 1] = prefix_[i] + v[i];
    return;
  }
  const std::size_t w = n + 1;
  prefix_.assign(w * w, 0.0);
  for (std::size_t x = 1; x <= n; ++x) {
    double row = 0.0;
    for (std::size_t y = 1; y <= n; ++y) {
      row += v[(x - 1) * n + (y - 1)];
      prefix_[x * w + y] = prefix_[(x - 1) * w + y] + row;
    }
  }
}

double CellSums::region(const Region& region) const {
  switch (region.kind()) {
    case Shape::interval:
      return interval(region.rows().lo, region.rows().hi);
    case Shape::rectangle:
      return rectangle(region.rows().lo, region.rows().hi, region.cols().lo, region.cols().hi);
    case Shape::ball: {
      double sum = 0.0;
      for (const auto& s : region.spans()) sum += rectangle(s.row - 1, s.row, s.col_lo - 1, s.col_hi);
      return sum;
    }
  }
  return 0.0;
}

double region_pvalue(const Grid& grid, const Region& region) {
  if (region.size() < 1 || !grid.contains(region)) {
    throw std::out_of_range("region " + region.describe() + " lies outside the grid");
  }
  const CellSums sums(grid);
  const double z = sums.region(region) / std::sqrt(static_cast<double>(region.size()));
  return gauss::pvalue_of_score(z);
}

}  // namespace shc
