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

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "shc/region.hpp"

// Multiscale approximating sets: at each level a sparse collection of
// intervals, rectangles, or lattice balls of roughly equal size, organised so
// the regions split into a few groups of pairwise disjoint members.

namespace shc {

// Positions origin, origin + step, ..., origin + (count - 1) * step along one
// axis. Members whose positions agree modulo `period` (a multiple of `step`)
// belong to the same disjoint group.
struct AxisLattice {
  std::int32_t origin = 0;
  std::int32_t step = 1;
  std::int32_t count = 1;
  std::int32_t period = 1;

  std::int32_t residue_classes() const;
  // Members in residue class r (0 <= r < residue_classes()).
  std::int32_t class_size(std::int32_t r) const;
};

// Congruent copies of one prototype region translated over a lattice.
// Intervals: prototype (pos, pos + lengths[0]]; rectangles: rows
// (pos0, pos0 + lengths[0]] x cols (pos1, pos1 + lengths[1]]; balls: open ball
// of squared radius radius_sq centred at (pos0, pos1).
struct RegionFamily {
  std::array<std::int32_t, 2> lengths{1, 1};
  double radius_sq = 0.0;
  std::int32_t radius_index = 0;
  std::array<AxisLattice, 2> axes{};
  std::int64_t cells = 0;
  std::int64_t first_index = 0;
  std::int64_t first_group = 0;
  std::vector<BallRow> ball_rows;

  std::int64_t size() const { return static_cast<std::int64_t>(axes[0].count) * axes[1].count; }
  std::int64_t group_count() const {
    return static_cast<std::int64_t>(axes[0].residue_classes()) * axes[1].residue_classes();
  }
};

class ApproxLevel {
 public:
  Shape shape = Shape::interval;
  std::int32_t side = 0;  // grid side n
  int dim = 1;
  int level = 0;
  double epsilon = 0.0;
  // d_l for intervals and balls; for rectangles the smallest marginal step.
  std::int32_t grid_step = 1;
  // L_l for intervals and balls; 0 for rectangles, whose shift period is
  // per-family (the side lengths).
  std::int32_t shift_period = 0;
  std::vector<RegionFamily> families;

  std::int64_t n_ell() const { return n_ell_; }
  std::int64_t i_max() const { return i_max_; }
  // Lower and upper volume bracket (exclusive, inclusive] in cells.
  double volume_lo() const;
  double volume_hi() const;

  Region region(std::int64_t index) const;
  std::vector<Region> regions() const;

  std::int64_t group_of(std::int64_t index) const;
  std::vector<std::vector<std::int64_t>> groups() const;
  std::int64_t min_group_size() const;
  std::int64_t max_group_size() const;

  // Assigns first_index/first_group offsets; called once families are final.
  void finalize();

 private:
  std::pair<std::size_t, std::array<std::int32_t, 2>> locate(std::int64_t index) const;

  std::int64_t n_ell_ = 0;
  std::int64_t i_max_ = 0;
};

using LevelSet = std::vector<ApproxLevel>;

// ceil(log2(n / 8)) for integer n, computed without floating point.
int interval_max_level(std::int32_t n);

LevelSet build_interval_levels(std::int32_t n);
LevelSet build_rectangle_levels(std::int32_t n, int dim);
LevelSet build_ball_levels(std::int32_t n);
LevelSet build_levels(Shape shape, std::int32_t n);

struct Approximation {
  Region region;
  std::int64_t sym_diff = 0;
  int level = 0;
};

// Member of the union of levels closest to `target` in symmetric-difference
// cell count; ties go to the lowest level, then the lexicographically
// smallest region. Throws DomainError when the target lies outside the range
// the construction is designed to approximate.
Approximation approximate_region(const Region& target, const LevelSet& levels);

// Continuous-area bound on |B_R(0) symmetric-difference B_r(d)| for
// 0 < r <= R and centre distance dist.
double ball_symdiff_bound(double big_radius, double small_radius, double dist);

}  // namespace shc
