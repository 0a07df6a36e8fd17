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

#include "shc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "shc/errors.hpp"

namespace shc {

namespace {

// ceil(x) that ignores rounding noise just above an integer.
std::int32_t ceil_tol(double x) { return static_cast<std::int32_t>(std::ceil(x - 1e-9)); }

// Smallest l >= 0 with 2^l * denominator >= numerator.
int ceil_log2_ratio(std::int64_t numerator, std::int64_t denominator) {
  int l = 0;
  while ((denominator << l) < numerator) ++l;
  return l;
}

// Multiples of `step` in (2^(l-1), 2^l].
std::vector<std::int32_t> level_lengths(int l, std::int32_t step) {
  std::vector<std::int32_t> out;
  const std::int64_t hi = std::int64_t{1} << l;
  for (std::int64_t len = step; len <= hi; len += step) {
    if (2 * len > hi) out.push_back(static_cast<std::int32_t>(len));
  }
  return out;
}

void require_side(std::int32_t n) {
  if (n < 16) throw ConfigurationError("approximating sets need n >= 16, got " + std::to_string(n));
}

}  // namespace

std::int32_t AxisLattice::residue_classes() const { return std::min(period / step, count); }

std::int32_t AxisLattice::class_size(std::int32_t r) const {
  const std::int32_t q = period / step;
  return (count - r + q - 1) / q;
}

double ApproxLevel::volume_lo() const {
  const double v = std::ldexp(1.0, level - 1);
  return shape == Shape::ball ? std::numbers::pi * v : v;
}

double ApproxLevel::volume_hi() const {
  const double v = std::ldexp(1.0, level);
  return shape == Shape::ball ? std::numbers::pi * v : v;
}

void ApproxLevel::finalize() {
  n_ell_ = 0;
  i_max_ = 0;
  for (auto& f : families) {
    f.first_index = n_ell_;
    f.first_group = i_max_;
    n_ell_ += f.size();
    i_max_ += f.group_count();
  }
}

std::pair<std::size_t, std::array<std::int32_t, 2>> ApproxLevel::locate(std::int64_t index) const {
  if (index < 0 || index >= n_ell_) throw std::out_of_range("region index out of range");
  auto it = std::upper_bound(families.begin(), families.end(), index,
                             [](std::int64_t i, const RegionFamily& f) { return i < f.first_index; });
  const auto fi = static_cast<std::size_t>(std::distance(families.begin(), it) - 1);
  const auto& f = families[fi];
  const std::int64_t local = index - f.first_index;
  return {fi, {static_cast<std::int32_t>(local / f.axes[1].count), static_cast<std::int32_t>(local % f.axes[1].count)}};
}

Region ApproxLevel::region(std::int64_t index) const {
  const auto [fi, pos] = locate(index);
  const auto& f = families[fi];
  const std::int32_t p0 = f.axes[0].origin + pos[0] * f.axes[0].step;
  const std::int32_t p1 = f.axes[1].origin + pos[1] * f.axes[1].step;
  switch (shape) {
    case Shape::interval:
      return Region::interval(p0, p0 + f.lengths[0]);
    case Shape::rectangle:
      return Region::rectangle({p0, p0 + f.lengths[0]}, {p1, p1 + f.lengths[1]});
    case Shape::ball:
      return Region::ball(p0, p1, f.radius_sq, side);
  }
  return {};
}

std::vector<Region> ApproxLevel::regions() const {
  std::vector<Region> out;
  out.reserve(static_cast<std::size_t>(n_ell_));
  for (std::int64_t i = 0; i < n_ell_; ++i) out.push_back(region(i));
  return out;
}

std::int64_t ApproxLevel::group_of(std::int64_t index) const {
  const auto [fi, pos] = locate(index);
  const auto& f = families[fi];
  const std::int32_t q0 = f.axes[0].period / f.axes[0].step;
  const std::int32_t q1 = f.axes[1].period / f.axes[1].step;
  return f.first_group + static_cast<std::int64_t>(pos[0] % q0) * f.axes[1].residue_classes() + pos[1] % q1;
}

std::vector<std::vector<std::int64_t>> ApproxLevel::groups() const {
  std::vector<std::vector<std::int64_t>> out(static_cast<std::size_t>(i_max_));
  for (std::int64_t i = 0; i < n_ell_; ++i) out[static_cast<std::size_t>(group_of(i))].push_back(i);
  return out;
}

std::int64_t ApproxLevel::min_group_size() const {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& f : families) {
    // class_size is nonincreasing in r, so the last class is the smallest.
    best = std::min<std::int64_t>(
        best, static_cast<std::int64_t>(f.axes[0].class_size(f.axes[0].residue_classes() - 1)) *
                  f.axes[1].class_size(f.axes[1].residue_classes() - 1));
  }
  return families.empty() ? 0 : best;
}

std::int64_t ApproxLevel::max_group_size() const {
  std::int64_t best = 0;
  for (const auto& f : families) {
    best = std::max<std::int64_t>(best, static_cast<std::int64_t>(f.axes[0].class_size(0)) * f.axes[1].class_size(0));
  }
  return best;
}

int interval_max_level(std::int32_t n) { return ceil_log2_ratio(n, 8); }

LevelSet build_interval_levels(std::int32_t n) {
  require_side(n);
  const int l_max = interval_max_level(n);
  LevelSet levels;
  for (int l = 0; l <= l_max; ++l) {
    ApproxLevel lev;
    lev.shape = Shape::interval;
    lev.side = n;
    lev.dim = 1;
    lev.level = l;
    lev.epsilon = 1.0 / (6.0 * std::sqrt(static_cast<double>(l_max - l + 4)));
    lev.grid_step = std::max(1, ceil_tol(lev.epsilon * std::ldexp(1.0, l - 1)));
    const std::int32_t d = lev.grid_step;
    lev.shift_period = static_cast<std::int32_t>(((std::int64_t{1} << l) / d) * d);
    for (std::int32_t len : level_lengths(l, d)) {
      if (len > n) continue;
      RegionFamily f;
      f.lengths = {len, 1};
      f.cells = len;
      f.axes[0] = {0, d, (n - len) / d + 1, lev.shift_period};
      f.axes[1] = {1, 1, 1, 1};
      lev.families.push_back(std::move(f));
    }
    lev.finalize();
    levels.push_back(std::move(lev));
  }
  return levels;
}

LevelSet build_rectangle_levels(std::int32_t n, int dim) {
  if (dim == 1) return build_interval_levels(n);
  if (dim != 2) throw ConfigurationError("rectangles are supported in dimension 1 or 2, got " + std::to_string(dim));
  require_side(n);
  const int marginal_max = interval_max_level(n);
  const std::int64_t area = static_cast<std::int64_t>(n) * n;
  const int l_max = ceil_log2_ratio(area, 64);
  const double log2_area = std::log2(static_cast<double>(area));
  LevelSet levels;
  for (int l = 0; l <= l_max; ++l) {
    ApproxLevel lev;
    lev.shape = Shape::rectangle;
    lev.side = n;
    lev.dim = 2;
    lev.level = l;
    lev.epsilon = 1.0 / (6.0 * std::sqrt(log2_area - (l - 1)));
    lev.shift_period = 0;
    lev.grid_step = std::numeric_limits<std::int32_t>::max();
    const std::int64_t vol_hi = std::int64_t{1} << l;
    for (int l1 = 0; l1 <= marginal_max; ++l1) {
      const std::int32_t d1 = std::max(1, ceil_tol(lev.epsilon * std::ldexp(1.0, l1 - 1)));
      for (std::int32_t len1 : level_lengths(l1, d1)) {
        for (int l2 = l - l1; l2 <= l - l1 + 1; ++l2) {
          if (l2 < 0 || l2 > marginal_max) continue;
          const std::int32_t d2 = std::max(1, ceil_tol(lev.epsilon * std::ldexp(1.0, l2 - 1)));
          for (std::int32_t len2 : level_lengths(l2, d2)) {
            const std::int64_t vol = static_cast<std::int64_t>(len1) * len2;
            if (2 * vol <= vol_hi || vol > vol_hi) continue;
            if (len1 > n || len2 > n) continue;
            RegionFamily f;
            f.lengths = {len1, len2};
            f.cells = vol;
            f.axes[0] = {0, d1, (n - len1) / d1 + 1, len1};
            f.axes[1] = {0, d2, (n - len2) / d2 + 1, len2};
            lev.grid_step = std::min({lev.grid_step, d1, d2});
            lev.families.push_back(std::move(f));
          }
        }
      }
    }
    std::sort(lev.families.begin(), lev.families.end(),
              [](const RegionFamily& a, const RegionFamily& b) { return a.lengths < b.lengths; });
    if (lev.families.empty()) lev.grid_step = 0;
    lev.finalize();
    levels.push_back(std::move(lev));
  }
  return levels;
}

LevelSet build_ball_levels(std::int32_t n) {
  require_side(n);
  const std::int64_t area = static_cast<std::int64_t>(n) * n;
  const int l_max = ceil_log2_ratio(area, 8);
  const double log2_area = std::log2(static_cast<double>(area));
  LevelSet levels;
  for (int l = 0; l <= l_max; ++l) {
    ApproxLevel lev;
    lev.shape = Shape::ball;
    lev.side = n;
    lev.dim = 2;
    lev.level = l;
    lev.epsilon = 1.0 / std::sqrt(log2_area - (l - 1));
    const std::int32_t d = std::max(1, ceil_tol(lev.epsilon * std::pow(2.0, 0.5 * (l - 1))));
    lev.grid_step = d;
    const auto radius_count = static_cast<int>(std::floor(1.0 / lev.epsilon + 1e-9)) + 1;
    std::vector<std::pair<int, double>> radii;  // (i, r_i^2)
    for (int i = 0; i < radius_count; ++i) {
      const double r2 = std::pow(2.0, l - 1 + i * lev.epsilon);
      if (std::sqrt(r2) > 0.5 * n) continue;
      radii.emplace_back(i, r2);
    }
    double diameter = 0.0;
    for (const auto& [i, r2] : radii) diameter = std::max(diameter, 2.0 * std::sqrt(r2));
    lev.shift_period = std::max(d, ceil_tol(diameter / d) * d);
    for (const auto& [i, r2] : radii) {
      const double r = std::sqrt(r2);
      // Centres m * d (m >= 1) inside [r, n - r + 1].
      const auto first = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(r / d - 1e-12)));
      const auto last = static_cast<std::int64_t>(std::floor((n - r + 1.0) / d + 1e-12));
      if (last < first) continue;
      RegionFamily f;
      f.radius_sq = r2;
      f.radius_index = i;
      f.ball_rows = lattice_ball_rows(r2);
      for (const auto& row : f.ball_rows) f.cells += 2 * row.half_width + 1;
      const auto count = static_cast<std::int32_t>(last - first + 1);
      const auto origin = static_cast<std::int32_t>(first * d);
      f.axes[0] = {origin, d, count, lev.shift_period};
      f.axes[1] = {origin, d, count, lev.shift_period};
      lev.families.push_back(std::move(f));
    }
    lev.finalize();
    levels.push_back(std::move(lev));
  }
  return levels;
}

LevelSet build_levels(Shape shape, std::int32_t n) {
  switch (shape) {
    case Shape::interval:
      return build_interval_levels(n);
    case Shape::rectangle:
      return build_rectangle_levels(n, 2);
    case Shape::ball:
      return build_ball_levels(n);
  }
  throw ConfigurationError("unknown shape");
}

namespace {

void check_target(const Region& target, const LevelSet& levels) {
  if (levels.empty()) throw ConfigurationError("approximate_region: empty level set");
  const auto& first = levels.front();
  const std::int32_t n = first.side;
  if (target.kind() != first.shape) throw DomainError("approximate_region: target shape differs from the level set");
  const double max_side = n / 8.0;
  switch (target.kind()) {
    case Shape::interval:
      if (target.rows().lo < 0 || target.rows().hi > n || target.size() > max_side) {
        throw DomainError("approximate_region: interval " + target.describe() + " outside (0, n] or longer than n/8");
      }
      break;
    case Shape::rectangle:
      if (target.rows().lo < 0 || target.rows().hi > n || target.cols().lo < 0 || target.cols().hi > n ||
          target.rows().length() > max_side || target.cols().length() > max_side) {
        throw DomainError("approximate_region: rectangle " + target.describe() + " outside grid or side > n/8");
      }
      break;
    case Shape::ball: {
      const double r2 = target.radius_sq();
      const double r = std::sqrt(r2);
      const auto in_range = [&](double c) { return c >= r && c <= n - r + 1; };
      if (r2 < 1.0 || r2 > static_cast<double>(n) * n / 8.0 || !in_range(target.center_x()) ||
          !in_range(target.center_y())) {
        throw DomainError("approximate_region: ball " + target.describe() + " outside R^2 in [1, n^2/8] or centre range");
      }
      break;
    }
  }
}

}  // namespace

Approximation approximate_region(const Region& target, const LevelSet& levels) {
  check_target(target, levels);
  Approximation best;
  best.sym_diff = std::numeric_limits<std::int64_t>::max();
  bool found = false;
  for (const auto& lev : levels) {
    for (std::int64_t i = 0; i < lev.n_ell(); ++i) {
      Region cand = lev.region(i);
      const std::int64_t sd = symmetric_difference(target, cand);
      const bool better =
          !found || sd < best.sym_diff || (sd == best.sym_diff && lev.level == best.level && cand.lex_less(best.region));
      if (better) {
        best.region = std::move(cand);
        best.sym_diff = sd;
        best.level = lev.level;
        found = true;
      }
    }
  }
  if (!found) throw DomainError("approximate_region: level set has no regions");
  return best;
}

double ball_symdiff_bound(double big_radius, double small_radius, double dist) {
  if (!(small_radius > 0.0) || small_radius > big_radius) {
    throw DomainError("ball_symdiff_bound requires 0 < r <= R");
  }
  if (!(dist >= 0.0)) throw DomainError("ball_symdiff_bound requires a non-negative centre distance");
  const double ratio = small_radius / big_radius;
  return (1.0 - ratio * ratio + 2.0 * dist / big_radius) * std::numbers::pi * big_radius * big_radius;
}

}  // namespace shc
