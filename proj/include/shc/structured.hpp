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

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shc/gof.hpp"
#include "shc/grid.hpp"
#include "shc/regions.hpp"

namespace shc {

enum class StatKind { shc, shc_plus, sbj, ss, hc, bj, pn, pnapp };

// A named statistic: the structured family, the plain unstructured HC/BJ, or
// one of the two penalized scans.
struct StatSpec {
  StatKind kind = StatKind::shc;
  double s = 2.0;  // for StatKind::ss

  // Accepts shc, shc+, sbj, ss:<s>, hc, bj, pn, pnapp.
  static StatSpec parse(const std::string& text);
  std::string name() const;
  bool uses_levels() const { return kind != StatKind::hc && kind != StatKind::bj && kind != StatKind::pn; }
  GofFamily family() const;
};

struct StatValue {
  std::string name;
  double value = 0.0;
  std::optional<int> level;
  std::optional<Region> region;
};

struct LevelStat {
  int level = 0;
  std::int64_t n_ell = 0;
  double scale = 0.0;
  double raw = 0.0;    // statistic on the level's p-values
  double value = 0.0;  // scale * raw
  std::int64_t rank = 0;
  std::int64_t index = -1;  // maximizing region index within the level
};

// Cells of the grid the level set was built for: n (d = 1) or n^2 (d = 2).
double level_scale(const ApproxLevel& level, const GofFamily& family);

// Calls fn(index, z) with z = X(I) / sqrt(|I|) for every member I of the
// level, in index order.
template <class Fn>
void for_each_score(const CellSums& sums, const ApproxLevel& level, Fn&& fn);

std::vector<double> level_scores(const CellSums& sums, const ApproxLevel& level);
std::vector<double> level_pvalues(const CellSums& sums, const ApproxLevel& level);

// Per-level statistics. The reference path sorts every level's p-values in
// full; the default path uses the bucketed maximizer.
std::vector<LevelStat> level_stats(const Grid& grid, const LevelSet& levels, const GofFamily& family,
                                   bool reference = false);

StatValue structured_stat(const Grid& grid, const LevelSet& levels, const GofFamily& family);

// HC/BJ on the raw per-cell p-values, ignoring any structure.
StatValue unstructured_stat(const Grid& grid, const GofFamily& family);

enum class ScanMode { all_intervals, approx };

inline constexpr std::int32_t kScanAllIntervalsLimit = 1 << 14;

// max over intervals of X(I)/sqrt|I| - sqrt(2 log(e n / |I|)). The
// all-intervals mode throws ResourceGuardError for n above the limit.
StatValue penalized_scan(const Grid& grid, ScanMode mode, const LevelSet* levels = nullptr);

// Evaluates any StatSpec; `levels` must match the grid when the spec uses them.
StatValue evaluate_stat(const StatSpec& spec, const Grid& grid, const LevelSet* levels);

template <class Fn>
void for_each_score(const CellSums& sums, const ApproxLevel& level, Fn&& fn) {
  for (const auto& f : level.families) {
    const double inv = 1.0 / std::sqrt(static_cast<double>(f.cells));
    std::int64_t idx = f.first_index;
    const auto& a0 = f.axes[0];
    const auto& a1 = f.axes[1];
    switch (level.shape) {
      case Shape::interval: {
        const std::int32_t len = f.lengths[0];
        for (std::int32_t s = 0, lo = a0.origin; s < a0.count; ++s, lo += a0.step) {
          fn(idx++, sums.interval(lo, lo + len) * inv);
        }
        break;
      }
      case Shape::rectangle:
        for (std::int32_t s0 = 0, r = a0.origin; s0 < a0.count; ++s0, r += a0.step) {
          for (std::int32_t s1 = 0, c = a1.origin; s1 < a1.count; ++s1, c += a1.step) {
            fn(idx++, sums.rectangle(r, r + f.lengths[0], c, c + f.lengths[1]) * inv);
          }
        }
        break;
      case Shape::ball:
        for (std::int32_t s0 = 0, cx = a0.origin; s0 < a0.count; ++s0, cx += a0.step) {
          for (std::int32_t s1 = 0, cy = a1.origin; s1 < a1.count; ++s1, cy += a1.step) {
            double sum = 0.0;
            for (const auto& row : f.ball_rows) {
              const std::int32_t x = cx + row.dx;
              sum += sums.rectangle(x - 1, x, cy - row.half_width - 1, cy + row.half_width);
            }
            fn(idx++, sum * inv);
          }
        }
        break;
    }
  }
}

}  // namespace shc
