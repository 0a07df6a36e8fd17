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

#include "shc/structured.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "shc/errors.hpp"
#include "shc/gauss.hpp"
#include "shc/score_max.hpp"

namespace shc {

namespace {

double grid_cells(const ApproxLevel& level) {
  const double n = level.side;
  return level.dim == 1 ? n : n * n;
}

bool is_hc(const GofFamily& f) { return f.kind == GofFamily::Kind::hc || f.kind == GofFamily::Kind::hc_plus; }

Region cell_region(const Grid& grid, std::int64_t index) {
  if (grid.dim() == 1) {
    const auto k = static_cast<std::int32_t>(index);
    return Region::interval(k, k + 1);
  }
  const auto x = static_cast<std::int32_t>(index / grid.side());
  const auto y = static_cast<std::int32_t>(index % grid.side());
  return Region::rectangle({x, x + 1}, {y, y + 1});
}

double penalty(double n, double len) { return std::sqrt(2.0 * std::log(std::numbers::e * n / len)); }

}  // namespace

StatSpec StatSpec::parse(const std::string& text) {
  if (text == "shc") return {StatKind::shc, 2.0};
  if (text == "shc+") return {StatKind::shc_plus, 2.0};
  if (text == "sbj") return {StatKind::sbj, 1.0};
  if (text == "hc") return {StatKind::hc, 2.0};
  if (text == "bj") return {StatKind::bj, 1.0};
  if (text == "pn") return {StatKind::pn, 0.0};
  if (text == "pnapp") return {StatKind::pnapp, 0.0};
  if (text.rfind("ss:", 0) == 0) {
    std::size_t used = 0;
    double s = 0.0;
    try {
      s = std::stod(text.substr(3), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() - 3) throw ConfigurationError("bad statistic '" + text + "'");
    GofFamily::phi(s);  // range check
    return {StatKind::ss, s};
  }
  throw ConfigurationError("unknown statistic '" + text + "' (expected shc, shc+, sbj, ss:<s>, hc, bj, pn, pnapp)");
}

std::string StatSpec::name() const {
  switch (kind) {
    case StatKind::shc:
      return "sHC";
    case StatKind::shc_plus:
      return "sHC+";
    case StatKind::sbj:
      return "sBJ";
    case StatKind::ss:
      return "sS(" + GofFamily::phi(s).name().substr(4) + ")";
    case StatKind::hc:
      return "HC";
    case StatKind::bj:
      return "BJ";
    case StatKind::pn:
      return "Pn";
    case StatKind::pnapp:
      return "PnApp";
  }
  return "?";
}

GofFamily StatSpec::family() const {
  switch (kind) {
    case StatKind::shc:
    case StatKind::hc:
      return GofFamily::hc();
    case StatKind::shc_plus:
      return GofFamily::hc_plus();
    case StatKind::sbj:
    case StatKind::bj:
      return GofFamily::bj();
    case StatKind::ss:
      return GofFamily::phi(s);
    case StatKind::pn:
    case StatKind::pnapp:
      break;
  }
  throw ConfigurationError("penalized scans have no goodness-of-fit family");
}

double level_scale(const ApproxLevel& level, const GofFamily& family) {
  const double ratio = grid_cells(level) / (std::ldexp(1.0, level.level) * static_cast<double>(level.n_ell()));
  return is_hc(family) ? std::sqrt(ratio) : ratio;
}

std::vector<double> level_scores(const CellSums& sums, const ApproxLevel& level) {
  std::vector<double> z(static_cast<std::size_t>(level.n_ell()));
  for_each_score(sums, level, [&](std::int64_t i, double v) { z[static_cast<std::size_t>(i)] = v; });
  return z;
}

std::vector<double> level_pvalues(const CellSums& sums, const ApproxLevel& level) {
  auto p = level_scores(sums, level);
  for (double& v : p) v = gauss::pvalue_of_score(v);
  return p;
}

std::vector<LevelStat> level_stats(const Grid& grid, const LevelSet& levels, const GofFamily& family,
                                   bool reference) {
  if (levels.empty()) throw ConfigurationError("structured statistic needs at least one level");
  if (levels.front().side != grid.side() || levels.front().dim != grid.dim()) {
    throw ConfigurationError("level set was built for a different grid");
  }
  const CellSums sums(grid);
  ScoreMaximizer maximizer(family);
  std::vector<LevelStat> out;
  for (const auto& level : levels) {
    if (level.n_ell() < 2) continue;
    ScoreMax best;
    if (reference) {
      std::vector<std::pair<double, std::int64_t>> scored;
      scored.reserve(static_cast<std::size_t>(level.n_ell()));
      for_each_score(sums, level, [&](std::int64_t i, double z) { scored.emplace_back(z, i); });
      best = max_over_scores_sorted(family, std::move(scored));
    } else {
      best = maximizer.run(level.n_ell(), [&](auto&& fn) { for_each_score(sums, level, fn); });
    }
    LevelStat st;
    st.level = level.level;
    st.n_ell = level.n_ell();
    st.scale = level_scale(level, family);
    st.raw = best.value;
    st.value = st.scale * best.value;
    st.rank = best.rank;
    st.index = best.index;
    out.push_back(st);
  }
  if (out.empty()) throw ConfigurationError("no level has at least two regions");
  return out;
}

StatValue structured_stat(const Grid& grid, const LevelSet& levels, const GofFamily& family) {
  const auto stats = level_stats(grid, levels, family);
  const LevelStat* best = &stats.front();
  for (const auto& st : stats) {
    if (st.value > best->value) best = &st;
  }
  StatValue out;
  out.value = best->value;
  out.level = best->level;
  if (best->index >= 0) {
    for (const auto& level : levels) {
      if (level.level == best->level) out.region = level.region(best->index);
    }
  }
  return out;
}

StatValue unstructured_stat(const Grid& grid, const GofFamily& family) {
  const auto v = grid.values();
  const auto count = static_cast<std::int64_t>(v.size());
  if (count < 2) throw DomainError("statistic needs at least two cells");
  ScoreMaximizer maximizer(family);
  const ScoreMax best = maximizer.run(count, [&](auto&& fn) {
    for (std::int64_t i = 0; i < count; ++i) fn(i, v[static_cast<std::size_t>(i)]);
  });
  StatValue out;
  out.value = best.value;
  if (best.index >= 0) out.region = cell_region(grid, best.index);
  return out;
}

StatValue penalized_scan(const Grid& grid, ScanMode mode, const LevelSet* levels) {
  if (grid.dim() != 1) throw ConfigurationError("the penalized scan is defined for one-dimensional data only");
  const std::int32_t n = grid.side();
  const CellSums sums(grid);
  const double nn = n;
  double best = -std::numeric_limits<double>::infinity();
  Region arg;
  std::optional<int> arg_level;
  if (mode == ScanMode::all_intervals) {
    if (n > kScanAllIntervalsLimit) {
      throw ResourceGuardError("all-intervals penalized scan is O(n^2); n = " + std::to_string(n) + " exceeds " +
                               std::to_string(kScanAllIntervalsLimit) + ", use the approx mode");
    }
    std::vector<double> inv(static_cast<std::size_t>(n) + 1), pen(static_cast<std::size_t>(n) + 1);
    for (std::int32_t len = 1; len <= n; ++len) {
      inv[static_cast<std::size_t>(len)] = 1.0 / std::sqrt(static_cast<double>(len));
      pen[static_cast<std::size_t>(len)] = penalty(nn, len);
    }
    std::int32_t bj = 0, bk = 0;
    for (std::int32_t j = 0; j < n; ++j) {
      for (std::int32_t k = j + 1; k <= n; ++k) {
        const auto len = static_cast<std::size_t>(k - j);
        const double v = sums.interval(j, k) * inv[len] - pen[len];
        if (v > best) {
          best = v;
          bj = j;
          bk = k;
        }
      }
    }
    arg = Region::interval(bj, bk);
  } else {
    if (levels == nullptr || levels->empty()) throw ConfigurationError("approx penalized scan needs a level set");
    if (levels->front().side != n || levels->front().shape != Shape::interval) {
      throw ConfigurationError("approx penalized scan needs interval levels built for this grid");
    }
    for (const auto& level : *levels) {
      std::int64_t arg_index = -1;
      for (const auto& f : level.families) {
        const double pen = penalty(nn, static_cast<double>(f.cells));
        const double inv = 1.0 / std::sqrt(static_cast<double>(f.cells));
        const std::int32_t len = f.lengths[0];
        std::int64_t idx = f.first_index;
        for (std::int32_t s = 0, lo = f.axes[0].origin; s < f.axes[0].count; ++s, lo += f.axes[0].step, ++idx) {
          const double v = sums.interval(lo, lo + len) * inv - pen;
          if (v > best) {
            best = v;
            arg_index = idx;
          }
        }
      }
      if (arg_index >= 0) {
        arg = level.region(arg_index);
        arg_level = level.level;
      }
    }
  }
  StatValue out;
  out.value = best;
  out.region = arg;
  out.level = arg_level;
  return out;
}

StatValue evaluate_stat(const StatSpec& spec, const Grid& grid, const LevelSet* levels) {
  StatValue out;
  switch (spec.kind) {
    case StatKind::hc:
    case StatKind::bj:
      out = unstructured_stat(grid, spec.family());
      break;
    case StatKind::pn:
      out = penalized_scan(grid, ScanMode::all_intervals);
      break;
    case StatKind::pnapp:
      out = penalized_scan(grid, ScanMode::approx, levels);
      break;
    default:
      if (levels == nullptr) throw ConfigurationError(spec.name() + " needs an approximating set");
      out = structured_stat(grid, *levels, spec.family());
      break;
  }
  out.name = spec.name();
  return out;
}

}  // namespace shc
