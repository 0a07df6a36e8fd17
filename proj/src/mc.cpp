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

#include "shc/mc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <limits>
#include <optional>
#include <string>
#include <tuple>

#include "shc/errors.hpp"
#include "shc/gof.hpp"
#include "shc/rng.hpp"
#include "shc/theory.hpp"

namespace shc {

namespace {

constexpr std::uint32_t kNullPurpose = 0;
constexpr std::uint32_t kPowerPurpose = 1;
constexpr std::uint32_t kTailPurpose = 2;
constexpr std::int64_t kMaxReps = 100'000'000;

void check_reps(std::int64_t reps, std::int64_t min_reps) {
  if (reps < min_reps) throw ConfigurationError("need at least " + std::to_string(min_reps) + " replicates");
  if (reps > kMaxReps) throw ResourceGuardError("replicate count above " + std::to_string(kMaxReps));
}

bool needs_levels(const std::vector<StatSpec>& stats) {
  return std::any_of(stats.begin(), stats.end(), [](const StatSpec& s) { return s.uses_levels(); });
}

bool same_model(const NullModel& a, const NullModel& b) {
  return a.n == b.n && a.dim == b.dim && (a.dim == 1 || a.shape == b.shape);
}

std::vector<double> sorted_uniforms(std::int64_t n, std::uint64_t seed) {
  rng::Stream stream(seed, 0);
  std::vector<double> u(static_cast<std::size_t>(n));
  for (double& x : u) x = stream.uniform();
  std::sort(u.begin(), u.end());
  return u;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int default_workers() {
  if (const char* env = std::getenv("SHC_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<double> McReport::sorted_values() const {
  std::vector<double> v = values;
  std::sort(v.begin(), v.end());
  return v;
}

double critical_value(std::span<const double> values, double level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("significance level must lie in (0, 1)");
  if (values.empty()) throw DomainError("critical value of an empty sample");
  std::vector<double> v(values.begin(), values.end());
  const auto reps = static_cast<double>(v.size());
  auto k = static_cast<std::int64_t>(std::ceil((1.0 - level) * reps - 1e-9));
  k = std::clamp<std::int64_t>(k, 1, static_cast<std::int64_t>(v.size()));
  std::nth_element(v.begin(), v.begin() + (k - 1), v.end());
  return v[static_cast<std::size_t>(k - 1)];
}

double critical_value(const McReport& report, double level) { return critical_value(report.values, level); }

std::vector<McReport> simulate_null(const std::vector<StatSpec>& stats, const NullModel& model, std::int64_t reps,
                                    std::uint64_t seed, int workers, const LevelSet* levels) {
  check_reps(reps, 100);
  if (stats.empty()) throw ConfigurationError("no statistic requested");
  const auto t0 = std::chrono::steady_clock::now();
  std::optional<LevelSet> built;
  if (levels == nullptr && needs_levels(stats)) {
    built = build_levels(model.dim == 1 ? Shape::interval : model.shape, model.n);
    levels = &*built;
  }
  std::vector<McReport> out(stats.size());
  for (std::size_t s = 0; s < stats.size(); ++s) {
    out[s].statistic = stats[s].name();
    out[s].model = model;
    out[s].reps = reps;
    out[s].master_seed = seed;
    out[s].values.assign(static_cast<std::size_t>(reps), 0.0);
  }
  parallel_for(reps, workers, [&](std::int64_t i) {
    const Grid grid = null_grid(model.n, model.dim, rng::derive_seed(seed, static_cast<std::uint64_t>(i), kNullPurpose));
    for (std::size_t s = 0; s < stats.size(); ++s) {
      out[s].values[static_cast<std::size_t>(i)] = evaluate_stat(stats[s], grid, levels).value;
    }
  });
  const double elapsed = seconds_since(t0);
  for (auto& r : out) r.wall_time = elapsed;
  return out;
}

McReport simulate_null(const StatSpec& stat, const NullModel& model, std::int64_t reps, std::uint64_t seed,
                       int workers) {
  check_reps(reps, 100);
  return simulate_null(std::vector<StatSpec>{stat}, model, reps, seed, workers).front();
}

std::vector<PowerRow> power_curve(const std::vector<SignalConfig>& configs, const std::vector<StatSpec>& stats,
                                  const std::vector<CriticalValue>& critvals, std::int64_t reps, std::uint64_t seed,
                                  int workers) {
  check_reps(reps, 1);
  std::vector<PowerRow> rows;
  std::map<std::tuple<std::int32_t, int, int>, LevelSet> level_cache;
  for (std::size_t j = 0; j < configs.size(); ++j) {
    const SignalConfig& base = configs[j];
    base.validate();
    const NullModel model{base.n, base.dim, base.dim == 1 ? Shape::interval : base.shape};
    std::vector<double> cv(stats.size());
    for (std::size_t s = 0; s < stats.size(); ++s) {
      const std::string name = stats[s].name();
      bool found = false;
      for (const auto& c : critvals) {
        if (c.statistic != name) continue;
        if (!same_model(c.model, model)) {
          throw ConfigurationError("critical value for " + name + " was simulated at n = " + std::to_string(c.model.n) +
                                   " (d = " + std::to_string(c.model.dim) + "), config has n = " +
                                   std::to_string(model.n) + " (d = " + std::to_string(model.dim) + ")");
        }
        cv[s] = c.value;
        found = true;
      }
      if (!found) throw ConfigurationError("no critical value supplied for " + name);
    }
    const LevelSet* levels = nullptr;
    if (needs_levels(stats)) {
      const auto key = std::make_tuple(model.n, model.dim, static_cast<int>(model.shape));
      auto it = level_cache.find(key);
      if (it == level_cache.end()) it = level_cache.emplace(key, build_levels(model.shape, model.n)).first;
      levels = &it->second;
    }
    const std::uint64_t config_seed = rng::derive_seed(seed, j, kPowerPurpose);
    std::vector<unsigned char> reject(static_cast<std::size_t>(reps) * stats.size());
    parallel_for(reps, workers, [&](std::int64_t i) {
      SignalConfig c = base;
      c.seed = rng::derive_seed(config_seed, static_cast<std::uint64_t>(i));
      const Dataset data = generate(c);
      for (std::size_t s = 0; s < stats.size(); ++s) {
        const double v = evaluate_stat(stats[s], data.grid, levels).value;
        reject[static_cast<std::size_t>(i) * stats.size() + s] = v > cv[s];
      }
    });
    for (std::size_t s = 0; s < stats.size(); ++s) {
      PowerRow row;
      row.config = base;
      row.statistic = stats[s].name();
      row.critical_value = cv[s];
      row.reps = reps;
      for (std::int64_t i = 0; i < reps; ++i) row.rejections += reject[static_cast<std::size_t>(i) * stats.size() + s];
      row.power = static_cast<double>(row.rejections) / static_cast<double>(reps);
      row.std_error = std::sqrt(row.power * (1.0 - row.power) / static_cast<double>(reps));
      rows.push_back(row);
    }
  }
  return rows;
}

std::string to_string(TailCheck which) {
  switch (which) {
    case TailCheck::bj_iii:
      return "bj_iii";
    case TailCheck::hc_iv:
      return "hc_iv";
    case TailCheck::bb_i:
      return "bb_i";
    case TailCheck::loglik_ii:
      return "loglik_ii";
  }
  return "?";
}

TailCheck parse_tail_check(const std::string& text) {
  if (text == "bj_iii") return TailCheck::bj_iii;
  if (text == "hc_iv") return TailCheck::hc_iv;
  if (text == "bb_i") return TailCheck::bb_i;
  if (text == "loglik_ii") return TailCheck::loglik_ii;
  throw ConfigurationError("unknown tail check '" + text + "' (expected bj_iii, hc_iv, bb_i, loglik_ii)");
}

double bj_two_sided_draw(std::int64_t n, std::uint64_t seed) { return bj_two_sided(sorted_uniforms(n, seed)); }

double loglik_draw(std::int64_t n, double a, double b, std::uint64_t seed) {
  return loglik_sup(sorted_uniforms(n, seed), a, b);
}

double hc_draw(std::int64_t n, std::uint64_t seed) { return hc(sorted_uniforms(n, seed)); }

double bridge_sup_draw(double a, double b, int grid_log2, std::uint64_t seed) {
  if (!(a > 0.0 && a < b && b < 1.0)) throw DomainError("bridge sup needs 0 < a < b < 1");
  if (grid_log2 < 1 || grid_log2 > 24) throw ConfigurationError("bridge grid must have 2^1 .. 2^24 steps");
  const std::int64_t steps = std::int64_t{1} << grid_log2;
  const rng::Philox4x32 gen(seed);
  // Normals: index 0 for W(a), 1..steps for increments, steps + 1 for W(1) - W(b).
  const auto normal = [&](std::int64_t k) { return rng::normal_pair(gen, 0, static_cast<std::uint64_t>(k / 2))[k % 2]; };
  const double dt = (b - a) / static_cast<double>(steps);
  const double sdt = std::sqrt(dt);
  thread_local std::vector<double> path;
  path.resize(static_cast<std::size_t>(steps) + 1);
  double w = std::sqrt(a) * normal(0);
  path[0] = w;
  for (std::int64_t k = 1; k <= steps; ++k) {
    w += sdt * normal(k);
    path[static_cast<std::size_t>(k)] = w;
  }
  const double w1 = w + std::sqrt(1.0 - b) * normal(steps + 1);
  double best = -std::numeric_limits<double>::infinity();
  for (std::int64_t k = 0; k <= steps; ++k) {
    const double t = a + static_cast<double>(k) * dt;
    best = std::max(best, (path[static_cast<std::size_t>(k)] - t * w1) / std::sqrt(t * (1.0 - t)));
  }
  return best;
}

TailReport verify_tail_bound(TailCheck which, const std::vector<double>& etas, const TailOptions& o) {
  check_reps(o.reps, 1000);
  if (etas.empty()) throw ConfigurationError("empty eta grid");
  for (double eta : etas) {
    if (!(eta > 0.0)) throw DomainError("eta values must be positive");
  }
  if (which == TailCheck::hc_iv) {
    if (o.n < 16) throw DomainError("hc_iv needs n >= 16");
    const double floor = std::sqrt(o.D * std::log(std::log(static_cast<double>(o.n))));
    for (double eta : etas) {
      if (eta < floor) throw DomainError("hc_iv needs eta >= sqrt(D log log n) = " + std::to_string(floor));
    }
  }
  std::vector<double> draws(static_cast<std::size_t>(o.reps));
  const std::uint64_t base = rng::derive_seed(o.seed, static_cast<std::uint64_t>(which), kTailPurpose);
  parallel_for(o.reps, o.workers, [&](std::int64_t i) {
    const std::uint64_t s = rng::derive_seed(base, static_cast<std::uint64_t>(i));
    double v = 0.0;
    switch (which) {
      case TailCheck::bj_iii:
        v = bj_two_sided_draw(o.n, s);
        break;
      case TailCheck::loglik_ii:
        v = loglik_draw(o.n, o.a, o.b, s);
        break;
      case TailCheck::bb_i:
        v = bridge_sup_draw(o.a, o.b, o.bridge_log2, s);
        break;
      case TailCheck::hc_iv:
        v = hc_draw(o.n, s);
        break;
    }
    draws[static_cast<std::size_t>(i)] = v;
  });
  TailReport report;
  report.which = which;
  report.options = o;
  const auto reps = static_cast<double>(o.reps);
  for (double eta : etas) {
    TailRow row;
    row.eta = eta;
    const auto hits = std::count_if(draws.begin(), draws.end(), [&](double v) { return v > eta; });
    row.empirical = static_cast<double>(hits) / reps;
    row.std_error = std::sqrt(row.empirical * (1.0 - row.empirical) / reps);
    report.rows.push_back(row);
    if (which == TailCheck::hc_iv) report.calibrated_C = std::max(report.calibrated_C, eta * row.empirical);
  }
  for (auto& row : report.rows) {
    switch (which) {
      case TailCheck::bj_iii:
        row.bound = bj_tail_bound(row.eta, o.n, o.K);
        break;
      case TailCheck::loglik_ii:
        row.bound = ks_loglik_bound(row.eta, o.a, o.b, o.n);
        break;
      case TailCheck::bb_i:
        row.bound = bb_sup_bound(row.eta, o.a, o.b);
        break;
      case TailCheck::hc_iv:
        row.bound = hc_tail_bound(row.eta, o.n, report.calibrated_C, o.D);
        break;
    }
    row.pass = row.empirical <= row.bound + 3.0 * row.std_error;
  }
  return report;
}

}  // namespace shc
