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
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "shc/models.hpp"
#include "shc/regions.hpp"
#include "shc/structured.hpp"

// Monte Carlo: null distributions, critical values, power and empirical
// checks of the tail bounds. Replicate i always uses the seed
// derive_seed(master, i, purpose), so results do not depend on the number of
// workers.

namespace shc {

inline constexpr const char* kSeedRule = "philox4x32-10:derive(master,rep,purpose)";

// Worker count from SHC_WORKERS, else the hardware concurrency.
int default_workers();

// Calls fn(i) for i in [0, count) on `workers` threads; fn must only write
// state owned by index i. The first exception thrown is rethrown.
template <class Fn>
void parallel_for(std::int64_t count, int workers, Fn&& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const auto w = static_cast<std::int64_t>(workers);
  for (std::int64_t t = 0; t < w; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::int64_t i = t; i < count; i += w) fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct NullModel {
  std::int32_t n = 4096;
  int dim = 1;
  Shape shape = Shape::interval;
};

struct McReport {
  std::string statistic;
  NullModel model;
  std::int64_t reps = 0;
  std::vector<double> values;  // replicate order
  std::uint64_t master_seed = 0;
  std::string seed_rule = kSeedRule;
  double wall_time = 0.0;

  std::vector<double> sorted_values() const;
};

// ceil((1 - level) * reps)-th smallest value. Throws DomainError unless
// 0 < level < 1.
double critical_value(std::span<const double> values, double level);
double critical_value(const McReport& report, double level);

// Evaluates every statistic on the same `reps` null datasets. `levels` may be
// null, in which case they are built from the model.
std::vector<McReport> simulate_null(const std::vector<StatSpec>& stats, const NullModel& model, std::int64_t reps,
                                    std::uint64_t seed, int workers, const LevelSet* levels = nullptr);
McReport simulate_null(const StatSpec& stat, const NullModel& model, std::int64_t reps, std::uint64_t seed,
                       int workers);

struct CriticalValue {
  std::string statistic;
  NullModel model;
  double level = 0.05;
  double value = 0.0;
};

struct PowerRow {
  SignalConfig config;
  std::string statistic;
  double critical_value = 0.0;
  std::int64_t reps = 0;
  std::int64_t rejections = 0;
  double power = 0.0;
  double std_error = 0.0;
};

// For each config and statistic: fraction of reps with statistic > critical
// value. Every statistic needs a critical value for the config's (n, d, shape);
// a mismatch throws ConfigurationError.
std::vector<PowerRow> power_curve(const std::vector<SignalConfig>& configs, const std::vector<StatSpec>& stats,
                                  const std::vector<CriticalValue>& critvals, std::int64_t reps, std::uint64_t seed,
                                  int workers);

enum class TailCheck { bj_iii, hc_iv, bb_i, loglik_ii };

std::string to_string(TailCheck which);
TailCheck parse_tail_check(const std::string& text);

struct TailOptions {
  std::int64_t n = 1000;
  std::int64_t reps = 10000;
  double a = 0.25;
  double b = 0.75;
  double K = 2.0;
  int bridge_log2 = 16;
  double D = 3.0;
  std::uint64_t seed = 1;
  int workers = 1;
};

struct TailRow {
  double eta = 0.0;
  double empirical = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  bool pass = false;  // empirical <= bound + 3 std_error
};

struct TailReport {
  TailCheck which = TailCheck::bj_iii;
  TailOptions options;
  std::vector<TailRow> rows;
  // hc_iv only: max over the eta grid of eta * P(HC_n > eta), used as C.
  double calibrated_C = 0.0;
};

TailReport verify_tail_bound(TailCheck which, const std::vector<double>& etas, const TailOptions& options);

// One draw of the statistic behind each check, for the given replicate seed.
double bj_two_sided_draw(std::int64_t n, std::uint64_t seed);
double loglik_draw(std::int64_t n, double a, double b, std::uint64_t seed);
double bridge_sup_draw(double a, double b, int grid_log2, std::uint64_t seed);
double hc_draw(std::int64_t n, std::uint64_t seed);

}  // namespace shc
