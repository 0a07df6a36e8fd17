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

#include "shc/score_max.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>

namespace shc {

namespace {

bool score_order(const std::pair<double, std::int64_t>& a, const std::pair<double, std::int64_t>& b) {
  return a.first > b.first || (a.first == b.first && a.second < b.second);
}

// Edge p-value tables, one per bucket count, built on first use.
const std::vector<double>& edge_table(int log2_buckets) {
  constexpr int kTables = ScoreMaximizer::kMaxBucketsLog2 - ScoreMaximizer::kMinBucketsLog2 + 1;
  static std::array<std::once_flag, kTables> once;
  static std::array<std::vector<double>, kTables> tables;
  const int slot = log2_buckets - ScoreMaximizer::kMinBucketsLog2;
  std::call_once(once[static_cast<std::size_t>(slot)], [&] {
    const int buckets = 1 << log2_buckets;
    const double width = (ScoreMaximizer::kHigh - ScoreMaximizer::kLow) / buckets;
    auto& t = tables[static_cast<std::size_t>(slot)];
    t.resize(static_cast<std::size_t>(buckets) + 3);
    for (int k = -1; k <= buckets + 1; ++k) {
      t[static_cast<std::size_t>(k + 1)] = gauss::pvalue_of_score(ScoreMaximizer::kLow + k * width);
    }
  });
  return tables[static_cast<std::size_t>(slot)];
}

ScoreMax empty_result(const GofFamily& family, ScoreMax best) {
  if (family.has_indicator() && best.value <= 0.0) return {0.0, 0, -1, 0.0};
  return best;
}

}  // namespace

ScoreMax max_over_scores_sorted(const GofFamily& family, std::vector<std::pair<double, std::int64_t>> scored) {
  const auto n = static_cast<std::int64_t>(scored.size());
  const std::int64_t m = n / 2;
  ScoreMax best{-std::numeric_limits<double>::infinity(), 0, -1, 0.0};
  if (m == 0) return empty_result(family, best);
  std::partial_sort(scored.begin(), scored.begin() + m, scored.end(), score_order);
  for (std::int64_t i = 1; i <= m; ++i) {
    const auto& [z, idx] = scored[static_cast<std::size_t>(i - 1)];
    const double t = gof_term(family, i, n, gauss::pvalue_of_score(z));
    if (t > best.value) best = {t, i, idx, z};
  }
  return empty_result(family, best);
}

ScoreMaximizer::ScoreMaximizer(GofFamily family) : family_(family) {}

void ScoreMaximizer::configure(std::int64_t count) {
  int log2_buckets = kMinBucketsLog2;
  const double target = 16.0 * std::sqrt(static_cast<double>(count));
  while (log2_buckets < kMaxBucketsLog2 && std::ldexp(1.0, log2_buckets) < target) ++log2_buckets;
  buckets_ = 1 << log2_buckets;
  inv_width_ = buckets_ / (kHigh - kLow);
  edge_p_ = &edge_table(log2_buckets);
  const auto slots = static_cast<std::size_t>(buckets_) + 2;
  hist_.assign(slots, 0);
  above_.assign(slots, 0);
  refine_.assign(slots, 0);
}

ScoreMax ScoreMaximizer::finish(std::int64_t count) {
  const std::int64_t m = count / 2;
  std::sort(gathered_.begin(), gathered_.end(), score_order);
  ScoreMax best{-std::numeric_limits<double>::infinity(), 0, -1, 0.0};
  int current = -1;
  std::int64_t rank = 0;
  for (const auto& [z, idx] : gathered_) {
    const int b = bucket_of(z);
    if (b != current) {
      current = b;
      rank = above_[static_cast<std::size_t>(b)];
    }
    ++rank;
    if (rank > m) continue;
    const double t = gof_term(family_, rank, count, gauss::pvalue_of_score(z));
    if (t > best.value) best = {t, rank, idx, z};
  }
  return empty_result(family_, best);
}

}  // namespace shc
