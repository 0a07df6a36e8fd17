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

#include <algorithm>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "shc/gauss.hpp"
#include "shc/gof.hpp"

// Goodness-of-fit statistic of the p-values Phi-bar(z_k) of a stream of
// standardized scores, without sorting the whole stream. Scores are binned
// into fixed buckets; bucket-level upper and lower bounds on the largest term
// (terms are monotone in both rank and p-value) leave only a few buckets to
// sort exactly. The result equals the full-sort evaluation bit for bit.

namespace shc {

struct ScoreMax {
  double value = 0.0;
  std::int64_t rank = 0;    // 1-based rank among scores sorted descending
  std::int64_t index = -1;  // position of the maximizing score in the stream
  double score = 0.0;
};

// Full sort of (z desc, index asc); reference path.
ScoreMax max_over_scores_sorted(const GofFamily& family, std::vector<std::pair<double, std::int64_t>> scored);

class ScoreMaximizer {
 public:
  // Bucket counts are powers of two between these bounds, about 16 sqrt(count),
  // so the rank spread inside a bulk bucket stays small next to the statistic.
  static constexpr int kMinBucketsLog2 = 12;
  static constexpr int kMaxBucketsLog2 = 17;
  static constexpr double kLow = -1.0;
  static constexpr double kHigh = 9.0;
  static constexpr std::int64_t kDirectLimit = 2048;

  explicit ScoreMaximizer(GofFamily family);

  const GofFamily& family() const { return family_; }

  // visit(fn) must call fn(index, z) for index = 0 .. count-1 and produce the
  // same z on every call; it is invoked at most twice.
  template <class Visit>
  ScoreMax run(std::int64_t count, Visit&& visit);

 private:
  int bucket_of(double z) const {
    if (!(z >= kLow)) return 0;
    if (z >= kHigh) return buckets_ + 1;
    const int b = 1 + static_cast<int>((z - kLow) * inv_width_);
    return b > buckets_ ? buckets_ : b;
  }
  // Clamped p-value at bucket edge k (edge k = kLow + k * width), k in [-1, buckets + 1].
  double edge_p(int k) const { return (*edge_p_)[static_cast<std::size_t>(k + 1)]; }

  void configure(std::int64_t count);
  ScoreMax finish(std::int64_t count);

  GofFamily family_;
  int buckets_ = 0;
  double inv_width_ = 0.0;
  const std::vector<double>* edge_p_ = nullptr;
  std::vector<std::int64_t> hist_;
  std::vector<std::int64_t> above_;  // scores in strictly higher buckets
  std::vector<unsigned char> refine_;
  std::vector<std::pair<double, std::int64_t>> gathered_;
};

template <class Visit>
ScoreMax ScoreMaximizer::run(std::int64_t count, Visit&& visit) {
  gathered_.clear();
  if (count <= kDirectLimit) {
    gathered_.reserve(static_cast<std::size_t>(count));
    visit([&](std::int64_t idx, double z) { gathered_.emplace_back(z, idx); });
    return max_over_scores_sorted(family_, std::move(gathered_));
  }
  configure(count);
  visit([&](std::int64_t, double z) { ++hist_[static_cast<std::size_t>(bucket_of(z))]; });

  const std::int64_t m = count / 2;
  double lower = -std::numeric_limits<double>::infinity();
  std::int64_t cum = 0;
  std::vector<std::pair<int, double>> upper;  // (bucket, upper bound)
  for (int b = buckets_ + 1; b >= 0; --b) {
    above_[static_cast<std::size_t>(b)] = cum;
    const std::int64_t h = hist_[static_cast<std::size_t>(b)];
    refine_[static_cast<std::size_t>(b)] = 0;
    if (h == 0 || cum >= m) {
      cum += h;
      continue;
    }
    cum += h;
    const std::int64_t r = std::min(cum, m);
    const double p_hi = b == buckets_ + 1 ? gauss::kMinPValue : edge_p(b + 1);
    const double p_lo = b == 0 ? gauss::kMaxPValue : edge_p(b == buckets_ + 1 ? buckets_ - 1 : b - 2);
    upper.emplace_back(b, gof_term(family_, r, count, p_hi));
    lower = std::max(lower, gof_term(family_, r, count, p_lo));
  }
  const double slack = 1e-9 * std::max(1.0, std::abs(lower));
  std::int64_t selected = 0;
  for (const auto& [b, ub] : upper) {
    if (ub < lower - slack) continue;
    if (family_.has_indicator() && ub <= 0.0) continue;
    refine_[static_cast<std::size_t>(b)] = 1;
    selected += hist_[static_cast<std::size_t>(b)];
  }
  gathered_.reserve(static_cast<std::size_t>(selected));
  visit([&](std::int64_t idx, double z) {
    if (refine_[static_cast<std::size_t>(bucket_of(z))]) gathered_.emplace_back(z, idx);
  });
  return finish(count);
}

}  // namespace shc
