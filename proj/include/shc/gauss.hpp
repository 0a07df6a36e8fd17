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

// Standard normal tail utilities.

namespace shc::gauss {

// Clamp range applied to p-values before they enter log or ratio expressions.
inline constexpr double kMinPValue = 1e-300;
inline constexpr double kMaxPValue = 1.0 - 1e-16;

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

// 1 - Phi(z) without argument checks. erfc is used on the non-negative side
// and reflected for z < 0 so neither tail loses relative accuracy.
inline double upper_tail_unchecked(double z) {
  if (z >= 0.0) return 0.5 * std::erfc(z * kInvSqrt2);
  return 1.0 - 0.5 * std::erfc(-z * kInvSqrt2);
}

inline double clamp_pvalue(double p) {
  if (p < kMinPValue) return kMinPValue;
  if (p > kMaxPValue) return kMaxPValue;
  return p;
}

// Clamped p-value of a standardized score; the hot path of every statistic.
inline double pvalue_of_score(double z) { return clamp_pvalue(upper_tail_unchecked(z)); }

// 1 - Phi(z). Unclamped: for large z the result may fall below kMinPValue
// (down to 0). Throws DomainError for non-finite z.
double upper_tail(double z);

// Inverse of upper_tail on (0, 1). Throws DomainError outside the open interval.
double upper_tail_inv(double p);

double density(double z);

}  // namespace shc::gauss
