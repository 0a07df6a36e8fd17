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

#include "shc/gauss.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "shc/errors.hpp"

namespace shc::gauss {

double upper_tail(double z) {
  if (!std::isfinite(z)) throw DomainError("upper_tail: non-finite argument " + std::to_string(z));
  return upper_tail_unchecked(z);
}

double density(double z) {
  constexpr double kInvSqrt2Pi = 0.39894228040143267794;
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double upper_tail_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("upper_tail_inv: probability must lie in (0, 1), got " + std::to_string(p));
  }
  // upper_tail is strictly decreasing, so bisect on a bracket that covers every
  // representable p, then polish with Newton steps.
  double lo = -40.0;
  double hi = 40.0;
  while (upper_tail_unchecked(hi) > p) hi *= 2.0;
  while (upper_tail_unchecked(lo) < p) lo *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (upper_tail_unchecked(mid) > p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double z = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double f = density(z);
    if (f <= std::numeric_limits<double>::min()) break;
    const double step = (upper_tail_unchecked(z) - p) / f;
    const double next = z + step;
    if (!(next >= lo && next <= hi)) break;
    z = next;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

}  // namespace shc::gauss
