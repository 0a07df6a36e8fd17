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
#include <span>
#include <string>
#include <vector>

// Goodness-of-fit statistics on p-value samples: higher criticism (with and
// without the p_(i) < i/n indicator), Berk-Jones and the phi-divergence
// family S+(s). All maxima run over 1 <= i <= floor(n/2).

namespace shc {

struct GofFamily {
  enum class Kind { hc, hc_plus, bj, phi };

  Kind kind = Kind::hc;
  double s = 2.0;  // only for Kind::phi

  static GofFamily hc() { return {Kind::hc, 2.0}; }
  static GofFamily hc_plus() { return {Kind::hc_plus, 2.0}; }
  static GofFamily bj() { return {Kind::bj, 1.0}; }
  // Throws DomainError for s outside [-1, 2]. s = 1 evaluates as Berk-Jones.
  static GofFamily phi(double s);

  // True for families whose terms vanish unless p_(i) < i/n.
  bool has_indicator() const { return kind != Kind::hc; }
  std::string name() const;
};

// Maximand for order statistic p = p_(i) of an n-sample. Indicator families
// return 0 when p >= i/n. Nondecreasing in i and nonincreasing in p.
double gof_term(const GofFamily& family, std::int64_t i, std::int64_t n, double p);

struct GofResult {
  double value = 0.0;
  // 1-based rank of the first maximizing order statistic; 0 when an
  // indicator family has no qualifying index.
  std::int64_t rank = 0;
};

// Statistic of a p-value sample; unsorted input is sorted first. Throws
// DomainError when n < 2.
GofResult evaluate(const GofFamily& family, std::span<const double> pvalues);

double hc(std::span<const double> pvalues);
double hc_plus(std::span<const double> pvalues);
double bj(std::span<const double> pvalues);
double phi_divergence(std::span<const double> pvalues, double s);

// Two-sided Berk-Jones sup over t in [p_(1), p_(n)] of n K_1(F_n(t), t),
// taken at both one-sided limits of each jump of F_n. Sorted input.
double bj_two_sided(std::span<const double> sorted_pvalues);

// sup over t in [a, b] of n K_1(F_n(t), t) for a sorted uniform sample.
double loglik_sup(std::span<const double> sorted_uniforms, double a, double b);

}  // namespace shc
