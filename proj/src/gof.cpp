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

#include "shc/gof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "shc/errors.hpp"
#include "shc/gauss.hpp"

namespace shc {

namespace {

// x log(x / y) with the 0 log 0 = 0 convention.
double xlogxy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(x / y); }

double kl(double u, double v) { return xlogxy(u, v) + xlogxy(1.0 - u, 1.0 - v); }

// K_s(u, v) for s outside {0, 1}, written with expm1 to limit cancellation
// when u is close to v.
double k_generic(double s, double u, double v) {
  const double a = (s - 1.0) * std::log(u / v);
  const double b = (s - 1.0) * std::log1p(-u) - (s - 1.0) * std::log1p(-v);
  return (-u * std::expm1(a) - (1.0 - u) * std::expm1(b)) / (s * (1.0 - s));
}

std::vector<double> sorted_copy(std::span<const double> p) {
  std::vector<double> v;
  v.reserve(p.size());
  for (double x : p) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("p-values must lie in [0, 1]");
    v.push_back(gauss::clamp_pvalue(x));
  }
  if (!std::is_sorted(v.begin(), v.end())) std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

GofFamily GofFamily::phi(double s) {
  if (!(s >= -1.0 && s <= 2.0)) throw DomainError("phi-divergence index s must lie in [-1, 2]");
  return {Kind::phi, s};
}

std::string GofFamily::name() const {
  switch (kind) {
    case Kind::hc:
      return "hc";
    case Kind::hc_plus:
      return "hc+";
    case Kind::bj:
      return "bj";
    case Kind::phi: {
      std::string num = std::to_string(s);
      num.erase(num.find_last_not_of('0') + 1);
      if (num.back() == '.') num.pop_back();
      return "phi:" + num;
    }
  }
  return "?";
}

double gof_term(const GofFamily& family, std::int64_t i, std::int64_t n, double p) {
  const double u = static_cast<double>(i) / static_cast<double>(n);
  const double nn = static_cast<double>(n);
  switch (family.kind) {
    case GofFamily::Kind::hc:
      return std::sqrt(nn) * (u - p) / std::sqrt(p * (1.0 - p));
    case GofFamily::Kind::hc_plus:
      if (!(p < u)) return 0.0;
      return std::sqrt(nn) * (u - p) / std::sqrt(p * (1.0 - p));
    case GofFamily::Kind::bj:
      if (!(p < u)) return 0.0;
      return static_cast<double>(i) * std::log(u / p) + static_cast<double>(n - i) * std::log((1.0 - u) / (1.0 - p));
    case GofFamily::Kind::phi:
      if (!(p < u)) return 0.0;
      if (family.s == 1.0) return gof_term(GofFamily::bj(), i, n, p);
      if (family.s == 0.0) return nn * kl(p, u);
      return nn * k_generic(family.s, u, p);
  }
  return 0.0;
}

GofResult evaluate(const GofFamily& family, std::span<const double> pvalues) {
  const auto n = static_cast<std::int64_t>(pvalues.size());
  if (n < 2) throw DomainError("goodness-of-fit statistics need at least 2 p-values");
  const std::vector<double> p = sorted_copy(pvalues);
  GofResult best{-std::numeric_limits<double>::infinity(), 0};
  for (std::int64_t i = 1; i <= n / 2; ++i) {
    const double t = gof_term(family, i, n, p[static_cast<std::size_t>(i - 1)]);
    if (t > best.value) best = {t, i};
  }
  if (family.has_indicator() && best.value <= 0.0) best = {0.0, 0};
  return best;
}

double hc(std::span<const double> pvalues) { return evaluate(GofFamily::hc(), pvalues).value; }
double hc_plus(std::span<const double> pvalues) { return evaluate(GofFamily::hc_plus(), pvalues).value; }
double bj(std::span<const double> pvalues) { return evaluate(GofFamily::bj(), pvalues).value; }
double phi_divergence(std::span<const double> pvalues, double s) {
  return evaluate(GofFamily::phi(s), pvalues).value;
}

double bj_two_sided(std::span<const double> sorted_pvalues) {
  const auto n = static_cast<std::int64_t>(sorted_pvalues.size());
  if (n < 2) throw DomainError("bj_two_sided needs at least 2 p-values");
  const double nn = static_cast<double>(n);
  double best = 0.0;
  for (std::int64_t i = 1; i < n; ++i) {
    // F_n = i/n on [p_(i), p_(i+1)); K(u, .) is convex so the sup sits at an end.
    const double u = static_cast<double>(i) / nn;
    best = std::max({best, nn * kl(u, sorted_pvalues[static_cast<std::size_t>(i - 1)]),
                     nn * kl(u, sorted_pvalues[static_cast<std::size_t>(i)])});
  }
  best = std::max(best, nn * kl(1.0, sorted_pvalues.back()));
  return best;
}

double loglik_sup(std::span<const double> sorted_uniforms, double a, double b) {
  if (!(a > 0.0 && a < b && b < 1.0)) throw DomainError("loglik_sup requires 0 < a < b < 1");
  const auto n = static_cast<std::int64_t>(sorted_uniforms.size());
  if (n < 1) throw DomainError("loglik_sup needs a non-empty sample");
  const double nn = static_cast<double>(n);
  const auto lo = std::upper_bound(sorted_uniforms.begin(), sorted_uniforms.end(), a);
  const auto hi = std::upper_bound(sorted_uniforms.begin(), sorted_uniforms.end(), b);
  auto count = static_cast<double>(lo - sorted_uniforms.begin());
  double best = nn * kl(count / nn, a);
  for (auto it = lo; it != hi; ++it) {
    // Left limit at the jump, then the value after it.
    best = std::max(best, nn * kl(count / nn, *it));
    count += 1.0;
    best = std::max(best, nn * kl(count / nn, *it));
  }
  best = std::max(best, nn * kl(count / nn, b));
  return best;
}

}  // namespace shc
