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

#include "shc/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shc/errors.hpp"

namespace shc {

namespace {

void check_params(double alpha, double beta) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in [0, 1)");
  if (!(alpha + beta > 0.0 && alpha + beta <= 1.0)) throw DomainError("alpha + beta must lie in (0, 1]");
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
}

double log_odds_ratio(double a, double b) {
  if (!(a > 0.0 && a < b && b < 1.0)) throw DomainError("tail bounds need 0 < a < b < 1");
  return std::log(b * (1.0 - a) / (a * (1.0 - b)));
}

void check_eta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("eta must be positive and finite");
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Two-branch sparse boundary on the effective sparsity t = beta / (1 - alpha),
// scaled by (1 - alpha).
BoundaryResult sparse_boundary(double alpha, double beta, double cut) {
  const double rest = 1.0 - alpha;
  if (beta / rest < cut) return {beta - rest / 2.0, Branch::moderately_sparse, "", 0.0};
  const double d = std::sqrt(rest) - std::sqrt(std::max(0.0, rest - beta));
  return {d * d, Branch::very_sparse, "", 0.0};
}

}  // namespace

std::string to_string(Branch branch) {
  switch (branch) {
    case Branch::moderately_sparse:
      return "moderately_sparse";
    case Branch::very_sparse:
      return "very_sparse";
    case Branch::dense:
      return "dense";
  }
  return "?";
}

BoundaryResult rho_star(double alpha, double beta) {
  check_params(alpha, beta);
  const double rest = 1.0 - alpha;
  BoundaryResult out;
  if (beta / rest > 0.5) {
    out = sparse_boundary(alpha, beta, 0.75);
    out.note = "attained by every structured phi-divergence under the sparse calibration";
  } else {
    out = {beta - rest / 2.0, Branch::dense, "attained by sHC under the dense calibration", 0.0};
  }
  return out;
}

BoundaryResult rho_star_pen(double alpha, double beta) {
  check_params(alpha, beta);
  const double rest = 1.0 - alpha;
  if (std::abs(beta / rest - 0.5) <= 1e-12) {
    throw DomainError("penalized scan boundary is undefined at beta / (1 - alpha) = 1/2");
  }
  if (beta / rest < 0.5) return {beta - rest / 2.0, Branch::dense, "penalized scan, dense calibration", 0.0};
  BoundaryResult out = sparse_boundary(alpha, beta, 0.5);
  out.branch = beta / rest < 0.75 ? Branch::moderately_sparse : Branch::very_sparse;
  out.note = "penalized scan, sparse calibration";
  return out;
}

BoundaryResult rho_star_unstructured_hc(double alpha, double beta) {
  check_params(alpha, beta);
  if (beta > 0.5) {
    BoundaryResult out;
    if (beta < 0.75) {
      out = {beta - 0.5, Branch::moderately_sparse, "", alpha};
    } else {
      const double d = 1.0 - std::sqrt(1.0 - beta);
      out = {d * d, Branch::very_sparse, "", alpha};
    }
    out.note = "plain HC: boundary multiplied by n^alpha";
    return out;
  }
  return {beta - (1.0 - alpha) / 2.0, Branch::dense, "plain HC, dense calibration", 0.0};
}

double bj_tail_bound(double eta, std::int64_t n, double K) {
  check_eta(eta);
  if (!(K > 1.0)) throw DomainError("bj_tail_bound requires K > 1");
  if (n < 2) throw DomainError("bj_tail_bound requires n >= 2");
  const double nn = static_cast<double>(n);
  return clamp01(22.0 * K * std::log(nn) * (eta + 1.0) * std::exp(-eta) + 2.0 * std::pow(nn, 1.0 - K));
}

double bb_sup_bound(double eta, double a, double b) {
  check_eta(eta);
  const double lr = log_odds_ratio(a, b);
  return clamp01((2.0 / eta + eta * lr) / std::sqrt(2.0 * std::numbers::pi) * std::exp(-eta * eta / 2.0));
}

double ks_loglik_bound(double eta, double a, double b, std::int64_t n) {
  check_eta(eta);
  if (n < 1) throw DomainError("ks_loglik_bound requires n >= 1");
  const double lr = log_odds_ratio(a, b);
  return clamp01(2.0 * std::numbers::e * (eta * lr + 1.0) * std::exp(-eta));
}

double hc_tail_bound(double eta, std::int64_t n, double C, double D) {
  check_eta(eta);
  if (!(D > 2.0)) throw DomainError("hc_tail_bound requires D > 2");
  if (n < 16) throw DomainError("hc_tail_bound requires n >= 16 so that log log n > 0");
  if (!(C >= 0.0)) throw DomainError("hc_tail_bound requires C >= 0");
  const double floor = std::sqrt(D * std::log(std::log(static_cast<double>(n))));
  if (eta < floor) throw DomainError("hc_tail_bound requires eta >= sqrt(D log log n)");
  return clamp01(C / eta);
}

}  // namespace shc
