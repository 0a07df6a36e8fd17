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
#include <string>

// Detection boundaries and finite-sample tail bounds.

namespace shc {

enum class Branch { moderately_sparse, very_sparse, dense };

std::string to_string(Branch branch);

struct BoundaryResult {
  double rho_star = 0.0;
  Branch branch = Branch::dense;
  std::string note;
  // Unstructured HC only: the boundary is rho_star * n^scaling_exponent.
  double scaling_exponent = 0.0;
};

// Optimal boundary for the multiple blocks model; sparse when
// beta / (1 - alpha) > 1/2. Requires 0 <= alpha < 1 and 0 < alpha + beta <= 1.
BoundaryResult rho_star(double alpha, double beta);

// Boundary of the penalized scan. Throws DomainError at beta / (1 - alpha) = 1/2.
BoundaryResult rho_star_pen(double alpha, double beta);

// Boundary of plain HC, which ignores the block structure: the unstructured
// boundary in beta, inflated by n^alpha in the sparse case.
BoundaryResult rho_star_unstructured_hc(double alpha, double beta);

// P(BJ_n > eta) <= min(1, 22 K log(n) (eta + 1) e^-eta + 2 n^(1 - K)).
double bj_tail_bound(double eta, std::int64_t n, double K);

// P(sup_[a,b] U(t)/sqrt(t(1-t)) > eta) for a Brownian bridge U.
double bb_sup_bound(double eta, double a, double b);

// P(sup_[a,b] n K_1(F_n(t), t) > eta); does not depend on n.
double ks_loglik_bound(double eta, double a, double b, std::int64_t n);

// C / eta, valid for eta >= sqrt(D log log n) with D > 2.
double hc_tail_bound(double eta, std::int64_t n, double C, double D = 3.0);

}  // namespace shc
