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

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "shc/errors.hpp"
#include "shc/models.hpp"

using namespace shc;

namespace {

SignalConfig sparse_line() {
  SignalConfig c;
  c.n = 10000;
  c.alpha = 0.2;
  c.beta = 0.65;
  c.regime = Regime::sparse;
  c.r = 0.2572;
  return c;
}

void check_truth(const Dataset& d) {
  const auto& c = d.config;
  CHECK(static_cast<std::int64_t>(d.truth.size()) == c.block_count());
  std::set<std::pair<int, int>> used;
  std::size_t total = 0;
  for (const auto& r : d.truth) {
    CHECK(r.size() == c.block_cells());
    for (const auto& s : r.spans()) {
      for (int y = s.col_lo; y <= s.col_hi; ++y) {
        used.insert({s.row, y});
        ++total;
      }
    }
  }
  CHECK(used.size() == total);
}

}  // namespace

TEST_CASE("calibration") {
  auto c = sparse_line();
  CHECK(calibrated_mu(c) == doctest::Approx(0.866539411728102).epsilon(1e-12));
  c.alpha = 0.0;
  c.beta = 0.7;
  CHECK(calibrated_mu(c) == doctest::Approx(std::sqrt(2.0 * 0.2572 * std::log(10000.0))).epsilon(1e-14));

  SignalConfig dense;
  dense.n = 10000;
  dense.alpha = 0.3;
  dense.beta = 0.25;
  dense.regime = Regime::dense;
  dense.r = 0.05;
  CHECK(calibrated_mu(dense) == doctest::Approx(0.398107170553497).epsilon(1e-12));

  dense.dim = 2;
  dense.n = 64;
  dense.shape = Shape::rectangle;
  CHECK_THROWS_AS(calibrated_mu(dense), ConfigurationError);
}

TEST_CASE("boundary gap") {
  auto c = sparse_line();
  CHECK(std::abs(boundary_gap(c)) < 1e-4);
  c.beta = 0.48;
  c.r = 0.08;
  CHECK(std::abs(boundary_gap(c)) < 1e-12);
  c.alpha = 0.3;
  c.beta = 0.25;
  c.regime = Regime::dense;
  c.r = -0.10;
  CHECK(std::abs(boundary_gap(c)) < 1e-12);
}

TEST_CASE("regime selection and parsing") {
  CHECK(regime_for(0.2, 0.65) == Regime::sparse);
  CHECK(regime_for(0.2, 0.48) == Regime::sparse);
  CHECK(regime_for(0.3, 0.25) == Regime::dense);
  CHECK(parse_regime("dense") == Regime::dense);
  CHECK(parse_placement("grid") == Placement::grid_aligned);
  CHECK(parse_placement("free_disjoint") == Placement::free_disjoint);
  CHECK_THROWS_AS(parse_placement("anywhere"), ConfigurationError);
}

TEST_CASE("null data") {
  const auto g = null_grid(1000000, 1, 11);
  double sum = 0.0;
  for (double x : g.values()) sum += x;
  CHECK(std::abs(sum / 1e6) < 4.0 / 1000.0);

  SignalConfig c = sparse_line();
  c.signal = false;
  const auto d = generate(c);
  CHECK(d.mu == 0.0);
  CHECK(d.truth.empty());
}

TEST_CASE("truth placement in one dimension") {
  for (auto placement : {Placement::free_disjoint, Placement::grid_aligned}) {
    auto c = sparse_line();
    c.placement = placement;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      c.seed = seed;
      const auto d = generate(c);
      check_truth(d);
      if (placement == Placement::grid_aligned) {
        for (const auto& r : d.truth) CHECK(r.rows().lo % c.block_cells() == 0);
      }
    }
  }
  // single block model
  SignalConfig one;
  one.n = 4096;
  one.alpha = 0.4;
  one.beta = 0.6;
  one.r = 0.5;
  CHECK(one.block_count() == 1);
  check_truth(generate(one));
}

TEST_CASE("signal is added on the truth cells only") {
  auto c = sparse_line();
  c.n = 4096;
  c.seed = 3;
  const auto d = generate(c);
  const auto noise = null_grid(c.n, 1, c.seed);
  std::vector<int> hit(static_cast<std::size_t>(c.n) + 1, 0);
  for (const auto& r : d.truth) {
    for (int i = r.rows().lo + 1; i <= r.rows().hi; ++i) hit[static_cast<std::size_t>(i)] = 1;
  }
  for (int i = 1; i <= c.n; ++i) {
    CHECK(d.grid.at(i) == doctest::Approx(noise.at(i) + (hit[static_cast<std::size_t>(i)] ? d.mu : 0.0)));
  }
}

TEST_CASE("truth placement in two dimensions") {
  SignalConfig c;
  c.n = 64;
  c.dim = 2;
  c.alpha = 0.3;
  c.beta = 0.3;
  c.r = 0.5;
  for (Shape shape : {Shape::rectangle, Shape::ball}) {
    for (auto placement : {Placement::free_disjoint, Placement::grid_aligned}) {
      c.shape = shape;
      c.placement = placement;
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        c.seed = seed;
        check_truth(generate(c));
      }
    }
  }
  c.shape = Shape::ball;
  CHECK(c.block_cells() >= std::llround(std::pow(64.0, 0.6)));
}

TEST_CASE("infeasible configurations") {
  SignalConfig c;
  c.n = 10;  // 3 blocks of 4 cells
  c.alpha = 0.55;
  c.beta = 0.01;
  c.r = 0.5;
  CHECK_THROWS_AS(generate(c), ConfigurationError);
  c.alpha = 1.2;
  CHECK_THROWS_AS(generate(c), DomainError);
  SignalConfig line;
  line.shape = Shape::ball;
  CHECK_THROWS_AS(line.validate(), ConfigurationError);
}

TEST_CASE("generation is reproducible") {
  auto c = sparse_line();
  c.seed = 99;
  const auto a = generate(c);
  const auto b = generate(c);
  CHECK(a.truth == b.truth);
  CHECK(std::equal(a.grid.values().begin(), a.grid.values().end(), b.grid.values().begin()));
}
