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

#include "shc/grid.hpp"
#include "shc/region.hpp"

// Multiple-blocks signal models on a line or a square grid.

namespace shc {

enum class Regime { sparse, dense };
enum class Placement { free_disjoint, grid_aligned };

std::string to_string(Regime regime);
std::string to_string(Placement placement);
Regime parse_regime(const std::string& text);
Placement parse_placement(const std::string& text);

// Sparse when beta / (1 - alpha) > 1/2.
Regime regime_for(double alpha, double beta);

struct SignalConfig {
  std::int32_t n = 4096;
  int dim = 1;
  Shape shape = Shape::interval;
  double alpha = 0.0;
  double beta = 0.5;
  Regime regime = Regime::sparse;
  double r = 0.0;
  Placement placement = Placement::free_disjoint;
  std::uint64_t seed = 1;
  bool signal = true;  // false draws pure noise

  std::int64_t cells() const;
  // Cells per block: round(n^alpha) in d = 1, round(n^alpha)^2 for squares,
  // and the smallest lattice ball with at least round(n^(2 alpha)) cells.
  std::int64_t block_cells() const;
  // Blocks: max(1, round(n^(d (1 - alpha - beta)))).
  std::int64_t block_count() const;
  std::int32_t block_side() const;  // squares only
  double ball_radius_sq() const;    // balls only

  // Throws ConfigurationError or DomainError on invalid parameters.
  void validate() const;
};

// Signal height from the sparse or dense calibration; 0 for null configs.
double calibrated_mu(const SignalConfig& config);

// r minus the optimal detection boundary for (alpha, beta).
double boundary_gap(const SignalConfig& config);

struct Dataset {
  SignalConfig config;
  double mu = 0.0;
  Grid grid;
  std::vector<Region> truth;
};

Dataset generate(const SignalConfig& config);

// Standard normal noise keyed by (seed, cell index).
void fill_noise(std::span<double> cells, std::uint64_t seed);
Grid null_grid(std::int32_t n, int dim, std::uint64_t seed);

// Random stream ids; the noise uses stream 0.
inline constexpr std::uint64_t kNoiseStream = 0;
inline constexpr std::uint64_t kPlacementStream = 1;

}  // namespace shc
