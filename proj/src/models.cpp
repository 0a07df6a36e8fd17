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

#include "shc/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shc/errors.hpp"
#include "shc/rng.hpp"
#include "shc/theory.hpp"

namespace shc {

namespace {

using rng::Philox4x32;
using rng::Stream;

constexpr int kRejectionAttempts = 10000;

std::int64_t ball_cells(double radius_sq) {
  std::int64_t cells = 0;
  for (const auto& row : lattice_ball_rows(radius_sq)) cells += 2 * row.half_width + 1;
  return cells;
}

std::int32_t ball_reach(double radius_sq) {
  std::int32_t reach = 0;
  for (const auto& row : lattice_ball_rows(radius_sq)) reach = std::max(reach, std::abs(row.dx));
  return reach;
}

// Uniform m-subset of {0, .., total - 1} in increasing order (selection sampling).
std::vector<std::int64_t> choose_sorted(Stream& rng, std::int64_t total, std::int64_t m) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(m));
  for (std::int64_t t = 0; t < total && static_cast<std::int64_t>(out.size()) < m; ++t) {
    const auto need = static_cast<std::uint64_t>(m - static_cast<std::int64_t>(out.size()));
    if (rng.below(static_cast<std::uint64_t>(total - t)) < need) out.push_back(t);
  }
  return out;
}

std::vector<Region> place_line(const SignalConfig& c, Stream& rng) {
  const std::int64_t b = c.block_cells();
  const std::int64_t m = c.block_count();
  std::vector<Region> truth;
  if (c.placement == Placement::grid_aligned) {
    for (std::int64_t slot : choose_sorted(rng, c.n / b, m)) {
      truth.push_back(Region::interval(static_cast<std::int32_t>(slot * b), static_cast<std::int32_t>((slot + 1) * b)));
    }
    return truth;
  }
  // Gap bijection: m sorted positions among n - m (b - 1) slots map to
  // starts pos_g + g (b - 1), one-to-one with disjoint arrangements.
  const std::int64_t slots = c.n - m * (b - 1);
  std::int64_t g = 0;
  for (std::int64_t pos : choose_sorted(rng, slots, m)) {
    const std::int64_t start = pos + g * (b - 1);
    truth.push_back(Region::interval(static_cast<std::int32_t>(start), static_cast<std::int32_t>(start + b)));
    ++g;
  }
  return truth;
}

Region square_at(std::int32_t x0, std::int32_t y0, std::int32_t side) {
  return Region::rectangle({x0, x0 + side}, {y0, y0 + side});
}

std::vector<Region> place_plane(const SignalConfig& c, Stream& rng) {
  const std::int64_t m = c.block_count();
  const bool ball = c.shape == Shape::ball;
  const double r2 = ball ? c.ball_radius_sq() : 0.0;
  const std::int32_t reach = ball ? ball_reach(r2) : 0;
  const std::int32_t side = ball ? 2 * reach + 1 : c.block_side();
  const auto make = [&](std::int32_t x0, std::int32_t y0) {
    // (x0, y0) is the lower corner of the side x side tile holding the block.
    return ball ? Region::ball(x0 + reach + 1, y0 + reach + 1, r2, c.n) : square_at(x0, y0, side);
  };
  std::vector<Region> truth;
  if (c.placement == Placement::grid_aligned) {
    const std::int64_t per_axis = c.n / side;
    for (std::int64_t slot : choose_sorted(rng, per_axis * per_axis, m)) {
      truth.push_back(make(static_cast<std::int32_t>(slot / per_axis * side),
                           static_cast<std::int32_t>(slot % per_axis * side)));
    }
  } else {
    const auto positions = static_cast<std::uint64_t>(c.n - side + 1);
    const auto n = static_cast<std::size_t>(c.n);
    std::vector<unsigned char> used(n * n);
    bool placed = false;
    for (int attempt = 0; attempt < kRejectionAttempts && !placed; ++attempt) {
      std::fill(used.begin(), used.end(), 0);
      truth.clear();
      placed = true;
      for (std::int64_t g = 0; g < m && placed; ++g) {
        const auto x0 = static_cast<std::int32_t>(rng.below(positions));
        const auto y0 = static_cast<std::int32_t>(rng.below(positions));
        Region block = make(x0, y0);
        for (const auto& s : block.spans()) {
          for (std::int32_t y = s.col_lo; y <= s.col_hi && placed; ++y) {
            auto& cell = used[static_cast<std::size_t>(s.row - 1) * n + static_cast<std::size_t>(y - 1)];
            if (cell) placed = false;
            cell = 1;
          }
        }
        truth.push_back(std::move(block));
      }
    }
    if (!placed) {
      throw ConfigurationError("could not place " + std::to_string(m) + " disjoint blocks after " +
                               std::to_string(kRejectionAttempts) + " attempts");
    }
  }
  std::sort(truth.begin(), truth.end(), [](const Region& a, const Region& b) { return a.lex_less(b); });
  return truth;
}

}  // namespace

std::string to_string(Regime regime) { return regime == Regime::sparse ? "sparse" : "dense"; }

std::string to_string(Placement placement) {
  return placement == Placement::free_disjoint ? "free_disjoint" : "grid_aligned";
}

Regime parse_regime(const std::string& text) {
  if (text == "sparse") return Regime::sparse;
  if (text == "dense") return Regime::dense;
  throw ConfigurationError("unknown regime '" + text + "' (expected sparse or dense)");
}

Placement parse_placement(const std::string& text) {
  if (text == "free_disjoint" || text == "free") return Placement::free_disjoint;
  if (text == "grid_aligned" || text == "grid") return Placement::grid_aligned;
  throw ConfigurationError("unknown placement '" + text + "' (expected free_disjoint or grid_aligned)");
}

Regime regime_for(double alpha, double beta) { return beta / (1.0 - alpha) > 0.5 ? Regime::sparse : Regime::dense; }

std::int64_t SignalConfig::cells() const {
  const auto s = static_cast<std::int64_t>(n);
  return dim == 1 ? s : s * s;
}

std::int32_t SignalConfig::block_side() const {
  return std::max<std::int32_t>(1, static_cast<std::int32_t>(std::llround(std::pow(static_cast<double>(n), alpha))));
}

double SignalConfig::ball_radius_sq() const {
  const auto target = std::max<std::int64_t>(1, std::llround(std::pow(static_cast<double>(n), 2.0 * alpha)));
  double k = 1.0;
  while (ball_cells(k) < target) k += 1.0;
  return k;
}

std::int64_t SignalConfig::block_cells() const {
  if (dim == 1) return block_side();
  if (shape == Shape::ball) return ball_cells(ball_radius_sq());
  const std::int64_t side = block_side();
  return side * side;
}

std::int64_t SignalConfig::block_count() const {
  return std::max<std::int64_t>(1, std::llround(std::pow(static_cast<double>(n), dim * (1.0 - alpha - beta))));
}

void SignalConfig::validate() const {
  if (dim != 1 && dim != 2) throw ConfigurationError("dimension must be 1 or 2");
  if (n < 2) throw ConfigurationError("grid side must be at least 2");
  if (dim == 1 && shape == Shape::ball) throw ConfigurationError("ball signals need a 2-D grid");
  if (dim == 2 && shape == Shape::interval) throw ConfigurationError("interval signals need a 1-D grid");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in [0, 1)");
  if (!(beta > 0.0 && alpha + beta <= 1.0)) throw DomainError("beta must be positive with alpha + beta <= 1");
  if (!std::isfinite(r)) throw DomainError("r must be finite");
  if (signal && regime == Regime::sparse && !(r > 0.0)) throw DomainError("sparse calibration needs r > 0");
  if (!signal) return;
  const std::int64_t b = block_cells();
  const std::int64_t m = block_count();
  if (m * b > cells()) {
    throw ConfigurationError(std::to_string(m) + " blocks of " + std::to_string(b) + " cells do not fit in " +
                             std::to_string(cells()) + " cells");
  }
  if (dim == 2) {
    const std::int32_t side = shape == Shape::ball ? 2 * ball_reach(ball_radius_sq()) + 1 : block_side();
    if (side > n) throw ConfigurationError("block does not fit in the grid");
    if (placement == Placement::grid_aligned && m > static_cast<std::int64_t>(n / side) * (n / side)) {
      throw ConfigurationError("not enough aligned tiles for " + std::to_string(m) + " blocks");
    }
  } else if (placement == Placement::grid_aligned && m > n / b) {
    throw ConfigurationError("not enough aligned slots for " + std::to_string(m) + " blocks");
  }
}

double calibrated_mu(const SignalConfig& config) {
  config.validate();
  if (!config.signal) return 0.0;
  const double n = config.n;
  if (config.dim == 1) {
    if (config.regime == Regime::sparse) return std::sqrt(2.0 * config.r * std::log(n)) / std::sqrt(std::pow(n, config.alpha));
    return std::pow(n, config.r) / std::sqrt(std::pow(n, config.alpha));
  }
  if (config.regime == Regime::dense) {
    throw ConfigurationError("no dense-regime calibration is defined for two-dimensional signals");
  }
  return std::sqrt(2.0 * config.r * std::log(n * n)) / std::sqrt(std::pow(n, 2.0 * config.alpha));
}

double boundary_gap(const SignalConfig& config) { return config.r - rho_star(config.alpha, config.beta).rho_star; }

void fill_noise(std::span<double> cells, std::uint64_t seed) {
  const rng::Philox4x32 gen(seed);
  const std::size_t pairs = cells.size() / 2;
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto z = rng::normal_pair(gen, kNoiseStream, k);
    cells[2 * k] = z[0];
    cells[2 * k + 1] = z[1];
  }
  if (cells.size() % 2 == 1) cells.back() = rng::normal_pair(gen, kNoiseStream, pairs)[0];
}

Grid null_grid(std::int32_t n, int dim, std::uint64_t seed) {
  Grid grid(n, dim);
  fill_noise(grid.values(), seed);
  return grid;
}

Dataset generate(const SignalConfig& config) {
  config.validate();
  Dataset out;
  out.config = config;
  out.mu = calibrated_mu(config);
  out.grid = null_grid(config.n, config.dim, config.seed);
  if (!config.signal) return out;
  rng::Stream rng(config.seed, kPlacementStream);
  out.truth = config.dim == 1 ? place_line(config, rng) : place_plane(config, rng);
  for (const auto& region : out.truth) {
    for (const auto& s : region.spans()) {
      for (std::int32_t y = s.col_lo; y <= s.col_hi; ++y) {
        if (config.dim == 1) {
          out.grid.at(y) += out.mu;
        } else {
          out.grid.at(s.row, y) += out.mu;
        }
      }
    }
  }
  return out;
}

}  // namespace shc
