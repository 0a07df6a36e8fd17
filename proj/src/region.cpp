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

#include "shc/region.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "shc/errors.hpp"

namespace shc {

std::string to_string(Shape shape) {
  switch (shape) {
    case Shape::interval:
      return "interval";
    case Shape::rectangle:
      return "rect";
    case Shape::ball:
      return "ball";
  }
  return "unknown";
}

Shape parse_shape(const std::string& name) {
  if (name == "interval") return Shape::interval;
  if (name == "rect" || name == "rectangle") return Shape::rectangle;
  if (name == "ball") return Shape::ball;
  throw ConfigurationError("unknown shape '" + name + "' (expected interval, rect or ball)");
}

Region Region::interval(std::int32_t lo, std::int32_t hi) {
  if (hi <= lo) throw DomainError("interval (" + std::to_string(lo) + ", " + std::to_string(hi) + "] is empty");
  Region r;
  r.kind_ = Shape::interval;
  r.rows_ = {lo, hi};
  r.cols_ = {0, 1};
  r.size_ = r.rows_.length();
  return r;
}

Region Region::rectangle(Interval rows, Interval cols) {
  if (rows.length() <= 0 || cols.length() <= 0) throw DomainError("rectangle has an empty side");
  Region r;
  r.kind_ = Shape::rectangle;
  r.rows_ = rows;
  r.cols_ = cols;
  r.size_ = rows.length() * cols.length();
  return r;
}

namespace {

// Inclusive integer range of y with (y - cy)^2 < limit, limit > 0.
std::pair<std::int32_t, std::int32_t> open_range(double cy, double limit) {
  const double w = std::sqrt(limit);
  auto lo = static_cast<std::int32_t>(std::floor(cy - w));
  auto hi = static_cast<std::int32_t>(std::ceil(cy + w));
  const auto inside = [&](std::int32_t y) {
    const double dy = y - cy;
    return dy * dy < limit;
  };
  while (!inside(lo) && lo <= hi) ++lo;
  while (inside(lo - 1)) --lo;
  while (!inside(hi) && hi >= lo) --hi;
  while (inside(hi + 1)) ++hi;
  return {lo, hi};
}

}  // namespace

Region Region::ball(double cx, double cy, double radius_sq, std::int32_t grid_side) {
  if (!(radius_sq > 0.0) || !std::isfinite(radius_sq)) throw DomainError("ball radius must be positive");
  Region r;
  r.kind_ = Shape::ball;
  r.cx_ = cx;
  r.cy_ = cy;
  r.radius_sq_ = radius_sq;
  const double radius = std::sqrt(radius_sq);
  const auto x_lo = std::max<std::int32_t>(1, static_cast<std::int32_t>(std::floor(cx - radius)));
  const auto x_hi = std::min<std::int32_t>(grid_side, static_cast<std::int32_t>(std::ceil(cx + radius)));
  for (std::int32_t x = x_lo; x <= x_hi; ++x) {
    const double dx = x - cx;
    const double limit = radius_sq - dx * dx;
    if (limit <= 0.0) continue;
    auto [lo, hi] = open_range(cy, limit);
    lo = std::max<std::int32_t>(lo, 1);
    hi = std::min<std::int32_t>(hi, grid_side);
    if (lo > hi) continue;
    r.ball_spans_.push_back({x, lo, hi});
    r.size_ += hi - lo + 1;
  }
  if (r.size_ == 0) throw DomainError("ball covers no grid cell");
  r.rows_ = {r.ball_spans_.front().row - 1, r.ball_spans_.back().row};
  std::int32_t cmin = r.ball_spans_.front().col_lo;
  std::int32_t cmax = r.ball_spans_.front().col_hi;
  for (const auto& s : r.ball_spans_) {
    cmin = std::min(cmin, s.col_lo);
    cmax = std::max(cmax, s.col_hi);
  }
  r.cols_ = {cmin - 1, cmax};
  return r;
}

std::vector<RowSpan> Region::spans() const {
  switch (kind_) {
    case Shape::interval:
      return {{1, rows_.lo + 1, rows_.hi}};
    case Shape::rectangle: {
      std::vector<RowSpan> out;
      out.reserve(static_cast<std::size_t>(rows_.length()));
      for (std::int32_t x = rows_.lo + 1; x <= rows_.hi; ++x) out.push_back({x, cols_.lo + 1, cols_.hi});
      return out;
    }
    case Shape::ball:
      return ball_spans_;
  }
  return {};
}

bool Region::contains(std::int32_t x, std::int32_t y) const {
  switch (kind_) {
    case Shape::interval:
      return x > rows_.lo && x <= rows_.hi;
    case Shape::rectangle:
      return x > rows_.lo && x <= rows_.hi && y > cols_.lo && y <= cols_.hi;
    case Shape::ball: {
      for (const auto& s : ball_spans_) {
        if (s.row == x) return y >= s.col_lo && y <= s.col_hi;
      }
      return false;
    }
  }
  return false;
}

bool Region::lex_less(const Region& other) const {
  if (kind_ != other.kind_) return kind_ < other.kind_;
  switch (kind_) {
    case Shape::interval:
      return rows_ < other.rows_;
    case Shape::rectangle:
      return std::tie(rows_.lo, cols_.lo, rows_.hi, cols_.hi) <
             std::tie(other.rows_.lo, other.cols_.lo, other.rows_.hi, other.cols_.hi);
    case Shape::ball:
      return std::tie(cx_, cy_, radius_sq_) < std::tie(other.cx_, other.cy_, other.radius_sq_);
  }
  return false;
}

std::string Region::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Shape::interval:
      os << "(" << rows_.lo << "," << rows_.hi << "]";
      break;
    case Shape::rectangle:
      os << "(" << rows_.lo << "," << rows_.hi << "]x(" << cols_.lo << "," << cols_.hi << "]";
      break;
    case Shape::ball:
      os << "B(" << cx_ << "," << cy_ << ";r2=" << radius_sq_ << ")";
      break;
  }
  return os.str();
}

bool operator==(const Region& a, const Region& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == Shape::ball) {
    return a.cx_ == b.cx_ && a.cy_ == b.cy_ && a.radius_sq_ == b.radius_sq_ && a.ball_spans_ == b.ball_spans_;
  }
  return a.rows_ == b.rows_ && a.cols_ == b.cols_;
}

std::int64_t symmetric_difference(const Region& a, const Region& b) {
  if (a.kind() == Shape::interval && b.kind() == Shape::interval) {
    const std::int64_t overlap = std::max<std::int64_t>(
        0, std::min(a.rows().hi, b.rows().hi) - static_cast<std::int64_t>(std::max(a.rows().lo, b.rows().lo)));
    return a.size() + b.size() - 2 * overlap;
  }
  // Bounding boxes; (lo, hi] on both axes.
  const auto overlap_1d = [](Interval p, Interval q) {
    return std::max<std::int64_t>(0, static_cast<std::int64_t>(std::min(p.hi, q.hi)) - std::max(p.lo, q.lo));
  };
  if (overlap_1d(a.rows(), b.rows()) == 0 || overlap_1d(a.cols(), b.cols()) == 0) return a.size() + b.size();
  if (a.kind() == Shape::rectangle && b.kind() == Shape::rectangle) {
    return a.size() + b.size() - 2 * overlap_1d(a.rows(), b.rows()) * overlap_1d(a.cols(), b.cols());
  }
  const auto sa = a.spans();
  const auto sb = b.spans();
  std::int64_t common = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < sa.size() && j < sb.size()) {
    if (sa[i].row < sb[j].row) {
      ++i;
    } else if (sb[j].row < sa[i].row) {
      ++j;
    } else {
      common += std::max(0, std::min(sa[i].col_hi, sb[j].col_hi) - std::max(sa[i].col_lo, sb[j].col_lo) + 1);
      ++i;
      ++j;
    }
  }
  return a.size() + b.size() - 2 * common;
}

std::vector<BallRow> lattice_ball_rows(double radius_sq) {
  std::vector<BallRow> rows;
  const auto reach = static_cast<std::int32_t>(std::ceil(std::sqrt(radius_sq)));
  for (std::int32_t dx = -reach; dx <= reach; ++dx) {
    const double limit = radius_sq - static_cast<double>(dx) * dx;
    if (limit <= 0.0) continue;
    auto w = static_cast<std::int32_t>(std::sqrt(limit));
    while (static_cast<double>(w) * w >= limit) --w;
    while (static_cast<double>(w + 1) * (w + 1) < limit) ++w;
    rows.push_back({dx, w});
  }
  return rows;
}

}  // namespace shc
