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

#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "shc/rng.hpp"

using namespace shc::rng;

// Known-answer vectors published with the Random123 distribution.
TEST_CASE("philox4x32-10 known answers") {
  {
    Philox4x32 gen(0);
    const auto out = gen({0, 0, 0, 0});
    CHECK(out == Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  }
  {
    Philox4x32 gen(0xffffffffffffffffull);
    const auto out = gen({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu});
    CHECK(out == Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  }
  {
    Philox4x32 gen(0x299f31d0a4093822ull);
    const auto out = gen({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u});
    CHECK(out == Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
  }
}

TEST_CASE("derived seeds are distinct and stable") {
  CHECK(derive_seed(7, 0, 0) == derive_seed(7, 0, 0));
  CHECK(derive_seed(7, 0, 0) != derive_seed(7, 1, 0));
  CHECK(derive_seed(7, 0, 0) != derive_seed(7, 0, 1));
  CHECK(derive_seed(7, 0, 0) != derive_seed(8, 0, 0));
}

TEST_CASE("normal pairs have unit moments") {
  Philox4x32 gen(42);
  double sum = 0.0;
  double sq = 0.0;
  const int pairs = 200000;
  for (int k = 0; k < pairs; ++k) {
    const auto z = normal_pair(gen, 0, static_cast<std::uint64_t>(k));
    sum += z[0] + z[1];
    sq += z[0] * z[0] + z[1] * z[1];
  }
  const double n = 2.0 * pairs;
  CHECK(std::abs(sum / n) < 4.0 / std::sqrt(n));
  CHECK(std::abs(sq / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("stream below is unbiased on a small range") {
  Stream s(3, 1);
  std::vector<int> counts(6, 0);
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) ++counts[s.below(6)];
  for (int c : counts) CHECK(std::abs(c - draws / 6) < 5 * std::sqrt(draws / 6.0));
  CHECK(s.below(1) == 0);

  Stream a(9, 4);
  Stream b(9, 4);
  for (int i = 0; i < 10; ++i) CHECK(a() == b());
  const double u = a.uniform();
  CHECK(u > 0.0);
  CHECK(u < 1.0);
}
