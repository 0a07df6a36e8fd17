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

#include <array>
#include <cmath>
#include <cstdint>

// Counter-based random numbers. Every draw is a pure function of
// (key, counter), so any cell or replicate can be generated independently of
// the order in which workers reach it.

namespace shc::rng {

// Philox4x32 with 10 rounds (Salmon et al., SC'11).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  Counter operator()(Counter ctr) const {
    Key key = key_;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  Key key_;
};

// Uniform on the open interval (0, 1) from 53 random bits.
inline double to_open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

inline std::uint64_t join(std::uint32_t hi, std::uint32_t lo) {
  return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

// Two independent standard normals for block `index` of stream `stream`
// (Box-Muller on one Philox output).
inline std::array<double, 2> normal_pair(const Philox4x32& gen, std::uint64_t stream, std::uint64_t index) {
  const auto out = gen({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                        static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)});
  const double u1 = to_open_unit(join(out[0], out[1]));
  const double u2 = to_open_unit(join(out[2], out[3]));
  const double radius = std::sqrt(-2.0 * std::log(u1));
  constexpr double kTwoPi = 6.28318530717958647692;
  return {radius * std::cos(kTwoPi * u2), radius * std::sin(kTwoPi * u2)};
}

// Derives a child seed from (seed, index); used for per-replicate seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, std::uint32_t purpose = 0) {
  const Philox4x32 gen(seed);
  const auto out = gen({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), purpose,
                        0x5EEDu});
  return join(out[0], out[1]);
}

// Sequential engine over a Philox stream. Satisfies UniformRandomBitGenerator
// but callers should prefer the bounded helpers below, which are portable
// across standard libraries.
class Stream {
 public:
  using result_type = std::uint64_t;

  Stream(std::uint64_t seed, std::uint64_t stream_id) : gen_(seed), stream_id_(stream_id) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    if (buffered_) {
      buffered_ = false;
      return pending_;
    }
    const auto out = gen_({static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
                           static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)});
    ++counter_;
    pending_ = join(out[2], out[3]);
    buffered_ = true;
    return join(out[0], out[1]);
  }

  double uniform() { return to_open_unit((*this)()); }

  // Unbiased integer in [0, bound) (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    for (;;) {
      const std::uint64_t x = (*this)();
      const unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
      const auto low = static_cast<std::uint64_t>(m);
      if (low >= bound) return static_cast<std::uint64_t>(m >> 64);
      const std::uint64_t threshold = (0 - bound) % bound;
      if (low >= threshold) return static_cast<std::uint64_t>(m >> 64);
    }
  }

 private:
  Philox4x32 gen_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
  std::uint64_t pending_ = 0;
  bool buffered_ = false;
};

}  // namespace shc::rng
