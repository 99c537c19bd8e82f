// Copyright 2026 The softcover Authors
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

#ifndef SOFTCOVER_RNG_HPP
#define SOFTCOVER_RNG_HPP

#include <array>
#include <cstdint>

namespace softcover {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A draw is a
/// pure function of (key, counter), so the value at any index can be
/// produced without touching any other, on any thread.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit constexpr Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  [[nodiscard]] constexpr Counter operator()(Counter ctr) const {
    Key k = key_;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        k[0] += kWeyl0;
        k[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ k[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ k[1], static_cast<std::uint32_t>(p0)};
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

/// Coordinates of one draw. `stream` separates unrelated uses of the same
/// (sample, codeword, position) triple.
struct DrawIndex {
  std::uint64_t sample = 0;
  std::uint32_t codeword = 0;
  std::uint32_t position = 0;
  std::uint32_t stream = 0;
};

class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) : philox_(seed) {}

  [[nodiscard]] constexpr std::uint64_t bits(const DrawIndex& at) const {
    const auto out = philox_({at.position, at.codeword, static_cast<std::uint32_t>(at.sample),
                              static_cast<std::uint32_t>(at.sample >> 32) ^ (at.stream << 24)});
    return (std::uint64_t{out[0]} << 32) | out[1];
  }

  /// Uniform on [0, 1) with 53 random bits.
  [[nodiscard]] constexpr double uniform(const DrawIndex& at) const {
    return static_cast<double>(bits(at) >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound), by the multiply-shift map (bias below 2^-32 for bound < 2^32).
  [[nodiscard]] constexpr std::uint64_t below(const DrawIndex& at, std::uint64_t bound) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits(at)) * bound) >> 64);
  }

 private:
  Philox4x32 philox_;
};

}  // namespace softcover

#endif  // SOFTCOVER_RNG_HPP
