// Copyright 2026 leadingones authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEADINGONES_RNG_HPP_
#define LEADINGONES_RNG_HPP_

#include <cstdint>

namespace leadingones {

// SplitMix64 finalizer (Vigna / Stafford mix13). Fixed constants, never
// change them: substream derivation and therefore every stored result
// depends on this exact function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Seed of the independent substream `index` under `master_seed`. Replicate
// results depend only on this value, never on scheduling or worker count.
constexpr std::uint64_t substream_seed(std::uint64_t master_seed,
                                       std::uint64_t index) noexcept {
  return mix64(master_seed + 0x9e3779b97f4a7c15ull * (index + 1));
}

// xoshiro256++ seeded through a SplitMix64 run. Self-contained so that
// streams are bit-identical across platforms and standard libraries;
// std::uniform_*_distribution is implementation-defined and not used here.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) noexcept {
    std::uint64_t z = seed;
    for (auto& w : state_) {
      z += 0x9e3779b97f4a7c15ull;
      w = mix64(z);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  static RandomStream substream(std::uint64_t master_seed,
                                std::uint64_t index) noexcept {
    return RandomStream(substream_seed(master_seed, index));
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1), 53 usable bits.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0,1]; safe as a log() argument.
  double next_double_pos() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  bool bernoulli(double p) noexcept { return next_double() < p; }

  // Unbiased integer in [0, bound); Lemire multiply-shift with rejection.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept {
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t t = -bound % bound;
      while (lo < t) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace leadingones

#endif  // LEADINGONES_RNG_HPP_
