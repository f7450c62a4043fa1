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

#ifndef LEADINGONES_BITSTRING_HPP_
#define LEADINGONES_BITSTRING_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "leadingones/rng.hpp"

namespace leadingones {

// Fixed-length binary string. Position 0 is the leftmost bit; the text form
// "1101" reads left to right, so bit k of the text is position k here.
// Bits are packed 64 per word with unused high bits kept at zero.
class BitString {
 public:
  explicit BitString(int n);

  static BitString all_ones(int n);
  static BitString uniform(int n, RandomStream& rng);
  static BitString from_text(std::string_view text);

  int size() const noexcept { return n_; }

  bool get(int pos) const noexcept {
    return (words_[static_cast<std::size_t>(pos) >> 6] >> (pos & 63)) & 1u;
  }

  void set(int pos, bool value) noexcept {
    const std::uint64_t bit = 1ull << (pos & 63);
    auto& w = words_[static_cast<std::size_t>(pos) >> 6];
    w = value ? (w | bit) : (w & ~bit);
  }

  void flip(int pos) noexcept {
    words_[static_cast<std::size_t>(pos) >> 6] ^= 1ull << (pos & 63);
  }

  // Length of the maximal all-ones prefix, in [0, n].
  int leading_ones() const noexcept;

  bool is_all_ones() const noexcept { return leading_ones() == n_; }

  int count_ones() const noexcept;

  BitString complemented() const;

  std::string to_text() const;

  bool operator==(const BitString&) const = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

int hamming_distance(const BitString& a, const BitString& b);

inline int leading_ones(const BitString& x) noexcept {
  return x.leading_ones();
}

// Energy of a conformation: -eps0 * leading_ones(x). The global minimum
// -eps0*n is attained exactly at the all-ones string.
inline double hamiltonian(const BitString& x, double eps0) noexcept {
  return -eps0 * static_cast<double>(x.leading_ones());
}

}  // namespace leadingones

#endif  // LEADINGONES_BITSTRING_HPP_
