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

#include "leadingones/bitstring.hpp"

#include <bit>
#include <stdexcept>

namespace leadingones {

namespace {

std::size_t word_count(int n) {
  return (static_cast<std::size_t>(n) + 63) / 64;
}

// Mask selecting the valid bits of the last word.
std::uint64_t last_word_mask(int n) {
  const int rem = n & 63;
  return rem == 0 ? ~0ull : (1ull << rem) - 1;
}

}  // namespace

BitString::BitString(int n) : n_(n), words_(word_count(n), 0) {
  if (n < 1) throw std::invalid_argument("BitString length must be >= 1");
}

BitString BitString::all_ones(int n) {
  BitString x(n);
  for (auto& w : x.words_) w = ~0ull;
  x.words_.back() &= last_word_mask(n);
  return x;
}

BitString BitString::uniform(int n, RandomStream& rng) {
  BitString x(n);
  for (auto& w : x.words_) w = rng.next_u64();
  x.words_.back() &= last_word_mask(n);
  return x;
}

BitString BitString::from_text(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty bit string");
  BitString x(static_cast<int>(text.size()));
  for (int i = 0; i < x.n_; ++i) {
    const char c = text[static_cast<std::size_t>(i)];
    if (c == '1') {
      x.set(i, true);
    } else if (c != '0') {
      throw std::invalid_argument("bit string may contain only 0 and 1");
    }
  }
  return x;
}

int BitString::leading_ones() const noexcept {
  int count = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] == ~0ull) {
      count += 64;
      continue;
    }
    count += std::countr_one(words_[w]);
    break;
  }
  return count < n_ ? count : n_;
}

int BitString::count_ones() const noexcept {
  int count = 0;
  for (const auto w : words_) count += std::popcount(w);
  return count;
}

BitString BitString::complemented() const {
  BitString x(*this);
  for (auto& w : x.words_) w = ~w;
  x.words_.back() &= last_word_mask(n_);
  return x;
}

std::string BitString::to_text() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int i = 0; i < n_; ++i) {
    if (get(i)) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

int hamming_distance(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("hamming_distance: length mismatch");
  }
  int d = 0;
  for (int i = 0; i < a.size(); ++i) d += a.get(i) != b.get(i);
  return d;
}

}  // namespace leadingones
