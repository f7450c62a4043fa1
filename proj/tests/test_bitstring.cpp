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

#include <cstdlib>
#include <stdexcept>

#include "doctest.h"

using namespace leadingones;

TEST_CASE("leading_ones on small examples") {
  CHECK(BitString::from_text("1101").leading_ones() == 2);
  CHECK(BitString::from_text("1111").leading_ones() == 4);
  CHECK(BitString::from_text("0111").leading_ones() == 0);
  CHECK(BitString::from_text("0").leading_ones() == 0);
  CHECK(BitString::from_text("1").leading_ones() == 1);
}

TEST_CASE("leading_ones equals n exactly for the all-ones string") {
  // Lengths straddling the word boundaries.
  for (const int n : {1, 2, 63, 64, 65, 127, 128, 130, 200}) {
    const BitString ones = BitString::all_ones(n);
    CHECK(ones.leading_ones() == n);
    CHECK(ones.is_all_ones());

    BitString broken = ones;
    broken.flip(n - 1);
    CHECK(broken.leading_ones() == n - 1);
    CHECK_FALSE(broken.is_all_ones());
  }
}

TEST_CASE("bit just past the prefix is zero") {
  RandomStream rng(321);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_below(150));
    const BitString x = BitString::uniform(n, rng);
    const int level = x.leading_ones();
    if (level < n) CHECK_FALSE(x.get(level));
    for (int i = 0; i < level; ++i) CHECK(x.get(i));
  }
}

TEST_CASE("hamiltonian is -eps0 * leading_ones") {
  CHECK(hamiltonian(BitString::from_text("1101"), 1.0) == -2.0);
  CHECK(hamiltonian(BitString::all_ones(7), 2.0) == -14.0);
  CHECK(hamiltonian(BitString(9), 3.5) == 0.0);
}

TEST_CASE("text form round trips, leftmost character first") {
  const BitString x = BitString::from_text("1101");
  CHECK(x.get(0));
  CHECK(x.get(1));
  CHECK_FALSE(x.get(2));
  CHECK(x.get(3));
  CHECK(x.to_text() == "1101");

  RandomStream rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_below(200));
    const BitString y = BitString::uniform(n, rng);
    CHECK(BitString::from_text(y.to_text()) == y);
  }
}

TEST_CASE("from_text rejects bad input") {
  CHECK_THROWS_AS(BitString::from_text(""), std::invalid_argument);
  CHECK_THROWS_AS(BitString::from_text("10x1"), std::invalid_argument);
}

TEST_CASE("complement and hamming distance") {
  const BitString x = BitString::from_text("1100101");
  const BitString y = x.complemented();
  CHECK(y.to_text() == "0011010");
  CHECK(hamming_distance(x, y) == 7);
  CHECK(hamming_distance(x, x) == 0);
  CHECK(x.complemented().complemented() == x);

  CHECK_THROWS_AS(hamming_distance(x, BitString(3)), std::invalid_argument);
}

TEST_CASE("uniform draws hit both values per position") {
  RandomStream rng(99);
  const int n = 67;
  int ones_at_0 = 0;
  int ones_at_66 = 0;
  const int draws = 4000;
  for (int i = 0; i < draws; ++i) {
    const BitString x = BitString::uniform(n, rng);
    ones_at_0 += x.get(0);
    ones_at_66 += x.get(66);
  }
  // 4000 fair coins: 5 sigma is about 158.
  CHECK(std::abs(ones_at_0 - draws / 2) < 160);
  CHECK(std::abs(ones_at_66 - draws / 2) < 160);
}
