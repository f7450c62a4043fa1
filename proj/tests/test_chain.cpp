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

#include "leadingones/chain.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "leadingones/stats.hpp"

using namespace leadingones;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Literal mutate-then-select composition; step() must match it draw for draw.
ChainState step_reference(const ChainState& state, const ChainConfig& config,
                          RandomStream& rng) {
  const BitString candidate =
      config.mutation.kind == Mutation::OneFlip
          ? mutate_one_flip(state.x, rng)
          : mutate_bernoulli(state.x, config.mutation.c, rng);
  BitString survivor = select(state, candidate, config.selection);
  const int level = survivor.leading_ones();
  return ChainState{std::move(survivor), state.t + 1, level};
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(ChainConfig(0, MutationKind::one_flip(), SelectionRule::Strict),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      ChainConfig(4, MutationKind::bernoulli_flip(4.5), SelectionRule::Strict),
      std::invalid_argument);
  CHECK_THROWS_AS(
      ChainConfig(4, MutationKind::bernoulli_flip(0.0), SelectionRule::Strict),
      std::invalid_argument);
  // c = n is a valid edge: flip probability 1.
  const ChainConfig cfg(4, MutationKind::bernoulli_flip(4.0),
                        SelectionRule::Strict);
  CHECK(cfg.flip_probability() == 1.0);
  CHECK(cfg.max_iters > 0);
}

TEST_CASE("one flip: single bit case and unit hamming distance") {
  RandomStream rng(5);
  CHECK(mutate_one_flip(BitString::from_text("0"), rng).to_text() == "1");

  for (const int n : {2, 17, 64, 65, 130}) {
    BitString x = BitString::uniform(n, rng);
    for (int trial = 0; trial < 300; ++trial) {
      const BitString y = mutate_one_flip(x, rng);
      CHECK(hamming_distance(x, y) == 1);
    }
  }
}

TEST_CASE("one flip: flip position is uniform") {
  const int n = 8;
  const std::int64_t draws = 100000;
  RandomStream rng(42);
  const BitString x(n);
  std::vector<std::uint64_t> counts(n, 0);
  for (std::int64_t i = 0; i < draws; ++i) {
    const BitString y = mutate_one_flip(x, rng);
    for (int j = 0; j < n; ++j) {
      if (y.get(j)) counts[static_cast<std::size_t>(j)] += 1;
    }
  }
  const std::vector<double> uniform(n, 1.0 / n);
  const TestReport r =
      chi_square_gof(counts, uniform, 0.999, "oneflip-position-uniform");
  CHECK(r.pass);
}

TEST_CASE("bernoulli flip: c = n complements the input") {
  RandomStream rng(7);
  for (const int n : {1, 5, 64, 70}) {
    const BitString x = BitString::uniform(n, rng);
    for (int trial = 0; trial < 20; ++trial) {
      CHECK(mutate_bernoulli(x, static_cast<double>(n), rng) ==
            x.complemented());
    }
  }
}

TEST_CASE("bernoulli flip: identity probability (1-c/n)^n") {
  // n=4, c=2: P(no flip) = (1/2)^4 = 1/16.
  RandomStream rng(12);
  const BitString x = BitString::from_text("1010");
  const std::int64_t draws = 100000;
  std::int64_t unchanged = 0;
  for (std::int64_t i = 0; i < draws; ++i) {
    unchanged += mutate_bernoulli(x, 2.0, rng) == x;
  }
  const double expected = draws / 16.0;
  const double sigma = std::sqrt(draws * (1.0 / 16.0) * (15.0 / 16.0));
  CHECK(std::abs(static_cast<double>(unchanged) - expected) < 5.0 * sigma);
}

TEST_CASE("bernoulli flip: per-bit flip frequency is c/n") {
  const int n = 10;
  const double c = 1.0;
  RandomStream rng(13);
  const BitString x(n);
  const std::int64_t draws = 100000;
  std::vector<std::int64_t> flips(n, 0);
  for (std::int64_t i = 0; i < draws; ++i) {
    const BitString y = mutate_bernoulli(x, c, rng);
    for (int j = 0; j < n; ++j) flips[static_cast<std::size_t>(j)] += y.get(j);
  }
  const double p = c / n;
  const double sigma = std::sqrt(draws * p * (1.0 - p));
  for (int j = 0; j < n; ++j) {
    CHECK(std::abs(static_cast<double>(flips[static_cast<std::size_t>(j)]) -
                   draws * p) < 5.0 * sigma);
  }
}

TEST_CASE("bernoulli flip leaves the input unmodified") {
  RandomStream rng(3);
  const BitString x = BitString::from_text("110010");
  const BitString copy = x;
  (void)mutate_bernoulli(x, 1.5, rng);
  (void)mutate_one_flip(x, rng);
  CHECK(x == copy);
}

TEST_CASE("metropolis acceptance") {
  RandomStream rng(1);
  for (const double beta : {0.0, 0.5, 3.0, kInf}) {
    CHECK(metropolis_accept(-1.0, beta, rng));
    CHECK(metropolis_accept(0.0, beta, rng));
  }
  CHECK_FALSE(metropolis_accept(1.0, kInf, rng));

  // Finite temperature: acceptance frequency of a +1 move is e^-beta.
  const double beta = 1.0;
  const std::int64_t draws = 100000;
  std::int64_t accepted = 0;
  for (std::int64_t i = 0; i < draws; ++i) {
    accepted += metropolis_accept(1.0, beta, rng);
  }
  const double p = std::exp(-beta);
  const double sigma = std::sqrt(draws * p * (1.0 - p));
  CHECK(std::abs(static_cast<double>(accepted) - draws * p) < 5.0 * sigma);
}

TEST_CASE("zero-temperature metropolis on the energy is the NonStrict rule") {
  RandomStream rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_below(24));
    const ChainState parent = ChainState::start(BitString::uniform(n, rng));
    const BitString candidate = BitString::uniform(n, rng);
    const double delta_h =
        hamiltonian(candidate, 1.0) - hamiltonian(parent.x, 1.0);
    const bool metropolis = metropolis_accept(delta_h, kInf, rng);
    const bool selected =
        select(parent, candidate, SelectionRule::NonStrict) == candidate;
    // The two can only disagree when candidate == parent.x, where both
    // outcomes mean "keep the current state".
    if (!(candidate == parent.x)) CHECK(metropolis == selected);
  }
}

TEST_CASE("selection rules on ties") {
  const ChainState parent = ChainState::start(BitString::from_text("11010"));
  REQUIRE(parent.level == 2);

  const BitString better = BitString::from_text("11100");
  CHECK(select(parent, better, SelectionRule::Strict) == better);
  CHECK(select(parent, better, SelectionRule::NonStrict) == better);

  const BitString tie = BitString::from_text("11001");  // same level, new suffix
  CHECK(select(parent, tie, SelectionRule::Strict) == parent.x);
  CHECK(select(parent, tie, SelectionRule::NonStrict) == tie);

  const BitString worse = BitString::from_text("10110");
  CHECK(select(parent, worse, SelectionRule::Strict) == parent.x);
  CHECK(select(parent, worse, SelectionRule::NonStrict) == parent.x);
}

TEST_CASE("step matches the literal mutate-then-select composition") {
  RandomStream seeder(2026);
  for (int trial = 0; trial < 4000; ++trial) {
    const int n = 1 + static_cast<int>(seeder.uniform_below(40));
    const bool bernoulli = seeder.uniform_below(2) == 1;
    const double c =
        bernoulli ? 0.25 + 0.25 * static_cast<double>(seeder.uniform_below(
                                      static_cast<std::uint64_t>(4 * n)))
                  : 0.0;
    const MutationKind mutation = bernoulli
                                      ? MutationKind::bernoulli_flip(c)
                                      : MutationKind::one_flip();
    const SelectionRule rule = seeder.uniform_below(2) == 1
                                   ? SelectionRule::Strict
                                   : SelectionRule::NonStrict;
    const ChainConfig config(n, mutation, rule);

    RandomStream rng_a(seeder.next_u64());
    ChainState fused = ChainState::start(BitString::uniform(n, rng_a));
    RandomStream rng_b = rng_a;  // identical stream for both paths

    const ChainState reference = step_reference(fused, config, rng_b);
    step(fused, config, rng_a);

    CHECK(fused.x == reference.x);
    CHECK(fused.level == reference.level);
    CHECK(fused.t == reference.t);
    // Streams stayed aligned.
    CHECK(rng_a.next_u64() == rng_b.next_u64());
  }
}

TEST_CASE("level is monotone; strict changes imply improvement") {
  RandomStream seeder(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(seeder.uniform_below(20));
    const bool bernoulli = trial % 2 == 0;
    const MutationKind mutation =
        bernoulli ? MutationKind::bernoulli_flip(1.0) : MutationKind::one_flip();
    const SelectionRule rule =
        trial % 4 < 2 ? SelectionRule::Strict : SelectionRule::NonStrict;
    const ChainConfig config(n, mutation, rule);

    RandomStream rng(seeder.next_u64());
    ChainState state = ChainState::start(BitString::uniform(n, rng));
    for (int k = 0; k < 200; ++k) {
      const ChainState before = state;
      step(state, config, rng);
      CHECK(state.level >= before.level);
      CHECK(state.level == state.x.leading_ones());
      // The locked prefix survives under both rules.
      for (int i = 0; i < before.level; ++i) CHECK(state.x.get(i));
      if (rule == SelectionRule::Strict && !(state.x == before.x)) {
        CHECK(state.level > before.level);
      }
    }
  }
}

TEST_CASE("conditional jump probability from level i") {
  // One flip: P(level increases) = 1/n regardless of i; Bernoulli flip:
  // (c/n)(1-c/n)^i. Frequencies over repeated single steps from a fixed
  // state of level i.
  const int n = 6;
  const std::int64_t draws = 200000;

  const auto jump_frequency = [&](const MutationKind& mutation,
                                  const BitString& start) {
    const ChainConfig config(n, mutation, SelectionRule::Strict);
    RandomStream rng(77);
    std::int64_t jumps = 0;
    const ChainState base = ChainState::start(start);
    for (std::int64_t k = 0; k < draws; ++k) {
      ChainState state = base;
      step(state, config, rng);
      jumps += state.level > base.level;
    }
    return static_cast<double>(jumps) / static_cast<double>(draws);
  };

  const BitString level2 = BitString::from_text("110100");
  {
    const double p = 1.0 / n;
    const double sigma = std::sqrt(p * (1.0 - p) / draws);
    CHECK(std::abs(jump_frequency(MutationKind::one_flip(), level2) - p) <
          5.0 * sigma);
  }
  {
    const double eps = 1.0 / n;
    const double p = eps * std::pow(1.0 - eps, 2);
    const double sigma = std::sqrt(p * (1.0 - p) / draws);
    CHECK(std::abs(jump_frequency(MutationKind::bernoulli_flip(1.0), level2) -
                   p) < 5.0 * sigma);
  }
}

TEST_CASE("optimal state is absorbing under both rules") {
  for (const auto rule : {SelectionRule::Strict, SelectionRule::NonStrict}) {
    for (const bool bernoulli : {false, true}) {
      const int n = 9;
      const MutationKind mutation = bernoulli ? MutationKind::bernoulli_flip(2.0)
                                              : MutationKind::one_flip();
      const ChainConfig config(n, mutation, rule);
      RandomStream rng(4);
      ChainState state = ChainState::start(BitString::all_ones(n));
      for (int k = 0; k < 500; ++k) {
        step(state, config, rng);
        CHECK(state.level == n);
        CHECK(state.x.is_all_ones());
      }
    }
  }
}

TEST_CASE("run_to_optimum basics") {
  const ChainConfig config(12, MutationKind::one_flip(), SelectionRule::Strict);
  const RunOutcome from_opt =
      run_to_optimum(config, 9, BitString::all_ones(12));
  CHECK(from_opt.hitting_time == 0);
  CHECK(from_opt.initial_level == 12);
  CHECK_FALSE(from_opt.capped);

  // n = 1 one-flip from "0": the single flip is always the fixing one.
  const ChainConfig tiny(1, MutationKind::one_flip(), SelectionRule::Strict);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const RunOutcome run = run_to_optimum(tiny, seed, BitString::from_text("0"));
    CHECK(run.hitting_time == 1);
  }

  // Identical seeds give identical outcomes.
  const RunOutcome a = run_to_optimum(config, 1234);
  const RunOutcome b = run_to_optimum(config, 1234);
  CHECK(a.hitting_time == b.hitting_time);
  CHECK(a.initial_level == b.initial_level);

  CHECK_THROWS_AS(run_to_optimum(config, 0, BitString::from_text("01")),
                  std::invalid_argument);
}

TEST_CASE("caps are reported, not hidden") {
  const ChainConfig config(24, MutationKind::one_flip(), SelectionRule::Strict,
                           /*max_iters=*/3);
  int capped_runs = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const RunOutcome run = run_to_optimum(config, seed);
    if (run.capped) {
      ++capped_runs;
      CHECK(run.hitting_time == 3);
    }
  }
  CHECK(capped_runs > 0);  // a uniform 24-bit start in 3 steps is hopeless
}

TEST_CASE("empirical mean hits n^2/2 at n = 10") {
  const int n = 10;
  const std::int64_t replicates = 100000;
  const ChainConfig config(n, MutationKind::one_flip(), SelectionRule::Strict);
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(replicates));
  for (std::int64_t i = 0; i < replicates; ++i) {
    const RunOutcome run =
        run_to_optimum(config, substream_seed(2024, static_cast<std::uint64_t>(i)));
    REQUIRE_FALSE(run.capped);
    times.push_back(static_cast<double>(run.hitting_time));
  }
  const SummaryStats stats = summarize(times);
  CHECK(std::abs(stats.mean - 50.0) < 3.0 * stats.std_error);
}
