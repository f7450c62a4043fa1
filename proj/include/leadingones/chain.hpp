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

#ifndef LEADINGONES_CHAIN_HPP_
#define LEADINGONES_CHAIN_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "leadingones/bitstring.hpp"
#include "leadingones/rng.hpp"

namespace leadingones {

enum class Mutation { OneFlip, BernoulliFlip };

// One-flip: flip one position chosen uniformly. Bernoulli flip: flip each
// position independently with probability c/n, requiring 0 < c <= n.
struct MutationKind {
  Mutation kind = Mutation::OneFlip;
  double c = 0.0;  // meaningful only for BernoulliFlip

  static MutationKind one_flip() { return {Mutation::OneFlip, 0.0}; }
  static MutationKind bernoulli_flip(double c) {
    return {Mutation::BernoulliFlip, c};
  }
};

// Strict: accept the candidate only on a fitness increase (the (1+1)-EA).
// NonStrict: also accept equal fitness; on the LeadingOnes energy this is
// exactly the zero-temperature Metropolis rule.
enum class SelectionRule { Strict, NonStrict };

std::string to_string(const MutationKind& m);
std::string to_string(SelectionRule r);

// Cap after which a run is reported as capped: ceil(100 * n^2 * max(1, m(c)))
// with m(c) = (e^c - 1) / (2 c^2); hitting times concentrate at Theta(n^2),
// so an uncapped run exceeds this with negligible probability.
std::int64_t default_max_iters(int n, const MutationKind& mutation);

struct ChainConfig {
  int n = 1;
  MutationKind mutation;
  SelectionRule selection = SelectionRule::Strict;
  std::int64_t max_iters = 0;

  // max_iters == 0 selects default_max_iters(n, mutation).
  // Throws std::invalid_argument for n < 1 or a Bernoulli c outside (0, n].
  ChainConfig(int n, MutationKind mutation, SelectionRule selection,
              std::int64_t max_iters = 0);

  // Per-bit flip probability: 1/n for one-flip, c/n for Bernoulli flip.
  double flip_probability() const noexcept;
};

struct ChainState {
  BitString x;
  std::int64_t t = 0;
  int level = 0;  // cached leading_ones(x)

  static ChainState start(BitString x0) {
    const int level = x0.leading_ones();
    return ChainState{std::move(x0), 0, level};
  }
};

// Candidate with exactly one uniformly chosen bit flipped. One draw.
BitString mutate_one_flip(const BitString& x, RandomStream& rng);

// Candidate with each bit flipped independently with probability c/n.
// Flip positions are generated by geometric gap sampling, one positive-unit
// draw per gap, so the draw count is (number of flips) + 1.
BitString mutate_bernoulli(const BitString& x, double c, RandomStream& rng);

// True with probability min(1, exp(-beta * delta_h)). Draw-free when the
// outcome is certain (delta_h <= 0, or beta infinite, or beta == 0).
// At beta = +infinity this is exactly "accept iff delta_h <= 0", i.e. the
// NonStrict rule on the LeadingOnes energy.
bool metropolis_accept(double delta_h, double beta, RandomStream& rng);

// Survivor of parent vs candidate under the given rule. Candidate length
// must equal parent length (assert).
const BitString& select(const ChainState& parent, const BitString& candidate,
                        SelectionRule rule);

// One generation: mutation then selection, t + 1, level recached. Consumes
// exactly the draws of the corresponding mutate_* call; equivalent to
//   candidate = mutate(x); x = select(state, candidate, rule)
// but without materialising rejected candidates.
void step(ChainState& state, const ChainConfig& config, RandomStream& rng);

struct RunOutcome {
  std::int64_t hitting_time = 0;  // steps run when capped
  int initial_level = 0;
  bool capped = false;
};

// First generation at which the all-ones string is reached, starting from
// `initial` (or a uniform draw when absent). T = 0 when the start is already
// optimal. Pure function of (config, seed, initial).
RunOutcome run_to_optimum(const ChainConfig& config, std::uint64_t seed,
                          const std::optional<BitString>& initial = {});

}  // namespace leadingones

#endif  // LEADINGONES_CHAIN_HPP_
