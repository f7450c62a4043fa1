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

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace leadingones {

namespace {

// Visits the flip positions of one Bernoulli(eps) mask in ascending order.
// Gap sampling: the number of untouched bits before the next flip is
// geometric, floor(log(u)/log(1-eps)) with u uniform on (0,1]. eps == 1
// flips every bit and consumes no draws.
template <typename Visit>
void for_each_bernoulli_flip(int n, double eps, RandomStream& rng,
                             Visit&& visit) {
  if (eps >= 1.0) {
    for (int pos = 0; pos < n; ++pos) visit(pos);
    return;
  }
  const double inv_log_keep = 1.0 / std::log1p(-eps);
  int pos = -1;
  for (;;) {
    const double gap = std::floor(std::log(rng.next_double_pos()) * inv_log_keep);
    if (gap >= static_cast<double>(n - pos)) return;  // also catches inf
    pos += 1 + static_cast<int>(gap);
    if (pos >= n) return;
    visit(pos);
  }
}

}  // namespace

std::string to_string(const MutationKind& m) {
  return m.kind == Mutation::OneFlip ? "oneflip" : "bernoulli";
}

std::string to_string(SelectionRule r) {
  return r == SelectionRule::Strict ? "strict" : "nonstrict";
}

std::int64_t default_max_iters(int n, const MutationKind& mutation) {
  double scale = 1.0;
  if (mutation.kind == Mutation::BernoulliFlip) {
    const double m_c = std::expm1(mutation.c) / (2.0 * mutation.c * mutation.c);
    scale = std::max(1.0, m_c);
  }
  const double cap = std::ceil(100.0 * static_cast<double>(n) * n * scale);
  constexpr double kMax = 9.0e18;
  return cap < kMax ? static_cast<std::int64_t>(cap)
                    : std::numeric_limits<std::int64_t>::max();
}

ChainConfig::ChainConfig(int n, MutationKind mutation, SelectionRule selection,
                         std::int64_t max_iters)
    : n(n), mutation(mutation), selection(selection), max_iters(max_iters) {
  if (n < 1) throw std::invalid_argument("ChainConfig: n must be >= 1");
  if (mutation.kind == Mutation::BernoulliFlip) {
    if (!(mutation.c > 0.0)) {
      throw std::invalid_argument("ChainConfig: Bernoulli c must be > 0");
    }
    if (mutation.c > static_cast<double>(n)) {
      throw std::invalid_argument(
          "ChainConfig: Bernoulli c must be <= n (flip probability c/n)");
    }
  }
  if (this->max_iters == 0) this->max_iters = default_max_iters(n, mutation);
  if (this->max_iters < 1) {
    throw std::invalid_argument("ChainConfig: max_iters must be >= 1");
  }
}

double ChainConfig::flip_probability() const noexcept {
  return mutation.kind == Mutation::OneFlip
             ? 1.0 / static_cast<double>(n)
             : mutation.c / static_cast<double>(n);
}

BitString mutate_one_flip(const BitString& x, RandomStream& rng) {
  BitString y(x);
  y.flip(static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(x.size()))));
  return y;
}

BitString mutate_bernoulli(const BitString& x, double c, RandomStream& rng) {
  const int n = x.size();
  if (!(c > 0.0) || c > static_cast<double>(n)) {
    throw std::invalid_argument("mutate_bernoulli: require 0 < c <= n");
  }
  BitString y(x);
  for_each_bernoulli_flip(n, c / n, rng, [&y](int pos) { y.flip(pos); });
  return y;
}

bool metropolis_accept(double delta_h, double beta, RandomStream& rng) {
  if (delta_h <= 0.0) return true;
  if (std::isinf(beta)) return false;
  if (beta == 0.0) return true;
  return rng.next_double() < std::exp(-beta * delta_h);
}

const BitString& select(const ChainState& parent, const BitString& candidate,
                        SelectionRule rule) {
  assert(candidate.size() == parent.x.size());
  const int candidate_level = candidate.leading_ones();
  const bool accept = rule == SelectionRule::Strict
                          ? candidate_level > parent.level
                          : candidate_level >= parent.level;
  return accept ? candidate : parent.x;
}

void step(ChainState& state, const ChainConfig& config, RandomStream& rng) {
  const int level = state.level;

  if (config.mutation.kind == Mutation::OneFlip) {
    const int pos =
        static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(config.n)));
    if (pos == level) {
      // Leftmost zero flipped: the only fitness-increasing candidate.
      state.x.flip(pos);
      state.level = state.x.leading_ones();
    } else if (pos > level && config.selection == SelectionRule::NonStrict) {
      // Equal fitness: prefix untouched, bit `level` stays zero.
      state.x.flip(pos);
    }
    // pos < level lowers fitness; rejected under both rules.
  } else {
    // Flip positions arrive in ascending order, so the first one decides
    // acceptance before anything is applied: below `level` the candidate
    // loses fitness (reject under both rules); at `level` it gains fitness
    // (accept under both); otherwise fitness ties (NonStrict only).
    // Remaining gap draws are consumed even after a rejection so the stream
    // stays aligned with mutate_bernoulli.
    bool rejected = false;
    bool jumped = false;
    for_each_bernoulli_flip(config.n, config.flip_probability(), rng,
                            [&](int pos) {
                              if (rejected) return;
                              if (pos < level) {
                                rejected = true;
                                return;
                              }
                              if (pos == level) jumped = true;
                              if (jumped ||
                                  config.selection == SelectionRule::NonStrict) {
                                state.x.flip(pos);
                              }
                            });
    if (jumped) state.level = state.x.leading_ones();
  }

  state.t += 1;
}

RunOutcome run_to_optimum(const ChainConfig& config, std::uint64_t seed,
                          const std::optional<BitString>& initial) {
  if (initial && initial->size() != config.n) {
    throw std::invalid_argument("run_to_optimum: initial length != n");
  }
  RandomStream rng(seed);
  ChainState state = ChainState::start(
      initial ? *initial : BitString::uniform(config.n, rng));
  const int initial_level = state.level;

  while (state.level < config.n && state.t < config.max_iters) {
    step(state, config, rng);
  }
  return RunOutcome{state.t, initial_level, state.level < config.n};
}

}  // namespace leadingones
