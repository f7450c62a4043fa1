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
//
// Exact hitting-time laws for the (1+1)-EA / zero-temperature Metropolis
// chain on LeadingOnes, from a uniform random start.
//
// Both mutations admit the same subset representation: the hitting time is
// distributed as sum_{i=0}^{n-1} B_i * G_i with independent fair coins B_i
// and geometric sojourns G_i ~ G(p_i), where p_i is the probability of
// leaving level i (1/n for one-flip, (c/n)(1-c/n)^i for Bernoulli flip).
// The one-flip law is evaluated as a binomial mixture of negative binomials,
// the Bernoulli law by sequential convolution of the two-point mixtures
// (1/2) delta_0 + (1/2) G(p_i); a full transition-matrix oracle over all
// 2^n states cross-checks both.

#ifndef LEADINGONES_EXACT_HPP_
#define LEADINGONES_EXACT_HPP_

#include <cstdint>
#include <vector>

#include "leadingones/chain.hpp"

namespace leadingones {

// Finite law over t = 0..t_max with the truncated tail mass kept explicit,
// never renormalised away: sum(mass) + tail == 1 up to rounding.
struct Pmf {
  std::vector<double> mass;  // mass[t] = P(T = t)
  double tail = 0.0;         // P(T > t_max)

  std::int64_t t_max() const noexcept {
    return static_cast<std::int64_t>(mass.size()) - 1;
  }

  // Moments of the truncated part; accurate to the t_max selection, see
  // suggested_t_max.
  double mean() const;
  double variance() const;

  // max |sum(mass)+tail-1| and negativity violation, for invariant checks.
  double normalization_error() const;
};

// (1/2) * (sum |a_t - b_t| + |a.tail - b.tail|). Requires equal t_max.
// Exact whenever the tails lump the same event; off by at most
// a.tail + b.tail otherwise.
double total_variation(const Pmf& a, const Pmf& b);

// P(G = t) = p (1-p)^(t-1) for t >= 1, p in (0, 1].
double geometric_pmf(double p, std::int64_t t);

// Negative binomial mass (t-1 choose t-k0) p^k0 (1-p)^(t-k0) on t >= k0,
// the law of a sum of k0 independent geometrics; k0 = 0 is the point mass
// at 0 (empty sum).
double negbin_pmf(std::int64_t k0, double p, std::int64_t t);

// Probability of leaving level i in one step: 1/n, or (c/n)(1-c/n)^i.
double jump_probability(int n, const MutationKind& mutation, int level);

// The n per-level jump probabilities, i = 0..n-1.
std::vector<double> jump_rates(int n, const MutationKind& mutation);

// Documented exact-engine limits. The mixture/convolution laws keep every
// intermediate above 2^-n and eps^n, both far inside double range up to
// n = 128; the oracle is bounded by its 2^n state space.
inline constexpr int kMaxExactN = 128;
inline constexpr int kMaxOracleN = 12;

// t_max such that P(T > t_max) <= tail_target, and additionally
// sum_{t > t_max} t^k P(T=t) <= tail_target * mean^k for k up to
// moment_power. Derived from the union bound
//   P(T > t) <= n * r^(t/n - 1),  r = 1 - min positive jump rate,
// so it needs no knowledge of the law beyond the rates. Levels with zero
// jump rate (c = n) hold their mass at infinity and are excluded; the tail
// then legitimately retains that mass.
std::int64_t suggested_t_max(int n, const MutationKind& mutation,
                             double tail_target = 1e-13, int moment_power = 0);

// One-flip law: mass(t) = 2^-n sum_k C(n,k) negbin(k, 1/n, t), the negative
// binomial mixed over the Binomial(n, 1/2) count of initial zeros. n <= 64.
Pmf oneflip_exact_pmf(int n, std::int64_t t_max);

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
  int n = 0;
  MutationKind mutation;
};

// Closed-form one-flip moments: mean n^2/2, variance (3/4)n^3 - n^2/2
// (law of total variance over the initial zero count).
MomentSummary oneflip_moments(int n);

// Law of the level after a jump: P(j | from i) = 2^-(j-i) for i < j < n and
// 2^-(n-i-1) for j = n; rows sum to one.
struct LevelLaw {
  int n = 0;
  double prob(int from, int to) const;
  std::vector<double> row(int from) const;  // targets from+1 .. n
};

LevelLaw level_transition_law(int n);

// Bernoulli-flip law via the subset representation, convolving the two-point
// mixtures level by level in O(n * t_max). 0 < c <= n, n <= 64.
Pmf bernoulli_exact_pmf(int n, double c, std::int64_t t_max);

// (1/2) sum_i 1/p(n,i), in closed form (1-eps) expm1(-n log1p(-eps)) / (2 eps^2)
// for c < n; direct summation for c = n (then +infinity for n >= 2).
double bernoulli_exact_mean(int n, double c);

// Asymptotic mean coefficient (e^c - 1) / (2 c^2): E(T_n) ~ m(c) n^2.
double m_of_c(double c);

// Asymptotic variance coefficient 3 (e^{2c} - 1) / (8 c^3) of the n^{3/2}
// normalisation.
double sigma2_of_c(double c);

// Centered, n^{3/2}-scaled hitting time: (t - n^2/2)/n^{3/2} for one-flip,
// (t - m(c) n^2)/n^{3/2} for Bernoulli flip.
double theta_statistic(double t, int n, const MutationKind& mutation);

// Independent oracle: exact one-step transition matrix over all 2^n states,
// uniform start, absorption mass at the all-ones state per step. Works for
// both rules and both mutations. n <= 12.
Pmf brute_force_pmf(const ChainConfig& config, std::int64_t t_max);

// Dense 2^n x 2^n transition matrix, row-major, state bit i = position i.
// Exposed for stochasticity checks; n <= 10.
std::vector<std::vector<double>> transition_matrix(const ChainConfig& config);

}  // namespace leadingones

#endif  // LEADINGONES_EXACT_HPP_
