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

#include "leadingones/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace leadingones {

namespace {

// Neumaier-compensated accumulator; the million-entry laws need better than
// naive summation for the 1e-9-relative mean checks.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double log_choose(std::int64_t a, std::int64_t b) {
  return std::lgamma(static_cast<double>(a) + 1.0) -
         std::lgamma(static_cast<double>(b) + 1.0) -
         std::lgamma(static_cast<double>(a - b) + 1.0);
}

int state_leading_ones(std::uint32_t s) noexcept {
  return std::countr_one(s);
}

}  // namespace

double Pmf::mean() const {
  CompensatedSum s;
  for (std::size_t t = 0; t < mass.size(); ++t) {
    s.add(static_cast<double>(t) * mass[t]);
  }
  return s.value();
}

double Pmf::variance() const {
  const double m = mean();
  CompensatedSum s;
  for (std::size_t t = 0; t < mass.size(); ++t) {
    const double d = static_cast<double>(t) - m;
    s.add(d * d * mass[t]);
  }
  return s.value();
}

double Pmf::normalization_error() const {
  CompensatedSum s;
  double worst_negative = 0.0;
  for (const double v : mass) {
    s.add(v);
    worst_negative = std::min(worst_negative, v);
  }
  s.add(tail);
  return std::max(std::abs(s.value() - 1.0), -worst_negative);
}

double total_variation(const Pmf& a, const Pmf& b) {
  if (a.mass.size() != b.mass.size()) {
    throw std::invalid_argument("total_variation: t_max mismatch");
  }
  CompensatedSum s;
  for (std::size_t t = 0; t < a.mass.size(); ++t) {
    s.add(std::abs(a.mass[t] - b.mass[t]));
  }
  s.add(std::abs(a.tail - b.tail));
  return 0.5 * s.value();
}

double geometric_pmf(double p, std::int64_t t) {
  if (!(p > 0.0) || p > 1.0) {
    throw std::invalid_argument("geometric_pmf: p must be in (0,1]");
  }
  if (t < 1) throw std::invalid_argument("geometric_pmf: t must be >= 1");
  if (t == 1) return p;
  return p * std::exp(static_cast<double>(t - 1) * std::log1p(-p));
}

double negbin_pmf(std::int64_t k0, double p, std::int64_t t) {
  if (!(p > 0.0) || p > 1.0) {
    throw std::invalid_argument("negbin_pmf: p must be in (0,1]");
  }
  if (k0 < 0 || t < 0) throw std::invalid_argument("negbin_pmf: negative arg");
  if (k0 == 0) return t == 0 ? 1.0 : 0.0;  // empty sum of geometrics
  if (t < k0) return 0.0;
  if (p == 1.0) return t == k0 ? 1.0 : 0.0;
  return std::exp(log_choose(t - 1, t - k0) +
                  static_cast<double>(k0) * std::log(p) +
                  static_cast<double>(t - k0) * std::log1p(-p));
}

double jump_probability(int n, const MutationKind& mutation, int level) {
  if (level < 0 || level >= n) {
    throw std::invalid_argument("jump_probability: level must be in [0, n)");
  }
  if (mutation.kind == Mutation::OneFlip) return 1.0 / n;
  const double eps = mutation.c / n;
  return eps * std::pow(1.0 - eps, level);
}

std::vector<double> jump_rates(int n, const MutationKind& mutation) {
  std::vector<double> rates(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rates[static_cast<std::size_t>(i)] = jump_probability(n, mutation, i);
  return rates;
}

std::int64_t suggested_t_max(int n, const MutationKind& mutation,
                             double tail_target, int moment_power) {
  const auto rates = jump_rates(n, mutation);
  double p_min = 1.0;
  double mean_scale = 0.0;
  for (const double p : rates) {
    if (p <= 0.0) continue;  // mass held at infinity, not a truncation issue
    p_min = std::min(p_min, p);
    mean_scale += 0.5 / p;
  }
  if (p_min >= 1.0) return n;  // every positive sojourn is one step

  // Union bound P(T > t) <= K q^t with K = n/r, q = r^(1/n), r = 1 - p_min.
  const double r = 1.0 - p_min;
  const double q = std::exp(std::log(r) / n);
  const double big_k = static_cast<double>(n) / r;
  const double m1_target = tail_target * std::max(mean_scale, 1.0);
  const double m2_target = m1_target * std::max(mean_scale, 1.0);

  const auto ok = [&](double t0) {
    const double qt = big_k * std::pow(q, t0);
    if (qt > tail_target) return false;
    if (moment_power >= 1) {
      const double m1 = qt * (t0 + 1.0) + big_k * std::pow(q, t0 + 1.0) / (1.0 - q);
      if (m1 > m1_target) return false;
    }
    if (moment_power >= 2) {
      const double m = t0 + 1.0;
      const double g = 1.0 - q;
      const double m2 = (big_k / q) * std::pow(q, m) *
                        (m * m / g + 2.0 * m * q / (g * g) +
                         q * (1.0 + q) / (g * g * g));
      if (m2 > m2_target) return false;
    }
    return true;
  };

  double hi = static_cast<double>(n);
  while (!ok(hi)) {
    hi *= 2.0;
    if (hi > 4.0e9) {
      throw std::runtime_error("suggested_t_max: target not reachable");
    }
  }
  double lo = hi / 2.0;
  while (hi - lo > std::max(1.0, 0.005 * hi)) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return static_cast<std::int64_t>(std::ceil(hi));
}

Pmf oneflip_exact_pmf(int n, std::int64_t t_max) {
  if (n < 1 || n > kMaxExactN) {
    throw std::invalid_argument("oneflip_exact_pmf: n must be in [1, 128]");
  }
  if (t_max < 0) throw std::invalid_argument("oneflip_exact_pmf: t_max < 0");
  const double eps = 1.0 / n;

  // Binomial(n, 1/2) weights by multiplicative recurrence.
  std::vector<double> weight(static_cast<std::size_t>(n) + 1);
  weight[0] = std::pow(0.5, n);
  for (int k = 1; k <= n; ++k) {
    weight[static_cast<std::size_t>(k)] =
        weight[static_cast<std::size_t>(k - 1)] * (n - k + 1) / k;
  }

  Pmf pmf;
  pmf.mass.assign(static_cast<std::size_t>(t_max) + 1, 0.0);
  pmf.mass[0] = weight[0];

  // nb[k] tracks negbin(k, eps, t) along t via
  //   negbin(k, eps, t) = negbin(k, eps, t-1) * (1-eps) (t-1)/(t-k),
  // started at negbin(k, eps, k) = eps^k.
  std::vector<double> nb(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::int64_t t = 1; t <= t_max; ++t) {
    double m = 0.0;
    const int k_hi = static_cast<int>(std::min<std::int64_t>(n, t));
    for (int k = 1; k <= k_hi; ++k) {
      auto& v = nb[static_cast<std::size_t>(k)];
      if (t == k) {
        v = std::pow(eps, k);
      } else {
        v *= (1.0 - eps) * static_cast<double>(t - 1) / static_cast<double>(t - k);
      }
      m += weight[static_cast<std::size_t>(k)] * v;
    }
    pmf.mass[static_cast<std::size_t>(t)] = m;
  }

  CompensatedSum total;
  for (const double v : pmf.mass) total.add(v);
  pmf.tail = std::max(0.0, 1.0 - total.value());
  return pmf;
}

MomentSummary oneflip_moments(int n) {
  if (n < 1) throw std::invalid_argument("oneflip_moments: n must be >= 1");
  const double dn = n;
  MomentSummary s;
  s.mean = dn * dn / 2.0;
  s.variance = 0.75 * dn * dn * dn - dn * dn / 2.0;
  s.n = n;
  s.mutation = MutationKind::one_flip();
  return s;
}

double LevelLaw::prob(int from, int to) const {
  if (from < 0 || from >= n || to <= from || to > n) {
    throw std::invalid_argument("LevelLaw: require 0 <= from < to <= n");
  }
  return to == n ? std::exp2(-(n - from - 1)) : std::exp2(-(to - from));
}

std::vector<double> LevelLaw::row(int from) const {
  std::vector<double> r;
  r.reserve(static_cast<std::size_t>(n - from));
  for (int to = from + 1; to <= n; ++to) r.push_back(prob(from, to));
  return r;
}

LevelLaw level_transition_law(int n) {
  if (n < 1) throw std::invalid_argument("level_transition_law: n >= 1");
  return LevelLaw{n};
}

Pmf bernoulli_exact_pmf(int n, double c, std::int64_t t_max) {
  if (n < 1 || n > kMaxExactN) {
    throw std::invalid_argument("bernoulli_exact_pmf: n must be in [1, 128]");
  }
  if (!(c > 0.0) || c > static_cast<double>(n)) {
    throw std::invalid_argument("bernoulli_exact_pmf: require 0 < c <= n");
  }
  if (t_max < 0) throw std::invalid_argument("bernoulli_exact_pmf: t_max < 0");
  const double eps = c / n;

  // Convolve (1/2) delta_0 + (1/2) G(p_i) for i = 0..n-1. Truncation at
  // t_max is exact for the kept entries: convolution is lower-triangular.
  std::vector<double> cur(static_cast<std::size_t>(t_max) + 1, 0.0);
  std::vector<double> next(cur.size());
  cur[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const double p = eps * std::pow(1.0 - eps, i);
    double conv = 0.0;  // (cur * G(p))(t), advanced by one recurrence step
    next[0] = 0.5 * cur[0];
    for (std::int64_t t = 1; t <= t_max; ++t) {
      conv = (1.0 - p) * conv + p * cur[static_cast<std::size_t>(t - 1)];
      next[static_cast<std::size_t>(t)] =
          0.5 * cur[static_cast<std::size_t>(t)] + 0.5 * conv;
    }
    cur.swap(next);
  }

  Pmf pmf;
  pmf.mass = std::move(cur);
  CompensatedSum total;
  for (const double v : pmf.mass) total.add(v);
  pmf.tail = std::max(0.0, 1.0 - total.value());
  return pmf;
}

double bernoulli_exact_mean(int n, double c) {
  if (n < 1) throw std::invalid_argument("bernoulli_exact_mean: n >= 1");
  if (!(c > 0.0) || c > static_cast<double>(n)) {
    throw std::invalid_argument("bernoulli_exact_mean: require 0 < c <= n");
  }
  const double eps = c / n;
  if (eps >= 1.0) {
    // Direct summation; levels past the first never jump for n >= 2.
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double p = eps * std::pow(1.0 - eps, i);
      if (p <= 0.0) return std::numeric_limits<double>::infinity();
      sum += 0.5 / p;
    }
    return sum;
  }
  // (1/(2 eps)) * ((1-eps)^-n - 1) / ((1-eps)^-1 - 1), rearranged.
  const double log_keep = std::log1p(-eps);
  return (1.0 - eps) * std::expm1(-static_cast<double>(n) * log_keep) /
         (2.0 * eps * eps);
}

double m_of_c(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("m_of_c: c must be > 0");
  return std::expm1(c) / (2.0 * c * c);
}

double sigma2_of_c(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("sigma2_of_c: c must be > 0");
  return 3.0 * std::expm1(2.0 * c) / (8.0 * c * c * c);
}

double theta_statistic(double t, int n, const MutationKind& mutation) {
  if (n < 1) throw std::invalid_argument("theta_statistic: n >= 1");
  const double dn = n;
  const double center = mutation.kind == Mutation::OneFlip
                            ? dn * dn / 2.0
                            : m_of_c(mutation.c) * dn * dn;
  return (t - center) / std::pow(dn, 1.5);
}

namespace {

Pmf brute_force_oneflip(const ChainConfig& config, std::int64_t t_max) {
  const int n = config.n;
  const std::uint32_t n_states = 1u << n;
  const std::uint32_t opt = n_states - 1;
  const double flip_p = 1.0 / n;
  const bool strict = config.selection == SelectionRule::Strict;

  std::vector<double> pi(n_states, 1.0 / n_states);
  std::vector<double> next(n_states);
  Pmf pmf;
  pmf.mass.assign(static_cast<std::size_t>(t_max) + 1, 0.0);
  pmf.mass[0] = pi[opt];
  pi[opt] = 0.0;

  for (std::int64_t t = 1; t <= t_max; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    double absorbed = 0.0;
    for (std::uint32_t s = 0; s < n_states; ++s) {
      const double mass_s = pi[s];
      if (mass_s == 0.0) continue;
      const int level = state_leading_ones(s);
      double stay = 0.0;
      for (int j = 0; j < n; ++j) {
        const std::uint32_t y = s ^ (1u << j);
        const int level_y = state_leading_ones(y);
        const bool accept = strict ? level_y > level : level_y >= level;
        if (!accept) {
          stay += mass_s * flip_p;
        } else if (y == opt) {
          absorbed += mass_s * flip_p;
        } else {
          next[y] += mass_s * flip_p;
        }
      }
      next[s] += stay;
    }
    pmf.mass[static_cast<std::size_t>(t)] = absorbed;
    pi.swap(next);
  }

  CompensatedSum total;
  for (const double v : pmf.mass) total.add(v);
  pmf.tail = std::max(0.0, 1.0 - total.value());
  return pmf;
}

Pmf brute_force_bernoulli(const ChainConfig& config, std::int64_t t_max) {
  const int n = config.n;
  const std::uint32_t n_states = 1u << n;
  const std::uint32_t opt = n_states - 1;
  const double eps = config.mutation.c / n;
  const bool strict = config.selection == SelectionRule::Strict;

  // Mask probability by popcount; 0^0 = 1 keeps eps = 1 exact.
  std::vector<double> mask_p(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    mask_p[static_cast<std::size_t>(k)] =
        std::pow(eps, k) * std::pow(1.0 - eps, n - k);
  }

  // Dense row-major transition matrix with rejections folded into the
  // diagonal. 8 * 4^n bytes; the documented oracle limit keeps this sane.
  std::vector<double> matrix(static_cast<std::size_t>(n_states) * n_states, 0.0);
  for (std::uint32_t s = 0; s < n_states; ++s) {
    double* row = matrix.data() + static_cast<std::size_t>(s) * n_states;
    const int level = state_leading_ones(s);
    for (std::uint32_t mask = 0; mask < n_states; ++mask) {
      const std::uint32_t y = s ^ mask;
      const int level_y = state_leading_ones(y);
      const bool accept = strict ? level_y > level : level_y >= level;
      row[accept ? y : s] += mask_p[static_cast<std::size_t>(std::popcount(mask))];
    }
  }

  std::vector<double> pi(n_states, 1.0 / n_states);
  std::vector<double> next(n_states);
  Pmf pmf;
  pmf.mass.assign(static_cast<std::size_t>(t_max) + 1, 0.0);
  pmf.mass[0] = pi[opt];
  pi[opt] = 0.0;

  for (std::int64_t t = 1; t <= t_max; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::uint32_t s = 0; s < n_states; ++s) {
      const double mass_s = pi[s];
      if (mass_s == 0.0) continue;
      const double* row = matrix.data() + static_cast<std::size_t>(s) * n_states;
      for (std::uint32_t y = 0; y < n_states; ++y) {
        next[y] += mass_s * row[y];
      }
    }
    pmf.mass[static_cast<std::size_t>(t)] = next[opt];
    next[opt] = 0.0;
    pi.swap(next);
  }

  CompensatedSum total;
  for (const double v : pmf.mass) total.add(v);
  pmf.tail = std::max(0.0, 1.0 - total.value());
  return pmf;
}

}  // namespace

Pmf brute_force_pmf(const ChainConfig& config, std::int64_t t_max) {
  if (config.n > kMaxOracleN) {
    throw std::invalid_argument("brute_force_pmf: n must be <= 12");
  }
  if (t_max < 0) throw std::invalid_argument("brute_force_pmf: t_max < 0");
  return config.mutation.kind == Mutation::OneFlip
             ? brute_force_oneflip(config, t_max)
             : brute_force_bernoulli(config, t_max);
}

std::vector<std::vector<double>> transition_matrix(const ChainConfig& config) {
  const int n = config.n;
  if (n > 10) throw std::invalid_argument("transition_matrix: n must be <= 10");
  const std::uint32_t n_states = 1u << n;
  const bool strict = config.selection == SelectionRule::Strict;

  std::vector<std::vector<double>> matrix(
      n_states, std::vector<double>(n_states, 0.0));
  for (std::uint32_t s = 0; s < n_states; ++s) {
    const int level = state_leading_ones(s);
    auto& row = matrix[s];
    if (config.mutation.kind == Mutation::OneFlip) {
      for (int j = 0; j < n; ++j) {
        const std::uint32_t y = s ^ (1u << j);
        const int level_y = state_leading_ones(y);
        const bool accept = strict ? level_y > level : level_y >= level;
        row[accept ? y : s] += 1.0 / n;
      }
    } else {
      const double eps = config.mutation.c / n;
      for (std::uint32_t mask = 0; mask < n_states; ++mask) {
        const std::uint32_t y = s ^ mask;
        const int level_y = state_leading_ones(y);
        const bool accept = strict ? level_y > level : level_y >= level;
        const int k = std::popcount(mask);
        row[accept ? y : s] += std::pow(eps, k) * std::pow(1.0 - eps, n - k);
      }
    }
  }
  return matrix;
}

}  // namespace leadingones
