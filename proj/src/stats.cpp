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

#include "leadingones/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace leadingones {

SummaryStats summarize(std::span<const double> samples) {
  const auto count = static_cast<std::int64_t>(samples.size());
  if (count < 2) throw std::invalid_argument("summarize: need >= 2 samples");

  double sum = 0.0;
  for (const double v : samples) sum += v;
  const double mean = sum / static_cast<double>(count);

  double ss = 0.0;
  for (const double v : samples) ss += (v - mean) * (v - mean);
  const double variance = ss / static_cast<double>(count - 1);

  return SummaryStats{mean, variance, count,
                      std::sqrt(variance / static_cast<double>(count))};
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

namespace {

// Series expansion of P(a, x), valid and fast for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int k = 0; k < 10000; ++k) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) by modified Lentz, for x >= a + 1.
double gamma_q_cont_frac(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    throw std::invalid_argument("regularized_gamma_p: a > 0, x >= 0");
  }
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cont_frac(a, x);
}

double chi_square_cdf(int df, double x) {
  if (df < 1) throw std::invalid_argument("chi_square_cdf: df >= 1");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(0.5 * df, 0.5 * x);
}

double chi_square_quantile(int df, double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::invalid_argument("chi_square_quantile: p in (0,1)");
  }
  double lo = 0.0;
  double hi = 2.0 * df + 16.0;
  while (chi_square_cdf(df, hi) < p) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-10 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (chi_square_cdf(df, mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double ks_two_sample_threshold(double alpha, std::int64_t m, std::int64_t n) {
  if (!(alpha > 0.0) || !(alpha < 1.0) || m < 1 || n < 1) {
    throw std::invalid_argument("ks_two_sample_threshold: bad arguments");
  }
  const double c_alpha = std::sqrt(-0.5 * std::log(alpha / 2.0));
  const double dm = static_cast<double>(m);
  const double dn = static_cast<double>(n);
  return c_alpha * std::sqrt((dm + dn) / (dm * dn));
}

Ecdf::Ecdf(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw std::invalid_argument("Ecdf: empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::at(double z) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), z);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

TestReport ks_one_sample(const Ecdf& sample, double mean, double variance,
                         double threshold, std::string name) {
  if (!(variance > 0.0)) {
    throw std::invalid_argument("ks_one_sample: variance must be > 0");
  }
  const double sd = std::sqrt(variance);
  const auto& z = sample.sorted();
  const double count = static_cast<double>(z.size());

  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double f = normal_cdf((z[i] - mean) / sd);
    d = std::max(d, static_cast<double>(i + 1) / count - f);
    d = std::max(d, f - static_cast<double>(i) / count);
  }

  TestReport report;
  report.test = std::move(name);
  report.statistic = d;
  report.threshold = threshold;
  report.pass = d < threshold;
  report.sample_count = sample.count();
  return report;
}

TestReport ks_two_sample(const Ecdf& a, const Ecdf& b, double alpha,
                         std::string name) {
  const auto& va = a.sorted();
  const auto& vb = b.sorted();
  const double na = static_cast<double>(va.size());
  const double nb = static_cast<double>(vb.size());

  // Merge walk; ties advance both sides before the gap is measured.
  double d = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < va.size() && j < vb.size()) {
    const double z = std::min(va[i], vb[j]);
    while (i < va.size() && va[i] <= z) ++i;
    while (j < vb.size() && vb[j] <= z) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  d = std::max(d, std::abs(1.0 - static_cast<double>(j) / nb));
  d = std::max(d, std::abs(static_cast<double>(i) / na - 1.0));

  TestReport report;
  report.test = std::move(name);
  report.statistic = d;
  report.threshold = ks_two_sample_threshold(alpha, a.count(), b.count());
  report.alpha = alpha;
  report.pass = d < report.threshold;
  report.sample_count = a.count() + b.count();
  return report;
}

TestReport chi_square_gof(std::span<const std::uint64_t> observed,
                          std::span<const double> expected_probs,
                          double quantile, std::string name) {
  if (observed.size() != expected_probs.size() || observed.size() < 2) {
    throw std::invalid_argument("chi_square_gof: need >= 2 matching cells");
  }
  double prob_sum = 0.0;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    prob_sum += expected_probs[i];
    total += observed[i];
  }
  if (std::abs(prob_sum - 1.0) > 1e-9) {
    throw std::invalid_argument("chi_square_gof: probabilities must sum to 1");
  }

  double statistic = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = static_cast<double>(total) * expected_probs[i];
    if (expected < 5.0) {
      throw std::invalid_argument(
          "chi_square_gof: expected count below 5; merge cells");
    }
    const double diff = static_cast<double>(observed[i]) - expected;
    statistic += diff * diff / expected;
  }

  TestReport report;
  report.test = std::move(name);
  report.statistic = statistic;
  report.threshold =
      chi_square_quantile(static_cast<int>(observed.size()) - 1, quantile);
  report.alpha = 1.0 - quantile;
  report.pass = statistic < report.threshold;
  report.sample_count = static_cast<std::int64_t>(total);
  return report;
}

}  // namespace leadingones
