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

#ifndef LEADINGONES_STATS_HPP_
#define LEADINGONES_STATS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace leadingones {

struct SummaryStats {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  std::int64_t count = 0;
  double std_error = 0.0;  // sd / sqrt(count)
};

// Sample mean and unbiased variance; requires at least two values.
SummaryStats summarize(std::span<const double> samples);

// Standard normal CDF via erfc; absolute error well below 1e-7.
double normal_cdf(double z);

// Regularized lower incomplete gamma P(a, x), series for x < a+1 and
// continued fraction otherwise, iterated to ~1e-15.
double regularized_gamma_p(double a, double x);

// Chi-square CDF and quantile (df >= 1); the quantile is found by bisection
// on the CDF to ~1e-10.
double chi_square_cdf(int df, double x);
double chi_square_quantile(int df, double p);

// Asymptotic two-sample Kolmogorov-Smirnov acceptance threshold at level
// alpha: sqrt(-ln(alpha/2)/2) * sqrt((m+n)/(m n)).
double ks_two_sample_threshold(double alpha, std::int64_t m, std::int64_t n);

class Ecdf {
 public:
  explicit Ecdf(std::vector<double> values);  // sorts; requires count >= 1

  double at(double z) const;  // fraction of sample <= z
  std::int64_t count() const noexcept {
    return static_cast<std::int64_t>(sorted_.size());
  }
  const std::vector<double>& sorted() const noexcept { return sorted_; }

 private:
  std::vector<double> sorted_;
};

struct TestReport {
  std::string test;
  double statistic = 0.0;
  double threshold = 0.0;
  std::optional<double> alpha;  // set for level-based tests
  bool pass = false;
  std::int64_t n = 0;             // problem size, when meaningful
  std::int64_t sample_count = 0;  // R
  std::uint64_t seed = 0;
};

// sup_z |ECDF(z) - Phi((z - mean)/sd)| over the sample points (both
// one-sided gaps), judged against a caller-supplied threshold. Thresholds
// for convergence-in-distribution checks are fixed constants because the
// limit only holds asymptotically in n.
TestReport ks_one_sample(const Ecdf& sample, double mean, double variance,
                         double threshold, std::string name);

// Two-sample KS distance, judged at the asymptotic level-alpha threshold.
TestReport ks_two_sample(const Ecdf& a, const Ecdf& b, double alpha,
                         std::string name);

// Pearson chi-square against expected cell probabilities (must sum to 1),
// cells-1 degrees of freedom, pass iff the statistic is below the
// `quantile` point of the chi-square law. Requires every expected count
// >= 5; merge cells before calling.
TestReport chi_square_gof(std::span<const std::uint64_t> observed,
                          std::span<const double> expected_probs,
                          double quantile, std::string name);

}  // namespace leadingones

#endif  // LEADINGONES_STATS_HPP_
