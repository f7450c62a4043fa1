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
// Verification suites. Each check re-derives its expected values from the
// exact laws or a statistical threshold documented next to it; the defaults
// pin the scale the acceptance gate runs at.

#ifndef LEADINGONES_VERIFY_HPP_
#define LEADINGONES_VERIFY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leadingones/stats.hpp"

namespace leadingones {

struct VerifyOptions {
  int workers = 0;          // 0 = hardware parallelism
  std::uint64_t seed = 7;   // base seed; experiments derive substreams of it
  std::optional<int> n;     // suite-specific size override
  std::optional<std::int64_t> replicates;
  std::string artifacts_dir;  // determinism suite writes files here if set
};

// Exact one-flip law vs the transition-matrix oracle, n = 1..8:
// total variation < 1e-10 with both tails < 1e-12.
std::vector<TestReport> oracle_oneflip_checks(const VerifyOptions& options);

// Exact Bernoulli-flip law vs the oracle, n = 2..8, c in {0.5, 1, 2} with
// c <= n: total variation < 1e-10.
std::vector<TestReport> oracle_bernoulli_checks(const VerifyOptions& options);

// Strict vs NonStrict oracle laws agree, n = 1..6, both mutations (c = 1).
std::vector<TestReport> exact_equivalence_checks(const VerifyOptions& options);

// Strict vs NonStrict hitting-time samples pass the two-sample KS test at
// alpha = 0.01; n = 50, R = 10^4 per rule, both mutations (c = 1).
std::vector<TestReport> statistical_equivalence_checks(
    const VerifyOptions& options);

// One-flip mean law: exact law mean equals n^2/2 within 1e-9 relative for
// n = 1..50, and a seeded n = 100 Monte Carlo mean lands within 3 standard
// errors of 5000.
std::vector<TestReport> lln_oneflip_checks(const VerifyOptions& options);

// Bernoulli-flip mean law at c = 1: exact mean / n^2 within 5% of m(1) at
// n = 100 and within 0.5% at n = 1000; Monte Carlo mean within 3 standard
// errors of the exact finite-n mean.
std::vector<TestReport> lln_bernoulli_checks(const VerifyOptions& options);

// m(c) > 1/2 on c = 0.01..10, and the Bernoulli exact mean beats the
// one-flip exact mean at every grid point for n = 100.
std::vector<TestReport> corollary_checks(const VerifyOptions& options);

// One-flip CLT at desk scale: empirical variance of the normalised hitting
// time within 10% of 3/4 and KS distance to N(0, 3/4) below 0.05 at n = 200,
// R = 2*10^4; the KS distance at n = 400 does not exceed the one at n = 100
// for one seeded pair.
std::vector<TestReport> clt_oneflip_checks(const VerifyOptions& options);

// Bernoulli-flip CLT at c = 1: variance within 15% of sigma^2(1), KS
// distance to N(0, sigma^2(1)) below 0.06 at n = 200, R = 2*10^4.
std::vector<TestReport> clt_bernoulli_checks(const VerifyOptions& options);

// First-jump suffix uniformity (chi-square over {0,1}^3 at the 0.999
// quantile, n = 5, c = 1, conditioned level 1, 10^5 draws) and level
// transition frequencies against the 2^-(j-i) law (n = 5, from level 0).
std::vector<TestReport> lemmas_checks(const VerifyOptions& options);

// Reruns every sample-producing experiment above with one worker and with
// full parallelism and requires byte-identical CSV artifacts.
std::vector<TestReport> determinism_checks(const VerifyOptions& options);

struct CompareRow {
  int n = 0;
  double c = 0.0;
  double oneflip_mean = 0.0;
  double bernoulli_mean = 0.0;
  double oneflip_ratio = 0.0;    // mean / (n^2/2), identically 1
  double bernoulli_ratio = 0.0;  // mean / (n^2/2)
  double m_c = 0.0;
};

std::vector<CompareRow> compare_table(int n, std::span<const double> c_grid);

// Named suites: oracle, lln, clt, equivalence, lemmas, all ("all" appends
// the determinism checks).
bool is_suite_name(const std::string& name);
std::vector<TestReport> run_suite(const std::string& name,
                                  const VerifyOptions& options);

}  // namespace leadingones

#endif  // LEADINGONES_VERIFY_HPP_
