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

#include "leadingones/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "leadingones/exact.hpp"
#include "leadingones/io.hpp"
#include "leadingones/simulate.hpp"

namespace leadingones {

namespace {

// Experiment tags; the master seed of experiment `tag` under base seed `s`
// is substream_seed(s, tag). Distinct tags keep the statistical tests on
// independent streams.
enum ExperimentTag : std::uint64_t {
  kTagLlnOneflipMc = 1,
  kTagLlnBernoulliMc = 2,
  kTagCltOneflip = 3,
  kTagCltTrendSmall = 4,
  kTagCltTrendLarge = 5,
  kTagCltBernoulli = 6,
  kTagEqOneflipStrict = 7,
  kTagEqOneflipNonStrict = 8,
  kTagEqBernoulliStrict = 9,
  kTagEqBernoulliNonStrict = 10,
  kTagLemmaSuffix = 11,
  kTagLemmaLevels = 12,
};

std::uint64_t experiment_seed(const VerifyOptions& o, std::uint64_t tag) {
  return substream_seed(o.seed, tag);
}

constexpr double kOracleTvThreshold = 1e-10;
constexpr double kOracleTailLimit = 1e-12;

std::string key(int n) { return "n=" + std::to_string(n); }

std::string key(int n, double c) {
  std::ostringstream os;
  os << "n=" << n << ",c=" << c;
  return os.str();
}

TestReport oracle_report(const std::string& name, const ChainConfig& config,
                         const Pmf& exact, const Pmf& oracle,
                         bool require_tiny_tails) {
  TestReport r;
  r.test = name;
  r.statistic = total_variation(exact, oracle);
  r.threshold = kOracleTvThreshold;
  r.n = config.n;
  r.pass = r.statistic < r.threshold;
  if (require_tiny_tails) {
    r.pass = r.pass && exact.tail < kOracleTailLimit &&
             oracle.tail < kOracleTailLimit;
  }
  return r;
}

std::vector<double> theta_values(const SampleSet& samples) {
  const auto times = samples.hitting_times();
  std::vector<double> theta;
  theta.reserve(times.size());
  for (const double t : times) {
    theta.push_back(
        theta_statistic(t, samples.plan.config.n, samples.plan.config.mutation));
  }
  return theta;
}

SampleSet run_tagged(const VerifyOptions& o, std::uint64_t tag,
                     const ChainConfig& config, std::int64_t replicates) {
  const ExperimentPlan plan{config, replicates, experiment_seed(o, tag), {}};
  return run_experiment(plan, o.workers);
}

}  // namespace

std::vector<TestReport> oracle_oneflip_checks(const VerifyOptions& options) {
  const int max_n = std::min(options.n.value_or(8), kMaxOracleN);
  std::vector<TestReport> reports;
  for (int n = 1; n <= max_n; ++n) {
    const ChainConfig config(n, MutationKind::one_flip(), SelectionRule::Strict);
    const std::int64_t t_max = suggested_t_max(n, config.mutation);
    const Pmf exact = oneflip_exact_pmf(n, t_max);
    const Pmf oracle = brute_force_pmf(config, t_max);
    reports.push_back(oracle_report("oracle/oneflip/" + key(n), config, exact,
                                    oracle, /*require_tiny_tails=*/true));
  }
  return reports;
}

std::vector<TestReport> oracle_bernoulli_checks(const VerifyOptions& options) {
  const int max_n = std::min(options.n.value_or(8), kMaxOracleN);
  std::vector<TestReport> reports;
  for (int n = 2; n <= max_n; ++n) {
    for (const double c : {0.5, 1.0, 2.0}) {
      if (c > n) continue;
      const ChainConfig config(n, MutationKind::bernoulli_flip(c),
                               SelectionRule::Strict);
      const std::int64_t t_max = suggested_t_max(n, config.mutation);
      const Pmf exact = bernoulli_exact_pmf(n, c, t_max);
      const Pmf oracle = brute_force_pmf(config, t_max);
      // c = n holds mass at infinity in both laws; tails then match instead
      // of vanishing.
      const bool tiny_tails = c < n;
      reports.push_back(oracle_report("oracle/bernoulli/" + key(n, c), config,
                                      exact, oracle, tiny_tails));
    }
  }
  return reports;
}

std::vector<TestReport> exact_equivalence_checks(const VerifyOptions& options) {
  const int max_n = std::min(options.n.value_or(6), kMaxOracleN);
  std::vector<TestReport> reports;
  for (int n = 1; n <= max_n; ++n) {
    for (const bool bernoulli : {false, true}) {
      const MutationKind mutation =
          bernoulli ? MutationKind::bernoulli_flip(1.0) : MutationKind::one_flip();
      const std::int64_t t_max = suggested_t_max(n, mutation);
      const Pmf strict =
          brute_force_pmf(ChainConfig(n, mutation, SelectionRule::Strict), t_max);
      const Pmf non_strict = brute_force_pmf(
          ChainConfig(n, mutation, SelectionRule::NonStrict), t_max);
      TestReport r;
      r.test = std::string("equivalence/exact/") +
               (bernoulli ? "bernoulli/" : "oneflip/") + key(n);
      r.statistic = total_variation(strict, non_strict);
      r.threshold = kOracleTvThreshold;
      r.n = n;
      r.pass = r.statistic < r.threshold;
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

std::vector<TestReport> statistical_equivalence_checks(
    const VerifyOptions& options) {
  const int n = options.n.value_or(50);
  const std::int64_t replicates = options.replicates.value_or(10000);
  std::vector<TestReport> reports;

  const auto run_pair = [&](const MutationKind& mutation, std::uint64_t tag_a,
                            std::uint64_t tag_b, const std::string& label) {
    const SampleSet strict = run_tagged(
        options, tag_a, ChainConfig(n, mutation, SelectionRule::Strict),
        replicates);
    const SampleSet non_strict = run_tagged(
        options, tag_b, ChainConfig(n, mutation, SelectionRule::NonStrict),
        replicates);
    const Ecdf a(strict.hitting_times());
    const Ecdf b(non_strict.hitting_times());
    TestReport r = ks_two_sample(a, b, 0.01, "equivalence/ks2/" + label);
    r.n = n;
    r.seed = experiment_seed(options, tag_a);
    reports.push_back(std::move(r));
  };

  run_pair(MutationKind::one_flip(), kTagEqOneflipStrict,
           kTagEqOneflipNonStrict, "oneflip/" + key(n));
  run_pair(MutationKind::bernoulli_flip(1.0), kTagEqBernoulliStrict,
           kTagEqBernoulliNonStrict, "bernoulli/" + key(n, 1.0));
  return reports;
}

std::vector<TestReport> lln_oneflip_checks(const VerifyOptions& options) {
  std::vector<TestReport> reports;

  // Exact-law mean against n^2/2, 1e-9 relative, n = 1..50. t_max carries a
  // first-moment truncation bound two orders tighter than the tolerance.
  {
    const int max_n = std::min(options.n.value_or(50), kMaxExactN);
    double worst = 0.0;
    for (int n = 1; n <= max_n; ++n) {
      const std::int64_t t_max =
          suggested_t_max(n, MutationKind::one_flip(), 1e-13, 1);
      const Pmf pmf = oneflip_exact_pmf(n, t_max);
      const double expected = 0.5 * static_cast<double>(n) * n;
      worst = std::max(worst, std::abs(pmf.mean() / expected - 1.0));
    }
    TestReport r;
    r.test = "lln/oneflip/exact-mean-sweep/n=1.." + std::to_string(max_n);
    r.statistic = worst;
    r.threshold = 1e-9;
    r.n = max_n;
    r.pass = worst < r.threshold;
    reports.push_back(std::move(r));
  }

  // Seeded Monte Carlo mean at n = 100 within 3 standard errors of 5000.
  {
    const int n = 100;
    const std::int64_t replicates = options.replicates.value_or(10000);
    const SampleSet samples =
        run_tagged(options, kTagLlnOneflipMc,
                   ChainConfig(n, MutationKind::one_flip(), SelectionRule::Strict),
                   replicates);
    const SummaryStats stats = summarize(samples.hitting_times());
    TestReport r;
    r.test = "lln/oneflip/mc-mean/" + key(n);
    r.statistic = std::abs(stats.mean - 5000.0) / stats.std_error;
    r.threshold = 3.0;
    r.n = n;
    r.sample_count = replicates;
    r.seed = experiment_seed(options, kTagLlnOneflipMc);
    r.pass = r.statistic < r.threshold && samples.capped_count() == 0;
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<TestReport> lln_bernoulli_checks(const VerifyOptions& options) {
  std::vector<TestReport> reports;
  const double m1 = m_of_c(1.0);

  const auto closed_form_check = [&](int n, double tolerance) {
    const double ratio =
        bernoulli_exact_mean(n, 1.0) / (static_cast<double>(n) * n);
    TestReport r;
    r.test = "lln/bernoulli/mean-coefficient/" + key(n, 1.0);
    r.statistic = std::abs(ratio / m1 - 1.0);
    r.threshold = tolerance;
    r.n = n;
    r.pass = r.statistic < r.threshold;
    reports.push_back(std::move(r));
  };
  closed_form_check(100, 0.05);
  closed_form_check(1000, 0.005);

  {
    const int n = 100;
    const std::int64_t replicates = options.replicates.value_or(10000);
    const SampleSet samples = run_tagged(
        options, kTagLlnBernoulliMc,
        ChainConfig(n, MutationKind::bernoulli_flip(1.0), SelectionRule::Strict),
        replicates);
    const SummaryStats stats = summarize(samples.hitting_times());
    const double exact_mean = bernoulli_exact_mean(n, 1.0);
    TestReport r;
    r.test = "lln/bernoulli/mc-mean/" + key(n, 1.0);
    r.statistic = std::abs(stats.mean - exact_mean) / stats.std_error;
    r.threshold = 3.0;
    r.n = n;
    r.sample_count = replicates;
    r.seed = experiment_seed(options, kTagLlnBernoulliMc);
    r.pass = r.statistic < r.threshold && samples.capped_count() == 0;
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<CompareRow> compare_table(int n, std::span<const double> c_grid) {
  const double half_n2 = 0.5 * static_cast<double>(n) * n;
  std::vector<CompareRow> rows;
  rows.reserve(c_grid.size());
  for (const double c : c_grid) {
    CompareRow row;
    row.n = n;
    row.c = c;
    row.oneflip_mean = half_n2;
    row.bernoulli_mean = bernoulli_exact_mean(n, c);
    row.oneflip_ratio = row.oneflip_mean / half_n2;
    row.bernoulli_ratio = row.bernoulli_mean / half_n2;
    row.m_c = m_of_c(c);
    rows.push_back(row);
  }
  return rows;
}

std::vector<TestReport> corollary_checks(const VerifyOptions& options) {
  std::vector<double> grid;
  grid.reserve(1000);
  for (int k = 1; k <= 1000; ++k) grid.push_back(0.01 * k);

  std::vector<TestReport> reports;
  {
    double min_m = std::numeric_limits<double>::infinity();
    for (const double c : grid) min_m = std::min(min_m, m_of_c(c));
    TestReport r;
    r.test = "corollary/m-of-c-above-half/c=0.01..10";
    r.statistic = min_m;
    r.threshold = 0.5;
    r.pass = min_m > 0.5;
    reports.push_back(std::move(r));
  }
  {
    const int n = options.n.value_or(100);
    double min_gap = std::numeric_limits<double>::infinity();
    for (const auto& row : compare_table(n, grid)) {
      min_gap = std::min(min_gap, row.bernoulli_mean - row.oneflip_mean);
    }
    TestReport r;
    r.test = "corollary/bernoulli-mean-exceeds-oneflip/" + key(n);
    r.statistic = min_gap;
    r.threshold = 0.0;
    r.n = n;
    r.pass = min_gap > 0.0;
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<TestReport> clt_oneflip_checks(const VerifyOptions& options) {
  const int n = options.n.value_or(200);
  const std::int64_t replicates = options.replicates.value_or(20000);
  const MutationKind mutation = MutationKind::one_flip();
  std::vector<TestReport> reports;

  const SampleSet samples = run_tagged(
      options, kTagCltOneflip, ChainConfig(n, mutation, SelectionRule::Strict),
      replicates);
  const std::vector<double> theta = theta_values(samples);
  const SummaryStats stats = summarize(theta);

  {
    TestReport r;
    r.test = "clt/oneflip/theta-variance/" + key(n);
    r.statistic = std::abs(stats.variance - 0.75) / 0.75;
    r.threshold = 0.10;
    r.n = n;
    r.sample_count = replicates;
    r.seed = experiment_seed(options, kTagCltOneflip);
    r.pass = r.statistic < r.threshold && samples.capped_count() == 0;
    reports.push_back(std::move(r));
  }
  {
    TestReport r = ks_one_sample(Ecdf(theta), 0.0, 0.75, 0.05,
                                 "clt/oneflip/ks-gaussian/" + key(n));
    r.n = n;
    r.seed = experiment_seed(options, kTagCltOneflip);
    reports.push_back(std::move(r));
  }

  // Monotone trend of the KS distance over one seeded pair of sizes.
  {
    const auto distance_at = [&](int trend_n, std::uint64_t tag) {
      const SampleSet s = run_tagged(
          options, tag, ChainConfig(trend_n, mutation, SelectionRule::Strict),
          replicates);
      const TestReport k =
          ks_one_sample(Ecdf(theta_values(s)), 0.0, 0.75, 1.0, "trend");
      return k.statistic;
    };
    const double d_small = distance_at(100, kTagCltTrendSmall);
    const double d_large = distance_at(400, kTagCltTrendLarge);
    TestReport r;
    r.test = "clt/oneflip/ks-trend/n=400-vs-100";
    r.statistic = d_large - d_small;
    r.threshold = 0.0;
    r.n = 400;
    r.sample_count = replicates;
    r.seed = experiment_seed(options, kTagCltTrendSmall);
    r.pass = d_large <= d_small;
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<TestReport> clt_bernoulli_checks(const VerifyOptions& options) {
  const int n = options.n.value_or(200);
  const std::int64_t replicates = options.replicates.value_or(20000);
  const double sigma2 = sigma2_of_c(1.0);
  std::vector<TestReport> reports;

  const SampleSet samples = run_tagged(
      options, kTagCltBernoulli,
      ChainConfig(n, MutationKind::bernoulli_flip(1.0), SelectionRule::Strict),
      replicates);
  const std::vector<double> theta = theta_values(samples);
  const SummaryStats stats = summarize(theta);

  {
    TestReport r;
    r.test = "clt/bernoulli/theta-variance/" + key(n, 1.0);
    r.statistic = std::abs(stats.variance - sigma2) / sigma2;
    r.threshold = 0.15;
    r.n = n;
    r.sample_count = replicates;
    r.seed = experiment_seed(options, kTagCltBernoulli);
    r.pass = r.statistic < r.threshold && samples.capped_count() == 0;
    reports.push_back(std::move(r));
  }
  {
    TestReport r = ks_one_sample(Ecdf(theta), 0.0, sigma2, 0.06,
                                 "clt/bernoulli/ks-gaussian/" + key(n, 1.0));
    r.n = n;
    r.seed = experiment_seed(options, kTagCltBernoulli);
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<TestReport> lemmas_checks(const VerifyOptions& options) {
  const std::int64_t draws = options.replicates.value_or(100000);
  std::vector<TestReport> reports;

  // First-jump suffix is uniform on {0,1}^(n-i-1): n = 5, c = 1, level 1.
  {
    const FirstJumpTable table = collect_suffix_samples(
        5, 1.0, 1, draws, experiment_seed(options, kTagLemmaSuffix));
    if (table.budget_exhausted) {
      throw std::runtime_error("lemmas_checks: suffix draw budget exhausted");
    }
    const std::vector<double> uniform(table.suffix_counts.size(),
                                      1.0 / table.suffix_counts.size());
    TestReport r = chi_square_gof(table.suffix_counts, uniform, 0.999,
                                  "lemmas/suffix-uniform/n=5,c=1,level=1");
    r.n = 5;
    r.seed = experiment_seed(options, kTagLemmaSuffix);
    reports.push_back(std::move(r));
  }

  // First-jump level frequencies from level 0 follow the halving law.
  {
    const FirstJumpTable table = collect_suffix_samples(
        5, 1.0, 0, draws, experiment_seed(options, kTagLemmaLevels));
    if (table.budget_exhausted) {
      throw std::runtime_error("lemmas_checks: level draw budget exhausted");
    }
    const std::vector<double> expected = level_transition_law(5).row(0);
    TestReport r = chi_square_gof(table.level_counts, expected, 0.999,
                                  "lemmas/level-transitions/n=5,from=0");
    r.n = 5;
    r.seed = experiment_seed(options, kTagLemmaLevels);
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<TestReport> determinism_checks(const VerifyOptions& options) {
  struct NamedPlan {
    std::string name;
    ExperimentPlan plan;
  };

  const std::int64_t mc_r = options.replicates.value_or(10000);
  const std::int64_t clt_r = options.replicates.value_or(20000);
  const auto seed_of = [&](std::uint64_t tag) { return experiment_seed(options, tag); };

  const std::vector<NamedPlan> plans = {
      {"lln-oneflip-n100",
       {ChainConfig(100, MutationKind::one_flip(), SelectionRule::Strict), mc_r,
        seed_of(kTagLlnOneflipMc), {}}},
      {"lln-bernoulli-n100",
       {ChainConfig(100, MutationKind::bernoulli_flip(1.0), SelectionRule::Strict),
        mc_r, seed_of(kTagLlnBernoulliMc), {}}},
      {"clt-oneflip-n200",
       {ChainConfig(200, MutationKind::one_flip(), SelectionRule::Strict), clt_r,
        seed_of(kTagCltOneflip), {}}},
      {"clt-trend-n100",
       {ChainConfig(100, MutationKind::one_flip(), SelectionRule::Strict), clt_r,
        seed_of(kTagCltTrendSmall), {}}},
      {"clt-trend-n400",
       {ChainConfig(400, MutationKind::one_flip(), SelectionRule::Strict), clt_r,
        seed_of(kTagCltTrendLarge), {}}},
      {"clt-bernoulli-n200",
       {ChainConfig(200, MutationKind::bernoulli_flip(1.0), SelectionRule::Strict),
        clt_r, seed_of(kTagCltBernoulli), {}}},
      {"equivalence-oneflip-strict",
       {ChainConfig(50, MutationKind::one_flip(), SelectionRule::Strict), mc_r,
        seed_of(kTagEqOneflipStrict), {}}},
      {"equivalence-oneflip-nonstrict",
       {ChainConfig(50, MutationKind::one_flip(), SelectionRule::NonStrict), mc_r,
        seed_of(kTagEqOneflipNonStrict), {}}},
      {"equivalence-bernoulli-strict",
       {ChainConfig(50, MutationKind::bernoulli_flip(1.0), SelectionRule::Strict),
        mc_r, seed_of(kTagEqBernoulliStrict), {}}},
      {"equivalence-bernoulli-nonstrict",
       {ChainConfig(50, MutationKind::bernoulli_flip(1.0),
                    SelectionRule::NonStrict),
        mc_r, seed_of(kTagEqBernoulliNonStrict), {}}},
  };

  int parallel_workers = options.workers;
  if (parallel_workers <= 1) parallel_workers = 0;  // hardware

  const bool to_files = !options.artifacts_dir.empty();
  if (to_files) {
    std::filesystem::create_directories(options.artifacts_dir);
  }

  const auto artifact_bytes = [&](const NamedPlan& np, int workers,
                                  const std::string& tag) {
    const SampleSet samples = run_experiment(np.plan, workers);
    std::string bytes = samples_to_csv(samples);
    bytes += plan_to_json(samples.plan).dump(2);
    bytes += '\n';
    if (to_files) {
      const auto path = std::filesystem::path(options.artifacts_dir) /
                        (np.name + "." + tag + ".csv");
      std::ofstream out(path, std::ios::binary);
      out << bytes;
      out.close();
      // Read back so what is compared is what landed on disk.
      std::ifstream in(path, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      return buf.str();
    }
    return bytes;
  };

  std::vector<TestReport> reports;
  for (const auto& np : plans) {
    const std::string serial = artifact_bytes(np, 1, "w1");
    const std::string parallel = artifact_bytes(np, parallel_workers, "wN");
    TestReport r;
    r.test = "determinism/" + np.name;
    r.statistic = serial == parallel ? 0.0 : 1.0;
    r.threshold = 0.5;
    r.n = np.plan.config.n;
    r.sample_count = np.plan.replicates;
    r.seed = np.plan.master_seed;
    r.pass = serial == parallel;
    reports.push_back(std::move(r));
  }

  // The lemma sampler is sequential by design; same seed, same table.
  {
    const auto seed = seed_of(kTagLemmaSuffix);
    const std::int64_t draws = options.replicates.value_or(100000);
    const FirstJumpTable a = collect_suffix_samples(5, 1.0, 1, draws, seed);
    const FirstJumpTable b = collect_suffix_samples(5, 1.0, 1, draws, seed);
    TestReport r;
    r.test = "determinism/lemma-suffix-table";
    r.statistic =
        a.suffix_counts == b.suffix_counts && a.level_counts == b.level_counts
            ? 0.0
            : 1.0;
    r.threshold = 0.5;
    r.n = 5;
    r.sample_count = draws;
    r.seed = seed;
    r.pass = r.statistic == 0.0;
    reports.push_back(std::move(r));
  }
  return reports;
}

bool is_suite_name(const std::string& name) {
  return name == "oracle" || name == "lln" || name == "clt" ||
         name == "equivalence" || name == "lemmas" || name == "all";
}

std::vector<TestReport> run_suite(const std::string& name,
                                  const VerifyOptions& options) {
  const auto append = [](std::vector<TestReport>& out,
                         std::vector<TestReport> in) {
    for (auto& r : in) out.push_back(std::move(r));
  };

  std::vector<TestReport> reports;
  if (name == "oracle" || name == "all") {
    append(reports, oracle_oneflip_checks(options));
    append(reports, oracle_bernoulli_checks(options));
  }
  if (name == "lln" || name == "all") {
    append(reports, lln_oneflip_checks(options));
    append(reports, lln_bernoulli_checks(options));
    append(reports, corollary_checks(options));
  }
  if (name == "clt" || name == "all") {
    append(reports, clt_oneflip_checks(options));
    append(reports, clt_bernoulli_checks(options));
  }
  if (name == "equivalence" || name == "all") {
    append(reports, exact_equivalence_checks(options));
    append(reports, statistical_equivalence_checks(options));
  }
  if (name == "lemmas" || name == "all") {
    append(reports, lemmas_checks(options));
  }
  if (name == "all") {
    append(reports, determinism_checks(options));
  }
  if (reports.empty() && !is_suite_name(name)) {
    throw std::invalid_argument("unknown suite: " + name);
  }
  return reports;
}

}  // namespace leadingones
