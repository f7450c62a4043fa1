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
// Command-line front end: simulate, exact, verify, compare. Exit codes:
// 0 success, 1 runtime or test failure, 2 usage error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "leadingones/exact.hpp"
#include "leadingones/io.hpp"
#include "leadingones/simulate.hpp"
#include "leadingones/stats.hpp"
#include "leadingones/verify.hpp"

namespace {

using namespace leadingones;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  int n = 0;
  std::string mutation = "oneflip";
  double c = 0.0;
  bool c_set = false;
  std::string rule = "strict";
  std::string format = "csv";
  std::string out;
};

MutationKind make_mutation(const CommonFlags& f) {
  if (f.mutation == "oneflip") {
    if (f.c_set) {
      throw CLI::ValidationError("--c is only valid with --mutation bernoulli");
    }
    return MutationKind::one_flip();
  }
  if (!f.c_set) {
    throw CLI::ValidationError("--mutation bernoulli requires --c");
  }
  return MutationKind::bernoulli_flip(f.c);
}

SelectionRule make_rule(const std::string& rule) {
  return rule == "strict" ? SelectionRule::Strict : SelectionRule::NonStrict;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << bytes;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string sidecar_path(const std::string& csv_path) {
  const auto dot = csv_path.rfind('.');
  const std::string stem =
      dot == std::string::npos ? csv_path : csv_path.substr(0, dot);
  return stem + ".plan.json";
}

// Human-facing floats at 6 significant digits; files stay at 17.
std::string short6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

int cmd_simulate(const CommonFlags& flags, std::int64_t replicates,
                 std::uint64_t seed, const std::string& initial,
                 std::int64_t max_iters, int workers) {
  const ChainConfig config(flags.n, make_mutation(flags), make_rule(flags.rule),
                           max_iters);
  ExperimentPlan plan{config, replicates, seed, {}};
  if (initial != "uniform") plan.initial = BitString::from_text(initial);

  const SampleSet samples = run_experiment(plan, workers);

  const std::string out = flags.out.empty()
                              ? (flags.format == "json" ? "samples.json"
                                                        : "samples.csv")
                              : flags.out;
  if (flags.format == "json") {
    std::ostringstream os;
    write_samples_json(os, samples);
    write_file(out, os.str());
  } else {
    write_file(out, samples_to_csv(samples));
    write_file(sidecar_path(out), plan_to_json(plan).dump(2) + "\n");
  }

  const std::int64_t capped = samples.capped_count();
  std::cout << "wrote " << out << " (" << replicates << " replicates, "
            << capped << " capped)\n";
  if (capped == replicates) {
    std::cout << "all replicates capped at max_iters=" << config.max_iters
              << "; no finite hitting times\n";
    return kExitOk;
  }
  if (capped > 0) {
    std::cout << "warning: " << capped
              << " capped replicates excluded from the summary\n";
  }

  std::vector<double> times;
  times.reserve(samples.records.size());
  for (const auto& r : samples.records) {
    if (!r.capped) times.push_back(static_cast<double>(r.hitting_time));
  }
  if (times.size() >= 2) {
    const SummaryStats stats = summarize(times);
    std::cout << "hitting time: mean=" << short6(stats.mean)
              << " variance=" << short6(stats.variance)
              << " se=" << short6(stats.std_error) << "\n";
    std::vector<double> theta;
    theta.reserve(times.size());
    for (const double t : times) {
      theta.push_back(theta_statistic(t, config.n, config.mutation));
    }
    const SummaryStats ts = summarize(theta);
    std::cout << "theta: mean=" << short6(ts.mean)
              << " variance=" << short6(ts.variance) << "\n";
  }
  return kExitOk;
}

int cmd_exact(const CommonFlags& flags, std::int64_t t_max) {
  if (flags.n > kMaxExactN) {
    std::cerr << "exact laws are supported for n <= " << kMaxExactN << "\n";
    return kExitUsage;
  }
  const MutationKind mutation = make_mutation(flags);
  if (t_max <= 0) t_max = suggested_t_max(flags.n, mutation, 1e-13, 2);

  const Pmf pmf = mutation.kind == Mutation::OneFlip
                      ? oneflip_exact_pmf(flags.n, t_max)
                      : bernoulli_exact_pmf(flags.n, mutation.c, t_max);

  const std::string out = flags.out.empty()
                              ? (flags.format == "json" ? "pmf.json" : "pmf.csv")
                              : flags.out;
  if (flags.format == "json") {
    std::ostringstream os;
    write_pmf_json(os, pmf);
    write_file(out, os.str());
  } else {
    write_file(out, pmf_to_csv(pmf));
  }

  const double dn = flags.n;
  std::cout << "wrote " << out << " (t_max=" << t_max
            << ", tail=" << format_g17(pmf.tail) << ")\n";
  std::cout << "mean=" << format_g17(pmf.mean())
            << " variance=" << format_g17(pmf.variance()) << "\n";
  if (mutation.kind == Mutation::OneFlip) {
    std::cout << "reference: n^2/2=" << short6(dn * dn / 2.0)
              << " (3/4)n^3=" << short6(0.75 * dn * dn * dn) << "\n";
  } else {
    std::cout << "reference: m(c)n^2=" << short6(m_of_c(mutation.c) * dn * dn)
              << " sigma2(c)n^3="
              << short6(sigma2_of_c(mutation.c) * dn * dn * dn) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, const VerifyOptions& options,
               const std::string& out_path) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<TestReport> reports = run_suite(suite, options);
  const auto runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();

  bool pass = true;
  for (const auto& r : reports) {
    pass = pass && r.pass;
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.test
              << "  statistic=" << short6(r.statistic)
              << " threshold=" << short6(r.threshold) << "\n";
  }
  write_file(out_path,
             bundle_to_json(suite, reports, runtime_ms).dump(2) + "\n");
  std::cout << (pass ? "suite passed" : "suite FAILED") << " (" << reports.size()
            << " checks, " << runtime_ms << " ms), wrote " << out_path << "\n";
  return pass ? kExitOk : kExitFailure;
}

int cmd_compare(const std::vector<int>& ns, const std::vector<double>& c_grid,
                int n0, const std::string& out_path,
                const std::string& format) {
  for (const double c : c_grid) {
    if (!(c > 0.0)) {
      std::cerr << "compare: every c must be > 0\n";
      return kExitUsage;
    }
  }

  std::ostringstream csv;
  csv << "n,c,oneflip_mean,bernoulli_mean,oneflip_ratio,bernoulli_ratio,m_c\n";
  auto json_rows = nlohmann::json::array();
  bool ordering_holds = true;

  for (const int n : ns) {
    if (n < 1 || n > kMaxExactN) {
      std::cerr << "compare: n must be in [1, " << kMaxExactN << "]\n";
      return kExitUsage;
    }
    std::vector<double> grid;
    for (const double c : c_grid) {
      if (c <= static_cast<double>(n)) grid.push_back(c);
    }
    for (const auto& row : compare_table(n, grid)) {
      csv << row.n << ',' << format_g17(row.c) << ','
          << format_g17(row.oneflip_mean) << ','
          << format_g17(row.bernoulli_mean) << ','
          << format_g17(row.oneflip_ratio) << ','
          << format_g17(row.bernoulli_ratio) << ',' << format_g17(row.m_c)
          << '\n';
      json_rows.push_back({{"n", row.n},
                           {"c", row.c},
                           {"oneflip_mean", row.oneflip_mean},
                           {"bernoulli_mean", row.bernoulli_mean},
                           {"oneflip_ratio", row.oneflip_ratio},
                           {"bernoulli_ratio", row.bernoulli_ratio},
                           {"m_c", row.m_c}});
      if (n >= n0 && !(row.bernoulli_mean > row.oneflip_mean)) {
        ordering_holds = false;
        std::cerr << "ordering violated at n=" << n << " c=" << row.c << "\n";
      }
    }
  }

  const std::string out = out_path.empty() ? "compare.csv" : out_path;
  write_file(out, format == "json" ? json_rows.dump(2) + "\n" : csv.str());
  std::cout << "wrote " << out << "\n";
  if (!ordering_holds) {
    std::cerr << "compare: Bernoulli mean does not exceed one-flip mean at "
                 "some grid point with n >= "
              << n0 << "\n";
    return kExitFailure;
  }
  std::cout << "Bernoulli exact mean exceeds one-flip exact mean at every "
               "grid point with n >= "
            << n0 << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hitting-time laws of the (1+1)-EA and zero-temperature "
               "Metropolis chain on LeadingOnes"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::int64_t replicates = 10000;
  std::uint64_t seed = 0;
  std::string initial = "uniform";
  std::int64_t max_iters = 0;
  int workers = 0;
  std::int64_t t_max = 0;

  const auto add_common = [&](CLI::App* cmd, bool with_rule) {
    cmd->add_option("--n", flags.n, "string length")->required();
    cmd->add_option("--mutation", flags.mutation, "mutation operator")
        ->check(CLI::IsMember({"oneflip", "bernoulli"}))
        ->required();
    cmd->add_option("--c", flags.c, "Bernoulli flip strength, probability c/n")
        ->check(CLI::PositiveNumber)
        ->trigger_on_parse()
        ->each([&](const std::string&) { flags.c_set = true; });
    if (with_rule) {
      cmd->add_option("--rule", flags.rule, "selection rule")
          ->check(CLI::IsMember({"strict", "nonstrict"}));
    }
    cmd->add_option("--format", flags.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", flags.out, "output path");
  };

  auto* simulate = app.add_subcommand("simulate", "run Monte Carlo replicates");
  add_common(simulate, true);
  simulate->add_option("--replicates", replicates, "replicate count")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "master seed");
  simulate->add_option("--initial", initial,
                       "starting string, or 'uniform' for a random start");
  simulate->add_option("--max-iters", max_iters, "cap per replicate, 0 = auto");
  simulate->add_option("--workers", workers, "worker threads, 0 = hardware");

  auto* exact = app.add_subcommand("exact", "compute the exact hitting-time law");
  add_common(exact, false);
  exact->add_option("--t-max", t_max, "truncation point, 0 = auto");

  std::string suite;
  VerifyOptions verify_options;
  std::string verify_out = "verify.json";
  int verify_n = 0;
  std::int64_t verify_replicates = 0;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", suite, "suite to run")
      ->check(CLI::IsMember({"oracle", "lln", "clt", "equivalence", "lemmas",
                             "all"}))
      ->required();
  verify->add_option("--n", verify_n, "suite-specific size override");
  verify->add_option("--replicates", verify_replicates,
                     "suite-specific replicate override");
  verify->add_option("--seed", verify_options.seed, "base seed");
  verify->add_option("--workers", verify_options.workers,
                     "worker threads, 0 = hardware");
  verify->add_option("--artifacts-dir", verify_options.artifacts_dir,
                     "directory for determinism artifacts");
  verify->add_option("--out", verify_out, "report bundle path");

  std::vector<int> compare_ns{100};
  std::vector<double> c_grid{0.25, 0.5, 1.0, 2.0, 4.0};
  int n0 = 10;
  std::string compare_out;
  std::string compare_format = "csv";
  auto* compare = app.add_subcommand("compare", "exact mean comparison table");
  compare->add_option("--n", compare_ns, "string lengths");
  compare->add_option("--c-grid", c_grid, "Bernoulli c grid");
  compare->add_option("--n0", n0, "assert ordering for n >= n0");
  compare->add_option("--out", compare_out, "output path");
  compare->add_option("--format", compare_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      return cmd_simulate(flags, replicates, seed, initial, max_iters, workers);
    }
    if (exact->parsed()) {
      return cmd_exact(flags, t_max);
    }
    if (verify->parsed()) {
      if (verify_n > 0) verify_options.n = verify_n;
      if (verify_replicates > 0) verify_options.replicates = verify_replicates;
      return cmd_verify(suite, verify_options, verify_out);
    }
    if (compare->parsed()) {
      return cmd_compare(compare_ns, c_grid, n0, compare_out, compare_format);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
