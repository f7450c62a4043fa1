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
// Drives the installed CLI binary end to end: exit-code contract, file
// artifacts, determinism across worker counts. Usage: cli_tests <binary>.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

int g_failures = 0;
std::string g_binary;
fs::path g_dir;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++g_failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

int run(const std::string& args) {
  const std::string cmd = g_binary + " " + args + " >cli_stdout.txt 2>cli_stderr.txt";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

// Mean of a pmf.csv artifact, tail ignored.
double csv_pmf_mean(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);  // header
  double mean = 0.0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    mean += std::strtod(line.c_str(), nullptr) *
            std::strtod(line.c_str() + comma + 1, nullptr);
  }
  return mean;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-cli>\n";
    return 2;
  }
  g_binary = fs::absolute(argv[1]).string();
  g_dir = fs::temp_directory_path() /
          ("leadingones-cli-test-" + std::to_string(::getpid()));
  fs::create_directories(g_dir);
  fs::current_path(g_dir);

  // Usage errors exit 2.
  expect(run("simulate --n 10 --mutation bernoulli --replicates 5") == 2,
         "bernoulli without --c exits 2");
  expect(run("simulate --n 10 --mutation oneflip --c 1 --replicates 5") == 2,
         "--c with oneflip exits 2");
  expect(run("exact --n 10000 --mutation oneflip") == 2,
         "n above the exact-engine limit exits 2");
  expect(run("exact --n 8 --mutation bernoulli --c 9") == 2,
         "c > n exits 2");
  expect(run("bogus") == 2, "unknown subcommand exits 2");
  expect(run("--help") == 0, "--help exits 0");

  // Deterministic single replicate from a fixed optimal start.
  expect(run("simulate --n 1 --mutation oneflip --rule strict --initial 1 "
             "--replicates 1 --seed 5") == 0,
         "trivial simulate exits 0");
  expect(slurp("samples.csv") ==
             "replicate,hitting_time,initial_level,capped\n0,0,1,0\n",
         "trivial simulate writes the expected CSV");
  expect(contains(slurp("samples.plan.json"), "\"initial\": \"1\""),
         "sidecar records the fixed initial string");

  // Exact law artifacts and printed means.
  expect(run("exact --n 10 --mutation oneflip --out oneflip.csv") == 0,
         "exact oneflip exits 0");
  expect(contains(slurp("cli_stdout.txt"), "mean=50.0000000000001"),
         "exact oneflip prints the n^2/2 mean");
  expect(std::abs(csv_pmf_mean("oneflip.csv") - 50.0) < 1e-9,
         "oneflip.csv integrates to mean 50");

  expect(run("exact --n 2 --mutation bernoulli --c 1 --out bern.csv") == 0,
         "exact bernoulli exits 0");
  expect(contains(slurp("cli_stdout.txt"), "mean=3"),
         "exact bernoulli prints mean 3");
  expect(std::abs(csv_pmf_mean("bern.csv") - 3.0) < 1e-9,
         "bern.csv integrates to mean 3");

  // Simulation summary and worker-count determinism.
  expect(run("simulate --n 40 --mutation oneflip --rule strict "
             "--replicates 3000 --seed 42 --workers 1 --out w1.csv") == 0,
         "simulate workers=1 exits 0");
  expect(run("simulate --n 40 --mutation oneflip --rule strict "
             "--replicates 3000 --seed 42 --workers 4 --out w4.csv") == 0,
         "simulate workers=4 exits 0");
  expect(slurp("w1.csv") == slurp("w4.csv"),
         "sample CSV is byte-identical across worker counts");
  expect(slurp("w1.plan.json") == slurp("w4.plan.json"),
         "plan sidecar is byte-identical across worker counts");

  // JSON output format.
  expect(run("simulate --n 6 --mutation oneflip --replicates 3 --seed 1 "
             "--format json") == 0,
         "json simulate exits 0");
  expect(contains(slurp("samples.json"), "\"records\""),
         "json simulate embeds records");
  expect(run("exact --n 4 --mutation oneflip --format json") == 0,
         "json exact exits 0");
  expect(contains(slurp("pmf.json"), "\"tail\""),
         "json exact carries the tail mass");

  // Verification suites: scaled-down but real.
  expect(run("verify --suite equivalence --n 6 --replicates 2000 "
             "--out eq.json") == 0,
         "equivalence suite passes at n = 6");
  expect(contains(slurp("eq.json"), "\"suite\": \"equivalence\""),
         "bundle names the suite");
  expect(run("verify --suite lemmas --replicates 20000 --out lem.json") == 0,
         "lemmas suite passes");
  expect(run("verify --suite bogus") == 2, "unknown suite exits 2");

  // Comparison table: ordering asserted for n >= n0.
  expect(run("compare --n 100 --out cmp.csv") == 0, "compare exits 0");
  {
    const std::string table = slurp("cmp.csv");
    expect(contains(table,
                    "n,c,oneflip_mean,bernoulli_mean,oneflip_ratio,"
                    "bernoulli_ratio,m_c"),
           "compare header");
    expect(contains(table, "\n100,1,5000,"), "compare row for c=1");
  }
  expect(run("compare --n 2 --n0 10 --c-grid 0.5 1") == 0,
         "compare below n0 does not assert ordering");

  if (g_failures == 0) {
    std::cout << "cli tests passed\n";
    return 0;
  }
  std::cerr << g_failures << " cli test(s) failed\n";
  return 1;
}
