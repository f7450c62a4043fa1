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

#include "leadingones/io.hpp"

#include <cstdlib>
#include <string>

#include "doctest.h"

using namespace leadingones;

TEST_CASE("g17 formatting round-trips doubles exactly") {
  RandomStream rng(64);
  for (int i = 0; i < 2000; ++i) {
    const double v = (rng.next_double() - 0.5) *
                     std::pow(10.0, static_cast<double>(rng.uniform_below(40)) - 20.0);
    const std::string s = format_g17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(format_g17(0.5) == "0.5");
  CHECK(format_g17(1.0) == "1");
}

TEST_CASE("pmf CSV layout") {
  Pmf pmf;
  pmf.mass = {0.5, 0.25, 0.125};
  pmf.tail = 0.125;
  CHECK(pmf_to_csv(pmf) ==
        "t,mass\n"
        "0,0.5\n"
        "1,0.25\n"
        "2,0.125\n"
        "# tail=0.125\n");
}

TEST_CASE("sample CSV layout") {
  const ExperimentPlan plan{
      ChainConfig(4, MutationKind::one_flip(), SelectionRule::Strict), 2, 9, {}};
  SampleSet samples{plan, {}};
  samples.records.push_back(RunRecord{7, 1, false, 0, 111});
  samples.records.push_back(RunRecord{400, 0, true, 1, 222});
  CHECK(samples_to_csv(samples) ==
        "replicate,hitting_time,initial_level,capped\n"
        "0,7,1,0\n"
        "1,400,0,1\n");
}

TEST_CASE("plan sidecar carries full provenance") {
  const ExperimentPlan plan{
      ChainConfig(10, MutationKind::bernoulli_flip(1.0), SelectionRule::NonStrict,
                  5000),
      250, 987, BitString::from_text("1111100000")};
  const nlohmann::json j = plan_to_json(plan);
  CHECK(j["n"] == 10);
  CHECK(j["mutation"] == "bernoulli");
  CHECK(j["c"] == 1.0);
  CHECK(j["rule"] == "nonstrict");
  CHECK(j["replicates"] == 250);
  CHECK(j["master_seed"] == 987);
  CHECK(j["max_iters"] == 5000);
  CHECK(j["initial"] == "1111100000");

  const ExperimentPlan uniform_plan{
      ChainConfig(3, MutationKind::one_flip(), SelectionRule::Strict), 1, 0, {}};
  const nlohmann::json u = plan_to_json(uniform_plan);
  CHECK(u["c"].is_null());
  CHECK(u["initial"] == "uniform");
}

TEST_CASE("report and bundle JSON schema") {
  TestReport report;
  report.test = "demo";
  report.statistic = 0.25;
  report.threshold = 0.5;
  report.alpha = 0.01;
  report.pass = true;
  report.n = 50;
  report.sample_count = 10000;
  report.seed = 42;

  const nlohmann::json j = report_to_json(report);
  CHECK(j["test"] == "demo");
  CHECK(j["statistic"] == 0.25);
  CHECK(j["threshold"] == 0.5);
  CHECK(j["alpha"] == 0.01);
  CHECK(j["pass"] == true);
  CHECK(j["n"] == 50);
  CHECK(j["R"] == 10000);
  CHECK(j["seed"] == 42);

  TestReport failing = report;
  failing.pass = false;
  failing.alpha.reset();
  const nlohmann::json bundle = bundle_to_json("demo-suite", {report, failing}, 12);
  CHECK(bundle["suite"] == "demo-suite");
  CHECK(bundle["pass"] == false);
  CHECK(bundle["runtime_ms"] == 12);
  CHECK(bundle["reports"].size() == 2);
  CHECK(bundle["reports"][1]["alpha"].is_null());
}
