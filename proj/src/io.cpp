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

#include <cstdio>
#include <sstream>

namespace leadingones {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_pmf_csv(std::ostream& os, const Pmf& pmf) {
  os << "t,mass\n";
  for (std::size_t t = 0; t < pmf.mass.size(); ++t) {
    os << t << ',' << format_g17(pmf.mass[t]) << '\n';
  }
  os << "# tail=" << format_g17(pmf.tail) << '\n';
}

std::string pmf_to_csv(const Pmf& pmf) {
  std::ostringstream os;
  write_pmf_csv(os, pmf);
  return os.str();
}

void write_pmf_json(std::ostream& os, const Pmf& pmf) {
  nlohmann::json j;
  j["mass"] = pmf.mass;
  j["tail"] = pmf.tail;
  os << j.dump(2) << '\n';
}

void write_samples_csv(std::ostream& os, const SampleSet& samples) {
  os << "replicate,hitting_time,initial_level,capped\n";
  for (const auto& r : samples.records) {
    os << r.replicate_index << ',' << r.hitting_time << ','
       << r.initial_level << ',' << (r.capped ? 1 : 0) << '\n';
  }
}

std::string samples_to_csv(const SampleSet& samples) {
  std::ostringstream os;
  write_samples_csv(os, samples);
  return os.str();
}

nlohmann::json plan_to_json(const ExperimentPlan& plan) {
  nlohmann::json j;
  j["n"] = plan.config.n;
  j["mutation"] = to_string(plan.config.mutation);
  if (plan.config.mutation.kind == Mutation::BernoulliFlip) {
    j["c"] = plan.config.mutation.c;
  } else {
    j["c"] = nullptr;
  }
  j["rule"] = to_string(plan.config.selection);
  j["replicates"] = plan.replicates;
  j["master_seed"] = plan.master_seed;
  j["max_iters"] = plan.config.max_iters;
  j["initial"] = plan.initial ? plan.initial->to_text() : "uniform";
  return j;
}

void write_samples_json(std::ostream& os, const SampleSet& samples) {
  nlohmann::json j;
  j["plan"] = plan_to_json(samples.plan);
  auto rows = nlohmann::json::array();
  for (const auto& r : samples.records) {
    rows.push_back({{"replicate", r.replicate_index},
                    {"hitting_time", r.hitting_time},
                    {"initial_level", r.initial_level},
                    {"capped", r.capped}});
  }
  j["records"] = std::move(rows);
  os << j.dump(2) << '\n';
}

nlohmann::json report_to_json(const TestReport& report) {
  nlohmann::json j;
  j["test"] = report.test;
  j["statistic"] = report.statistic;
  j["threshold"] = report.threshold;
  j["alpha"] = report.alpha ? nlohmann::json(*report.alpha) : nlohmann::json();
  j["pass"] = report.pass;
  j["n"] = report.n;
  j["R"] = report.sample_count;
  j["seed"] = report.seed;
  return j;
}

nlohmann::json bundle_to_json(const std::string& suite,
                              const std::vector<TestReport>& reports,
                              std::int64_t runtime_ms) {
  bool pass = true;
  auto items = nlohmann::json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass;
    items.push_back(report_to_json(r));
  }
  nlohmann::json j;
  j["suite"] = suite;
  j["pass"] = pass;
  j["runtime_ms"] = runtime_ms;
  j["reports"] = std::move(items);
  return j;
}

}  // namespace leadingones
