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
// File formats. All floating point is written with 17 significant digits so
// artifacts round-trip exactly and reruns are byte-comparable.

#ifndef LEADINGONES_IO_HPP_
#define LEADINGONES_IO_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "leadingones/exact.hpp"
#include "leadingones/simulate.hpp"
#include "leadingones/stats.hpp"

namespace leadingones {

std::string format_g17(double v);

// Header `t,mass`, one row per t, then a trailing `# tail=<value>` line.
void write_pmf_csv(std::ostream& os, const Pmf& pmf);
std::string pmf_to_csv(const Pmf& pmf);
void write_pmf_json(std::ostream& os, const Pmf& pmf);

// Header `replicate,hitting_time,initial_level,capped`; a capped row keeps
// the step count it ran for and sets capped=1.
void write_samples_csv(std::ostream& os, const SampleSet& samples);
std::string samples_to_csv(const SampleSet& samples);
void write_samples_json(std::ostream& os, const SampleSet& samples);

// Provenance sidecar with the full plan.
nlohmann::json plan_to_json(const ExperimentPlan& plan);

nlohmann::json report_to_json(const TestReport& report);
nlohmann::json bundle_to_json(const std::string& suite,
                              const std::vector<TestReport>& reports,
                              std::int64_t runtime_ms);

}  // namespace leadingones

#endif  // LEADINGONES_IO_HPP_
