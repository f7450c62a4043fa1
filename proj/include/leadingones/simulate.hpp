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

#ifndef LEADINGONES_SIMULATE_HPP_
#define LEADINGONES_SIMULATE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "leadingones/chain.hpp"

namespace leadingones {

struct ExperimentPlan {
  ChainConfig config;
  std::int64_t replicates = 1;
  std::uint64_t master_seed = 0;
  std::optional<BitString> initial;  // absent = uniform random start
};

struct RunRecord {
  std::int64_t hitting_time = 0;
  int initial_level = 0;
  bool capped = false;
  std::int64_t replicate_index = 0;
  std::uint64_t substream_seed = 0;
};

struct SampleSet {
  ExperimentPlan plan;
  std::vector<RunRecord> records;  // ordered by replicate_index, complete

  std::int64_t capped_count() const;
  // Finite hitting times as doubles; throws if any replicate was capped.
  std::vector<double> hitting_times() const;
};

// R independent replicates of run_to_optimum, replicate i on the substream
// derived from (master_seed, i). Bit-identical for a fixed plan regardless
// of worker count; workers <= 0 selects hardware parallelism.
SampleSet run_experiment(const ExperimentPlan& plan, int workers = 0);

enum class ConditioningMode {
  Rejection,           // uniform starts, keep those with the required level
  DirectConstruction,  // build (1^i, 0, uniform suffix) directly
};

// Observations of the first fitness jump out of level i under the Bernoulli
// flip with Strict selection, conditioned on the initial level: the suffix
// behind the newly locked position (a table over {0,1}^(n-i-1), leftmost
// suffix bit = highest index bit) and the level reached.
struct FirstJumpTable {
  int n = 0;
  int conditioned_level = 0;
  std::vector<std::uint64_t> suffix_counts;  // size 2^(n-i-1)
  std::vector<std::uint64_t> level_counts;   // levels i+1 .. n
  std::int64_t conditioned_draws = 0;
  std::int64_t attempts = 0;
  bool budget_exhausted = false;
};

// Collects `draws` conditioned observations; attempt k uses the substream of
// (master_seed, k), so results do not depend on scheduling. The attempt
// budget is draws * 2^(i+1) * budget_factor for the rejection mode (the
// conditioning event has probability 2^-(i+1)); when it runs out the table
// is returned with budget_exhausted set.
FirstJumpTable collect_suffix_samples(
    int n, double c, int conditioned_level, std::int64_t draws,
    std::uint64_t master_seed,
    ConditioningMode mode = ConditioningMode::Rejection,
    double budget_factor = 64.0);

}  // namespace leadingones

#endif  // LEADINGONES_SIMULATE_HPP_
