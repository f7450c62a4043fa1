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

#include "leadingones/simulate.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace leadingones {

std::int64_t SampleSet::capped_count() const {
  std::int64_t count = 0;
  for (const auto& r : records) count += r.capped;
  return count;
}

std::vector<double> SampleSet::hitting_times() const {
  std::vector<double> times;
  times.reserve(records.size());
  for (const auto& r : records) {
    if (r.capped) {
      throw std::runtime_error(
          "SampleSet contains capped replicates; raise max_iters");
    }
    times.push_back(static_cast<double>(r.hitting_time));
  }
  return times;
}

SampleSet run_experiment(const ExperimentPlan& plan, int workers) {
  if (plan.replicates < 1) {
    throw std::invalid_argument("run_experiment: replicates must be >= 1");
  }
  if (plan.initial && plan.initial->size() != plan.config.n) {
    throw std::invalid_argument("run_experiment: initial length != n");
  }
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }

  SampleSet out{plan, std::vector<RunRecord>(
                          static_cast<std::size_t>(plan.replicates))};

  // Each slot is written exactly once from its own substream, so the result
  // is independent of how replicates land on workers.
  std::atomic<std::int64_t> cursor{0};
  const auto worker_loop = [&] {
    for (;;) {
      const std::int64_t i = cursor.fetch_add(1, std::memory_order_relaxed);
      if (i >= plan.replicates) return;
      const std::uint64_t seed =
          substream_seed(plan.master_seed, static_cast<std::uint64_t>(i));
      const RunOutcome run = run_to_optimum(plan.config, seed, plan.initial);
      out.records[static_cast<std::size_t>(i)] =
          RunRecord{run.hitting_time, run.initial_level, run.capped, i, seed};
    }
  };

  if (workers == 1 || plan.replicates == 1) {
    worker_loop();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker_loop);
    for (auto& t : pool) t.join();
  }
  return out;
}

FirstJumpTable collect_suffix_samples(int n, double c, int conditioned_level,
                                      std::int64_t draws,
                                      std::uint64_t master_seed,
                                      ConditioningMode mode,
                                      double budget_factor) {
  if (conditioned_level < 0 || conditioned_level >= n) {
    throw std::invalid_argument("collect_suffix_samples: level in [0, n)");
  }
  const int suffix_len = n - conditioned_level - 1;
  if (suffix_len > 20) {
    throw std::invalid_argument("collect_suffix_samples: table too large");
  }
  if (draws < 1) {
    throw std::invalid_argument("collect_suffix_samples: draws >= 1");
  }
  const ChainConfig config(n, MutationKind::bernoulli_flip(c),
                           SelectionRule::Strict);

  FirstJumpTable table;
  table.n = n;
  table.conditioned_level = conditioned_level;
  table.suffix_counts.assign(1ull << suffix_len, 0);
  table.level_counts.assign(static_cast<std::size_t>(n - conditioned_level), 0);

  if (!(budget_factor > 0.0)) {
    throw std::invalid_argument("collect_suffix_samples: budget_factor > 0");
  }
  const double rejection_scale =
      mode == ConditioningMode::Rejection
          ? static_cast<double>(std::int64_t{1} << (conditioned_level + 1))
          : 1.0;
  const auto budget = static_cast<std::int64_t>(
      std::ceil(static_cast<double>(draws) * rejection_scale * budget_factor));

  std::int64_t attempt = 0;
  while (table.conditioned_draws < draws && attempt < budget) {
    RandomStream rng =
        RandomStream::substream(master_seed, static_cast<std::uint64_t>(attempt));
    ++attempt;

    ChainState state = [&] {
      if (mode == ConditioningMode::Rejection) {
        return ChainState::start(BitString::uniform(n, rng));
      }
      BitString x(n);
      for (int i = 0; i < conditioned_level; ++i) x.set(i, true);
      for (int i = conditioned_level + 1; i < n; ++i) {
        x.set(i, rng.bernoulli(0.5));
      }
      return ChainState::start(std::move(x));
    }();
    if (state.level != conditioned_level) continue;

    while (state.level == conditioned_level && state.t < config.max_iters) {
      step(state, config, rng);
    }
    if (state.level == conditioned_level) continue;  // capped sojourn

    // Suffix behind the newly locked position, leftmost bit first.
    std::uint64_t index = 0;
    for (int k = 0; k < suffix_len; ++k) {
      index = (index << 1) | state.x.get(conditioned_level + 1 + k);
    }
    table.suffix_counts[index] += 1;
    table.level_counts[static_cast<std::size_t>(state.level -
                                                conditioned_level - 1)] += 1;
    table.conditioned_draws += 1;
  }
  table.attempts = attempt;
  table.budget_exhausted = table.conditioned_draws < draws;
  return table;
}

}  // namespace leadingones
