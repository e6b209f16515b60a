// Copyright 2026 The pplearn Authors.
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

#include "pplearn/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "pplearn/axioms.hpp"
#include "pplearn/error.hpp"
#include "pplearn/feasibility.hpp"
#include "pplearn/kernels.hpp"
#include "pplearn/manipulation.hpp"
#include "pplearn/random.hpp"
#include "pplearn/sampling.hpp"

namespace pplearn {

double win_rate(const Policy& policy, const PreferenceMatrix& p, const Policy& opponent) {
  if (policy.m() != p.m() || opponent.m() != p.m()) {
    throw ValidationError("win_rate: dimension mismatch");
  }
  return kernels::active().bilinear(policy.probs().data(), p.data().data(),
                                    opponent.probs().data(), p.m());
}

std::vector<EpisodeReport> run_tabular_episode(const Profile& profile,
                                               const std::vector<Rule>& rules, long n_samples,
                                               std::uint64_t seed,
                                               const EpisodeOptions& options) {
  const int m = profile.m();
  const PreferenceMatrix truth = induce_preference(profile);
  const std::vector<double> shares = group_shares(profile);
  const PreferenceMatrix seen =
      n_samples > 0 ? estimate_preference(sample_comparisons(truth, n_samples, seed)) : truth;
  double sum_u = 0.0;
  for (double u : u_vector(seen)) sum_u += u;
  const Policy uniform = Policy::uniform(m);

  std::vector<EpisodeReport> out;
  for (const Rule& rule : rules) {
    EpisodeReport r;
    r.rule = rule;
    r.seed = seed;
    r.n_samples = n_samples;
    const Policy pi = rule.evaluate(seen, shares);
    r.policy.assign(pi.probs().begin(), pi.probs().end());
    r.win_rate = win_rate(pi, truth, uniform);
    r.ppa_level = measure_ppa(pi, shares);
    r.sum_u = sum_u;
    if (options.pbm_budget > 0) {
      SearchOptions search;
      search.mode = SearchMode::kSampled;
      search.budget = options.pbm_budget;
      search.seed = derive_seed(seed, 0x70626dULL);
      const auto results = best_responses(rule, profile, search);
      double total = 0.0;
      for (const auto& res : results) total += res.best_manipulated_value - res.honest_policy_value;
      r.pbm_gain = results.empty() ? 0.0 : total / static_cast<double>(results.size());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<EpisodeReport> run_tabular(const Profile& profile, const std::vector<Rule>& rules,
                                       const TabularOptions& options) {
  if (options.episodes < 0) throw PreconditionError("episode count must be nonnegative");
  std::vector<std::vector<EpisodeReport>> per_episode(options.episodes);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (int e = next++; e < options.episodes; e = next++) {
      try {
        auto reports = run_tabular_episode(profile, rules, options.n_samples,
                                           derive_seed(options.seed, e), options.episode);
        for (auto& r : reports) r.episode = e;
        per_episode[e] = std::move(reports);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min(options.threads, options.episodes));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<EpisodeReport> out;
  for (auto& reports : per_episode) {
    for (auto& r : reports) out.push_back(std::move(r));
  }
  return out;
}

std::vector<BoundRow> bound_table(const std::vector<int>& ms, double delta, int seeds,
                                  int n_evaluators, std::uint64_t seed) {
  if (seeds < 1) throw PreconditionError("bound table needs at least one seed");
  std::vector<BoundRow> rows;
  for (int m : ms) {
    BoundRow row;
    row.m = m;
    row.delta = delta;
    row.seeds = seeds;
    const std::uint64_t row_seed = derive_seed(seed, static_cast<std::uint64_t>(m));
    for (int s = 0; s < seeds; ++s) {
      const Profile profile = random_ranking_profile(m, n_evaluators, derive_seed(row_seed, s));
      const auto shares = group_shares(profile);
      const PpaBounds b = ppa_lower_bounds(induce_preference(profile), shares, delta);
      row.inv_sum_u += b.inv_sum_u;
      row.alpha += b.alpha;
      row.max_share += *std::max_element(shares.begin(), shares.end());
    }
    row.inv_sum_u /= seeds;
    row.alpha /= seeds;
    row.max_share /= seeds;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pplearn
