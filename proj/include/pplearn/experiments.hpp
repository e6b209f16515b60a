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

// Tabular episodes (sample comparisons, estimate P, apply rules, score) and
// the random-ranking bound table.

#ifndef PPLEARN_EXPERIMENTS_HPP_
#define PPLEARN_EXPERIMENTS_HPP_

#include <cstdint>
#include <vector>

#include "pplearn/core.hpp"
#include "pplearn/rules.hpp"

namespace pplearn {

// sum_ij policy_i opponent_j p(i, j).
double win_rate(const Policy& policy, const PreferenceMatrix& p, const Policy& opponent);

struct EpisodeReport {
  int episode = 0;
  Rule rule;
  std::uint64_t seed = 0;
  long n_samples = 0;  // 0: the rules saw the exact preference matrix
  double win_rate = 0.0;    // against the uniform policy, under the true P
  double ppa_level = 0.0;   // min_k pi_k / w_k against the true shares
  double pbm_gain = 0.0;    // mean best-response gain over non-empty groups
  double sum_u = 0.0;       // of the matrix the rules saw
  std::vector<double> policy;
  friend bool operator==(const EpisodeReport&, const EpisodeReport&) = default;
};

struct EpisodeOptions {
  // Sampled-mode candidates per group for the PBM gain; 0 skips it.
  long pbm_budget = 1000;
};

// One episode: n_samples comparisons from the profile's P drawn with `seed`
// (n_samples = 0 uses P itself), every rule applied to the estimate. The PBM
// gain is measured on the true profile with the seed derived from `seed`,
// so it is a lower bound on the groups' true manipulation gain.
std::vector<EpisodeReport> run_tabular_episode(const Profile& profile,
                                               const std::vector<Rule>& rules, long n_samples,
                                               std::uint64_t seed,
                                               const EpisodeOptions& options = {});

struct TabularOptions {
  int episodes = 50;
  long n_samples = 100000;
  std::uint64_t seed = 0;
  int threads = 1;
  EpisodeOptions episode;
};

// Episode e uses derive_seed(seed, e). Reports are ordered by episode, then
// by rule, whatever the thread count.
std::vector<EpisodeReport> run_tabular(const Profile& profile, const std::vector<Rule>& rules,
                                       const TabularOptions& options);

struct BoundRow {
  int m = 0;
  double delta = 0.0;
  int seeds = 0;
  double inv_sum_u = 0.0;  // mean over seeds
  double alpha = 0.0;      // mean over seeds
  double max_share = 0.0;  // mean over seeds of max_k w_k
  friend bool operator==(const BoundRow&, const BoundRow&) = default;
};

// Seed s of row M draws random_ranking_profile(M, n_evaluators,
// derive_seed(derive_seed(seed, M), s)).
std::vector<BoundRow> bound_table(const std::vector<int>& ms, double delta, int seeds,
                                  int n_evaluators = 1000, std::uint64_t seed = 0);

}  // namespace pplearn

#endif  // PPLEARN_EXPERIMENTS_HPP_
