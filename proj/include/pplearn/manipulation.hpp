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

// Single-group manipulation: group G_k (rankings with y_k first) replaces its
// normalized sub-profile sigma_k by any sub-profile sigma' and tries to raise
// pi(y_k).
//
// Candidate sub-profiles are mixtures of at most three rankings with weights
// on the 1/10 simplex grid. Exhaustive mode walks the truthful sub-profile,
// every single ranking, then every pair and triple on the grid (in that order)
// until the budget runs out. Sampled mode draws random candidates; half of
// the rankings drawn keep y_k on top.
//
// Candidates are scored without rebuilding profiles: the manipulated matrix
// is P - w_k P_k + w_k P(sigma') and the manipulated shares are
// w - w_k e_k + w_k top(sigma').

#ifndef PPLEARN_MANIPULATION_HPP_
#define PPLEARN_MANIPULATION_HPP_

#include <cstdint>
#include <vector>

#include "pplearn/core.hpp"
#include "pplearn/rules.hpp"

namespace pplearn {

// sigma + w_k (sub - sigma_k). Throws PreconditionError if group k is empty.
Profile manipulate_profile(const Profile& profile, int k, const Profile& sub);

enum class SearchMode { kExhaustive, kSampled };

inline constexpr int kMaxExhaustiveAlternatives = 5;

struct SearchOptions {
  SearchMode mode = SearchMode::kExhaustive;
  // Candidates scored besides the truthful one; 0 means no limit (exhaustive
  // mode only).
  long budget = 0;
  std::uint64_t seed = 0;
  int grid = 10;
  int max_support = 3;
};

struct ManipulationResult {
  int group = 0;
  double share = 0.0;             // w_k
  double u = 0.0;                 // u_k of the honest profile
  double honest_policy_value = 0.0;
  double best_manipulated_value = 0.0;
  double bound_theorem = 0.0;     // u_k / (u_k + 1 - w_k)
  double bound_affine = 0.0;      // (w_k + 1) / 2
  Profile best_subprofile;        // the sigma' achieving the best value
  long candidates = 0;
  // The search stopped on the budget, so the best value is only a lower
  // bound on the group's true best response.
  bool budget_exhausted = false;
};

// Best sub-profile found for group k. Ties within 1e-12 keep the candidate
// with more mass on rankings that put y_k first, then the earlier one.
ManipulationResult best_response(const Rule& rule, const Profile& profile, int k,
                                 const SearchOptions& options = {});

// best_response for every non-empty group (empty groups report 0 gain).
std::vector<ManipulationResult> best_responses(const Rule& rule, const Profile& profile,
                                               const SearchOptions& options = {});

// Per-group gain best_manipulated_value - honest_policy_value (0 for empty
// groups).
std::vector<double> pbm_gain(const Rule& rule, const Profile& profile,
                             const SearchOptions& options = {});

}  // namespace pplearn

#endif  // PPLEARN_MANIPULATION_HPP_
