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

// Random instance generators shared by the unit, property and acceptance
// tests.

#ifndef PPLEARN_TESTS_SUPPORT_HPP_
#define PPLEARN_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <optional>
#include <vector>

#include "pplearn/axioms.hpp"
#include "pplearn/core.hpp"
#include "pplearn/random.hpp"

namespace pplearn::testing {

// Random profile: `support` uniformly random rankings (duplicates merge)
// with Uniform(0, 1) weights, normalized.
inline Profile random_profile(Rng& rng, int m, int support) {
  std::vector<Profile::Entry> entries;
  for (int s = 0; s < support; ++s) {
    entries.emplace_back(Ranking(rng.permutation(m)), 0.05 + rng.uniform());
  }
  return Profile::renormalized(m, entries);
}

inline Profile random_profile(Rng& rng, int m) {
  return random_profile(rng, m, 1 + static_cast<int>(rng.below(2 * m)));
}

// Skew-symmetric matrix with independent Uniform(0, 1) upper entries.
inline PreferenceMatrix random_matrix(Rng& rng, int m) {
  PreferenceMatrix p(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) p.set_pair(i, j, rng.uniform());
  }
  return p;
}

// Induced matrix of a random profile, resampled until it has a Condorcet
// winner.
inline PreferenceMatrix random_condorcet_matrix(Rng& rng, int m) {
  while (true) {
    PreferenceMatrix p = induce_preference(random_profile(rng, m));
    if (condorcet_winner(p)) return p;
  }
}

// (y1 > y2 > y3) x 0.30, (y2 > y1 > y3) x 0.45, (y3 > y1 > y2) x 0.25
inline Profile three_group_profile() {
  return Profile(3, {{Ranking({0, 1, 2}), 0.30}, {Ranking({1, 0, 2}), 0.45}, {Ranking({2, 0, 1}), 0.25}});
}

// Shares (1/3 + eps, 1/3 - eps, 1/3); each group is indifferent between the
// two orders of its other alternatives.
inline Profile epsilon_profile(double eps) {
  const double w[3] = {1.0 / 3 + eps, 1.0 / 3 - eps, 1.0 / 3};
  std::vector<Profile::Entry> entries;
  for (const auto& ranking : enumerate_rankings(3)) {
    entries.emplace_back(ranking, w[ranking.top()] / 2);
  }
  return Profile::renormalized(3, entries);
}

// (y1 > y2) x (1/2 + eps), (y2 > y1) x (1/2 - eps).
inline Profile binary_profile(double eps) {
  return Profile(2, {{Ranking({0, 1}), 0.5 + eps}, {Ranking({1, 0}), 0.5 - eps}});
}

}  // namespace pplearn::testing

#endif  // PPLEARN_TESTS_SUPPORT_HPP_
