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

#include <algorithm>
#include <cmath>

#include "../support.hpp"
#include "doctest.h"
#include "pplearn/manipulation.hpp"
#include "pplearn/rules.hpp"

using namespace pplearn;

namespace {

Ranking r(std::vector<int> order) { return Ranking(std::move(order)); }

Profile group_subprofile(const Profile& profile, int k) {
  std::vector<Profile::Entry> entries;
  for (const auto& [ranking, w] : profile.weights()) {
    if (ranking.top() == k) entries.emplace_back(ranking, w);
  }
  return Profile::renormalized(profile.m(), entries);
}

}  // namespace

TEST_CASE("manipulated profile of the three-group example") {
  const Profile sigma = testing::three_group_profile();
  const Profile manipulated = manipulate_profile(sigma, 1, Profile::single(r({1, 2, 0})));
  const auto b = borda_scores(manipulated);
  CHECK(b[0] == doctest::Approx(0.85));
  CHECK(b[1] == doctest::Approx(1.2));
  CHECK(b[2] == doctest::Approx(0.95));
  CHECK(group_shares(manipulated) == group_shares(sigma));
  CHECK_THROWS_AS(manipulate_profile(Profile::single(r({0, 1, 2})), 1, Profile::uniform(3)),
                  PreconditionError);
  CHECK_THROWS_AS(manipulate_profile(sigma, 1, Profile::uniform(4)), ValidationError);
}

TEST_CASE("truthful manipulation is the identity") {
  Rng rng(501);
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + static_cast<int>(rng.below(4));
    const Profile sigma = testing::random_profile(rng, m);
    const auto w = group_shares(sigma);
    for (int k = 0; k < m; ++k) {
      if (w[k] == 0.0) continue;
      const Profile same = manipulate_profile(sigma, k, group_subprofile(sigma, k));
      CHECK(max_abs_diff(induce_preference(same).data(), induce_preference(sigma).data()) < 1e-12);
      for (const auto& [ranking, weight] : sigma.weights()) {
        CHECK(same.weight(ranking) == doctest::Approx(weight).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("ml manipulation matrix from the epsilon profile") {
  const double eps = 1.0 / 12;
  const Profile manipulated =
      manipulate_profile(testing::epsilon_profile(eps), 2, Profile::single(r({2, 1, 0})));
  const PreferenceMatrix p = induce_preference(manipulated);
  CHECK(p(0, 1) == doctest::Approx(1.0 / 3 + eps));
  CHECK(p(0, 2) == doctest::Approx(0.5 + eps / 2));
  CHECK(p(1, 2) == doctest::Approx(0.5 - eps / 2));
  const Policy pi = maximal_lotteries(p).policy;
  CHECK(pi[2] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("borda is fully manipulable by the second group") {
  const Profile sigma = testing::three_group_profile();
  const auto res = best_response(Rule::borda(), sigma, 1);
  CHECK(res.share == doctest::Approx(0.45));
  CHECK(res.honest_policy_value == 0.0);
  CHECK(res.best_manipulated_value == 1.0);
  CHECK_FALSE(res.budget_exhausted);
  const auto gains = pbm_gain(Rule::borda(), sigma);
  CHECK(gains[1] == doctest::Approx(1.0));
}

TEST_CASE("ml manipulation by the third group approaches certainty") {
  double previous = 0.0;
  for (double eps : {1.0 / 12, 1.0 / 24, 1.0 / 48, 1.0 / 96}) {
    const Profile sigma = testing::epsilon_profile(eps);
    const auto res = best_response(Rule::maximal_lotteries(), sigma, 2);
    CHECK(res.share == doctest::Approx(1.0 / 3));
    CHECK(res.best_manipulated_value >= previous - 1e-9);
    previous = res.best_manipulated_value;
    const Profile single = manipulate_profile(sigma, 2, Profile::single(r({2, 1, 0})));
    const double vertex = maximal_lotteries(induce_preference(single)).policy[2];
    // Cyclic 3x3 game: each pi_i is proportional to the margin of the duel
    // it does not play, so pi(y3) = (1/6 - eps) / (1/6).
    CHECK(vertex == doctest::Approx(1.0 - 6.0 * eps).epsilon(1e-6));
    CHECK(res.best_manipulated_value >= vertex - 1e-9);
  }
  CHECK(previous > 0.9);
}

TEST_CASE("reported value matches rebuilding the manipulated profile") {
  Rng rng(502);
  const std::vector<Rule> rules{Rule::borda(), Rule::maximal_lotteries(), Rule::fstar(),
                                Rule::fbeta(5.0), Rule::finfinity(), Rule::random_dictatorship()};
  for (int t = 0; t < 30; ++t) {
    const int m = 2 + static_cast<int>(rng.below(2));
    const Profile sigma = testing::random_profile(rng, m);
    const Rule& rule = rules[t % rules.size()];
    for (const auto& res : best_responses(rule, sigma)) {
      const Profile rebuilt = manipulate_profile(sigma, res.group, res.best_subprofile);
      CHECK(rule(rebuilt)[res.group] == doctest::Approx(res.best_manipulated_value).epsilon(1e-9));
      CHECK(res.honest_policy_value == doctest::Approx(rule(sigma)[res.group]).epsilon(1e-12));
      CHECK(res.best_manipulated_value >= res.honest_policy_value - 1e-9);
      CHECK(res.bound_theorem <= res.bound_affine + 1e-12);
    }
  }
}

TEST_CASE("f_star best responses respect the manipulation bounds") {
  Rng rng(503);
  for (int t = 0; t < 60; ++t) {
    const int m = 2 + static_cast<int>(rng.below(3));
    const Profile sigma = testing::random_profile(rng, m);
    for (const auto& res : best_responses(Rule::fstar(), sigma)) {
      CHECK(res.best_manipulated_value <= res.bound_theorem + 1e-9);
      CHECK(res.bound_theorem <= res.bound_affine + 1e-12);
      for (const auto& [ranking, w] : res.best_subprofile.weights()) {
        CHECK(ranking.top() == res.group);
      }
      if (res.u <= 0.5 && res.share <= 0.5) CHECK(res.best_manipulated_value <= 0.5 + 1e-9);
    }
  }
}

TEST_CASE("f_star on the binary profile offers no gain") {
  const auto gains = pbm_gain(Rule::fstar(), testing::binary_profile(0.1));
  CHECK(gains[0] == doctest::Approx(0.0).scale(1.0));
  CHECK(gains[1] == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("search budget and modes") {
  const Profile sigma = testing::three_group_profile();
  SearchOptions opt;
  opt.budget = 5;
  const auto capped = best_response(Rule::borda(), sigma, 1, opt);
  CHECK(capped.candidates == 5);
  CHECK(capped.budget_exhausted);

  SearchOptions sampled;
  sampled.mode = SearchMode::kSampled;
  sampled.budget = 200;
  sampled.seed = 9;
  const auto a = best_response(Rule::maximal_lotteries(), sigma, 2, sampled);
  const auto b = best_response(Rule::maximal_lotteries(), sigma, 2, sampled);
  CHECK(a.best_manipulated_value == b.best_manipulated_value);
  CHECK(a.best_subprofile == b.best_subprofile);
  CHECK(a.candidates == 200);
  CHECK(a.budget_exhausted);

  CHECK_THROWS_AS(best_response(Rule::fstar(), Profile::uniform(6), 0), SizeError);
  sampled.budget = 20;
  CHECK_NOTHROW(best_response(Rule::fstar(), Profile::uniform(6), 0, sampled));
  CHECK_THROWS_AS(best_response(Rule::fstar(), Profile::single(r({0, 1, 2})), 1), PreconditionError);
}
