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
#include "pplearn/axioms.hpp"
#include "pplearn/experiments.hpp"
#include "pplearn/feasibility.hpp"
#include "pplearn/sampling.hpp"

using namespace pplearn;

namespace {

double inf_norm(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

}  // namespace

TEST_CASE("win rate examples") {
  PreferenceMatrix p(2);
  p.set_pair(0, 1, 0.6);
  CHECK(win_rate(Policy::one_hot(2, 0), p, Policy::uniform(2)) == doctest::Approx(0.55));
  CHECK_THROWS(win_rate(Policy::uniform(3), p, Policy::uniform(2)));

  Rng rng(701);
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + static_cast<int>(rng.below(8));
    const PreferenceMatrix q = testing::random_matrix(rng, m);
    std::vector<double> w(m);
    for (double& x : w) x = rng.uniform();
    const Policy pi = Policy::normalized(w);
    CHECK(win_rate(pi, q, pi) == doctest::Approx(0.5));
  }
  for (int t = 0; t < 50; ++t) {
    const int m = 2 + static_cast<int>(rng.below(5));
    const PreferenceMatrix q = testing::random_condorcet_matrix(rng, m);
    const int c = *condorcet_winner(q);
    double row = 0.0;
    for (int j = 0; j < m; ++j) row += q(c, j) / m;
    const double wr = win_rate(Policy::one_hot(m, c), q, Policy::uniform(m));
    CHECK(wr == doctest::Approx(row));
    CHECK(wr > 0.5);
  }
}

TEST_CASE("episode reports on exact preferences") {
  const Profile sigma = random_ranking_profile(8, 300, 21);
  const std::vector<Rule> rules{Rule::fstar(), Rule::fbeta(0.0), Rule::fbeta(10.0),
                                Rule::random_dictatorship(), Rule::borda(),
                                Rule::maximal_lotteries()};
  EpisodeOptions opt;
  opt.pbm_budget = 100;
  const auto reports = run_tabular_episode(sigma, rules, 0, 5, opt);
  REQUIRE(reports.size() == rules.size());
  const auto bounds = ppa_lower_bounds(sigma, 0.7);
  CHECK(reports[0].ppa_level >= bounds.inv_sum_u - 1e-9);
  CHECK(reports[0].policy == reports[1].policy);
  CHECK(reports[0].win_rate == reports[1].win_rate);
  CHECK(reports[0].ppa_level == reports[1].ppa_level);
  CHECK(reports[3].ppa_level == doctest::Approx(1.0));
  for (const auto& r : reports) {
    CHECK(r.n_samples == 0);
    CHECK(r.win_rate >= 0.0);
    CHECK(r.win_rate <= 1.0);
    CHECK(r.ppa_level >= 0.0);
    CHECK(r.pbm_gain >= -1e-9);
    CHECK(r.pbm_gain <= 1.0);
    CHECK(r.sum_u == doctest::Approx(1.0 / bounds.inv_sum_u));
  }
  CHECK(reports == run_tabular_episode(sigma, rules, 0, 5, opt));
}

TEST_CASE("f_star from 10^5 samples tracks the exact policy") {
  const Profile sigma = random_ranking_profile(20, 1000, 3);
  EpisodeOptions opt;
  opt.pbm_budget = 0;
  const auto exact = run_tabular_episode(sigma, {Rule::fstar()}, 0, 0, opt)[0].policy;
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto sampled = run_tabular_episode(sigma, {Rule::fstar()}, 100000, s, opt)[0].policy;
    worst = std::max(worst, inf_norm(sampled, exact));
  }
  MESSAGE("worst infinity-norm gap over 50 seeds: " << worst);
  CHECK(worst <= 0.03);
}

TEST_CASE("tabular runs are deterministic and independent of threads") {
  const Profile sigma = random_ranking_profile(6, 200, 8);
  TabularOptions opt;
  opt.episodes = 4;
  opt.n_samples = 2000;
  opt.seed = 17;
  opt.episode.pbm_budget = 20;
  const std::vector<Rule> rules{Rule::fstar(), Rule::borda()};
  const auto one = run_tabular(sigma, rules, opt);
  opt.threads = 3;
  const auto three = run_tabular(sigma, rules, opt);
  CHECK(one == three);
  REQUIRE(one.size() == 8);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].episode == static_cast<int>(i / 2));
    CHECK(one[i].rule == rules[i % 2]);
  }
  CHECK(one[0].seed != one[2].seed);
}

TEST_CASE("bound table") {
  const auto rows = bound_table({5, 10, 20}, 0.7, 4, 500, 1);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(row.seeds == 4);
    CHECK(row.delta == 0.7);
    CHECK(row.inv_sum_u > 1.0 / row.m);
    CHECK(row.alpha > 1.0 / row.m);
    CHECK(row.alpha <= row.inv_sum_u + 1e-12);
  }
  CHECK(rows == bound_table({5, 10, 20}, 0.7, 4, 500, 1));
}
