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

#include "../oracles.hpp"
#include "../support.hpp"
#include "doctest.h"
#include "pplearn/feasibility.hpp"
#include "pplearn/rules.hpp"

using namespace pplearn;

namespace {

Ranking r(std::vector<int> order) { return Ranking(std::move(order)); }

// Induced by two different profiles with different top-choice shares.
PreferenceMatrix two_profile_matrix() {
  return PreferenceMatrix::from_rows(
      {{0.5, 2.0 / 3, 2.0 / 3}, {1.0 / 3, 0.5, 2.0 / 3}, {1.0 / 3, 1.0 / 3, 0.5}});
}

PreferenceMatrix binary(double p01) {
  PreferenceMatrix p(2);
  p.set_pair(0, 1, p01);
  return p;
}

void check_witness(const FeasibilityReport& rep, const PreferenceMatrix& p, const Policy& w) {
  REQUIRE(rep.witness_profile.has_value());
  CHECK(max_abs_diff(induce_preference(*rep.witness_profile).data(), p.data()) < 1e-7);
  const auto shares = group_shares(*rep.witness_profile);
  for (int k = 0; k < p.m(); ++k) CHECK(std::abs(shares[k] - w[k]) < 1e-7);
  CHECK(rep.residual < 1e-7);
}

}  // namespace

TEST_CASE("outer membership examples") {
  CHECK_FALSE(outer_membership(binary(0.6), Policy(std::vector<double>{0.7, 0.3})));
  CHECK(outer_membership(binary(0.6), Policy(std::vector<double>{0.6, 0.4})));
  CHECK(outer_membership(PreferenceMatrix(2), Policy::uniform(2)));
  CHECK_THROWS_AS(outer_membership(PreferenceMatrix(3), Policy::uniform(2)), ValidationError);
}

TEST_CASE("true shares lie in the outer set and sum u is at least one") {
  Rng rng(301);
  for (int t = 0; t < 500; ++t) {
    const int m = 2 + static_cast<int>(rng.below(5));
    const Profile sigma = testing::random_profile(rng, m);
    const PreferenceMatrix p = induce_preference(sigma);
    CHECK(outer_membership(p, random_dictatorship(sigma)));
    const auto u = u_vector(p);
    double total = 0.0;
    for (double x : u) total += x;
    CHECK(total >= 1.0 - 1e-12);
  }
}

TEST_CASE("exact membership on the non-implementability matrix") {
  const PreferenceMatrix p = two_profile_matrix();
  const Policy w1 = Policy::uniform(3);
  const Policy w2(std::vector<double>{2.0 / 3, 0.0, 1.0 / 3});
  const auto rep1 = exact_membership_profile(p, w1);
  CHECK(rep1.member);
  check_witness(rep1, p, w1);
  const auto rep2 = exact_membership_profile(p, w2);
  CHECK(rep2.member);
  check_witness(rep2, p, w2);
  // With these shares the witness is forced: group 0 must be 0>1>2.
  CHECK(rep2.witness_profile->weight(r({0, 1, 2})) == doctest::Approx(2.0 / 3).epsilon(1e-7));

  const auto rep3 = exact_membership_profile(p, Policy::one_hot(3, 0));
  CHECK_FALSE(rep3.member);
  CHECK_FALSE(rep3.witness_profile.has_value());
  CHECK_THROWS_AS(exact_membership_profile(PreferenceMatrix(7), Policy::uniform(7)), SizeError);
}

TEST_CASE("exact membership agrees with vertex enumeration at M = 3") {
  Rng rng(302);
  const auto rankings = enumerate_rankings(3);
  int members = 0, outsiders = 0;
  for (int t = 0; t < 400; ++t) {
    const PreferenceMatrix p = t % 2 ? testing::random_matrix(rng, 3)
                                     : induce_preference(testing::random_profile(rng, 3));
    // Half the queries take true shares of a profile inducing p when there is one.
    std::vector<double> w(3);
    for (double& x : w) x = rng.uniform();
    const Policy query = Policy::normalized(w);
    const std::vector<double> qv(query.probs().begin(), query.probs().end());
    const bool want = oracle::feasible_by_vertices(p.rows(), qv, rankings);
    const auto rep = exact_membership_profile(p, query);
    CHECK(rep.member == want);
    if (rep.member) {
      ++members;
      check_witness(rep, p, query);
      CHECK(outer_membership(p, query));
    } else {
      ++outsiders;
    }
  }
  Rng rng2(303);
  for (int t = 0; t < 200; ++t) {
    const Profile sigma = testing::random_profile(rng2, 3);
    const PreferenceMatrix p = induce_preference(sigma);
    const Policy w = random_dictatorship(sigma);
    const std::vector<double> wv(w.probs().begin(), w.probs().end());
    CHECK(oracle::feasible_by_vertices(p.rows(), wv, rankings));
    CHECK(exact_membership_profile(p, w).member);
    ++members;
  }
  CHECK(members > 0);
  CHECK(outsiders > 0);
}

TEST_CASE("uniform guarantee fixture is feasible at M = 4") {
  const int m = 4;
  std::vector<double> w(m, 1.0 / (2 * m - 2));
  w[0] = 0.5;
  const PreferenceMatrix half(m);
  const auto rep = exact_membership_profile(half, Policy(w));
  CHECK(rep.member);
  check_witness(rep, half, Policy(w));
}

TEST_CASE("extended tightness witness") {
  const Policy w(std::vector<double>{0.6, 0.4});
  const auto rep = extended_tightness_witness(binary(0.6), w);
  CHECK(rep.member);
  REQUIRE(rep.witness_groups.has_value());
  CHECK((*rep.witness_groups)[0] == ranking_preference(r({0, 1})));
  CHECK((*rep.witness_groups)[1] == ranking_preference(r({1, 0})));
  CHECK(rep.residual < 1e-12);
  CHECK_THROWS_AS(extended_tightness_witness(binary(0.6), Policy(std::vector<double>{0.7, 0.3})),
                  PreconditionError);

  Rng rng(304);
  for (int t = 0; t < 200; ++t) {
    const int m = 3 + static_cast<int>(rng.below(4));
    const PreferenceMatrix p = induce_preference(testing::random_profile(rng, m));
    const auto u = u_vector(p);
    double total = 0.0;
    for (double x : u) total += x;
    // A point of the outer set: u scaled down onto the simplex.
    std::vector<double> wv(m);
    for (int k = 0; k < m; ++k) wv[k] = u[k] / total;
    const Policy q(wv);
    bool degenerate = false;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) degenerate |= wv[i] + wv[j] >= 1.0 - 1e-12;
    }
    if (degenerate) continue;
    const auto ext = extended_tightness_witness(p, q);
    REQUIRE(ext.witness_groups.has_value());
    CHECK(ext.residual < 1e-7);
    for (int k = 0; k < m; ++k) {
      const PreferenceMatrix& pk = (*ext.witness_groups)[k];
      CHECK(validate_preference(pk).max_range_deviation <= 1e-9);
      CHECK(validate_preference(pk).max_skew_deviation <= 1e-9);
      for (int j = 0; j < m; ++j) {
        if (j != k) CHECK(pk(k, j) == doctest::Approx(1.0));
      }
    }
  }
}

TEST_CASE("extended witness on the boundary of the outer set at M = 3") {
  Rng rng(306);
  int built = 0;
  for (int t = 0; t < 300; ++t) {
    const PreferenceMatrix p = induce_preference(testing::random_profile(rng, 3));
    const auto u = u_vector(p);
    // w_0 = u_0; the rest split in proportion to the remaining u.
    const int k = static_cast<int>(rng.below(3));
    std::vector<double> w(3);
    w[k] = u[k];
    double rest = 0.0;
    for (int j = 0; j < 3; ++j) {
      if (j != k) rest += u[j];
    }
    for (int j = 0; j < 3; ++j) {
      if (j != k) w[j] = (1.0 - u[k]) * u[j] / rest;
    }
    if (!(rest > 0.0) || w[0] + w[1] >= 1 - 1e-9 || w[0] + w[2] >= 1 - 1e-9 || w[1] + w[2] >= 1 - 1e-9) continue;
    if (!outer_membership(p, Policy(w))) continue;
    const auto ext = extended_tightness_witness(p, Policy(w));
    REQUIRE(ext.witness_groups.has_value());
    for (const auto& pk : *ext.witness_groups) {
      for (double x : pk.data()) {
        CHECK(x >= -1e-12);
        CHECK(x <= 1 + 1e-12);
      }
    }
    ++built;
  }
  CHECK(built > 50);
}

TEST_CASE("extended witness reports degenerate pairs") {
  const Profile sigma(3, {{r({0, 1, 2}), 0.5}, {r({1, 0, 2}), 0.5}});
  const PreferenceMatrix p = induce_preference(sigma);
  CHECK_THROWS_AS(extended_tightness_witness(p, Policy(std::vector<double>{0.5, 0.5, 0.0})),
                  PreconditionError);
}

TEST_CASE("ppa lower bounds") {
  const auto bin = ppa_lower_bounds(testing::binary_profile(0.1), 1.0);
  CHECK(bin.n_delta == 2);
  CHECK(bin.alpha == doctest::Approx(1.0));
  CHECK(bin.inv_sum_u == doctest::Approx(1.0));

  const auto single = ppa_lower_bounds(Profile::single(r({2, 0, 1, 3})), 1.0);
  CHECK(single.inv_sum_u == doctest::Approx(1.0));
  CHECK(single.alpha == doctest::Approx(1.0));
  CHECK_THROWS_AS(ppa_lower_bounds(Profile::uniform(3), 1.5), PreconditionError);

  Rng rng(305);
  for (int t = 0; t < 300; ++t) {
    const int m = 2 + static_cast<int>(rng.below(5));
    const Profile sigma = testing::random_profile(rng, m);
    const PreferenceMatrix p = induce_preference(sigma);
    const auto w = group_shares(sigma);
    const Policy pi = f_star(p);
    double level = 1e300;
    for (int k = 0; k < m; ++k) {
      if (w[k] > 0) level = std::min(level, pi[k] / w[k]);
    }
    for (double delta : {0.5, 0.7, 0.9, 1.0}) {
      const auto b = ppa_lower_bounds(sigma, delta);
      CHECK(b.alpha <= b.inv_sum_u + 1e-12);
      CHECK(b.inv_sum_u <= 1.0 + 1e-12);
      CHECK(level >= b.inv_sum_u - 1e-9);
      CHECK(b.n_delta >= 0);
      CHECK(b.n_delta <= m);
    }
  }
}
