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

#include <cmath>

#include "../oracles.hpp"
#include "../support.hpp"
#include "doctest.h"
#include "pplearn/core.hpp"
#include "pplearn/error.hpp"

using namespace pplearn;

namespace {

Ranking r(std::vector<int> order) { return Ranking(std::move(order)); }


double max_diff(const PreferenceMatrix& p, const oracle::Matrix& want) {
  double out = 0.0;
  for (int i = 0; i < p.m(); ++i) {
    for (int j = 0; j < p.m(); ++j) out = std::max(out, std::abs(p(i, j) - want[i][j]));
  }
  return out;
}

}  // namespace

TEST_CASE("ranking positions are one-based and inverse to the order") {
  const Ranking x = r({2, 0, 1});
  CHECK(x.position(2) == 1);
  CHECK(x.position(0) == 2);
  CHECK(x.position(1) == 3);
  CHECK(x.top() == 2);
  CHECK(x.prefers(0, 1));
  CHECK_FALSE(x.prefers(1, 2));
  CHECK(x.with_adjacent_swap(0) == r({0, 2, 1}));
  CHECK(x.to_string() == "2>0>1");
}

TEST_CASE("ranking rejects non-permutations") {
  CHECK_THROWS_AS(r({0, 0, 1}), ValidationError);
  CHECK_THROWS_AS(r({0, 3, 1}), ValidationError);
  CHECK_THROWS_AS(r({}), ValidationError);
}

TEST_CASE("enumeration lists all permutations in lexicographic order") {
  const auto all = enumerate_rankings(4);
  CHECK(all.size() == 24);
  CHECK(all.front() == Ranking::identity(4));
  CHECK(all.back() == r({3, 2, 1, 0}));
  CHECK(std::is_sorted(all.begin(), all.end()));
  CHECK_THROWS_AS(enumerate_rankings(9), SizeError);
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(Profile(2, {{r({0, 1}), 0.5}}), ValidationError);
  CHECK_THROWS_AS(Profile(2, {{r({0, 1}), 1.5}, {r({1, 0}), -0.5}}), ValidationError);
  CHECK_THROWS_AS(Profile(3, {{r({0, 1}), 1.0}}), ValidationError);
  const Profile dup(2, {{r({0, 1}), 0.25}, {r({0, 1}), 0.25}, {r({1, 0}), 0.5}, {r({1, 0}), 0.0}});
  CHECK(dup.support_size() == 2);
  CHECK(dup.weight(r({0, 1})) == doctest::Approx(0.5));
  const std::vector<Profile::Entry> raw{{r({0, 1}), 3.0}, {r({1, 0}), 1.0}};
  CHECK(Profile::renormalized(2, raw).weight(r({0, 1})) == doctest::Approx(0.75));
}

TEST_CASE("induced matrix of the non-implementability profile") {
  const Profile s2(3, {{r({0, 1, 2}), 2.0 / 3}, {r({2, 1, 0}), 1.0 / 3}});
  const PreferenceMatrix p = induce_preference(s2);
  CHECK(p(0, 1) == doctest::Approx(2.0 / 3));
  CHECK(p(0, 2) == doctest::Approx(2.0 / 3));
  CHECK(p(1, 2) == doctest::Approx(2.0 / 3));
  CHECK(p(1, 0) == doctest::Approx(1.0 / 3));
}

TEST_CASE("single ranking and uniform profiles") {
  const Ranking x = r({1, 3, 0, 2});
  const PreferenceMatrix p = induce_preference(Profile::single(x));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) CHECK(p(i, j) == (x.prefers(i, j) ? 1.0 : 0.0));
    }
  }
  CHECK(p == ranking_preference(x));
  const PreferenceMatrix u = induce_preference(Profile::uniform(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(u(i, j) == doctest::Approx(0.5));
  }
}

TEST_CASE("binary epsilon profile shares") {
  const Profile sigma(2, {{r({0, 1}), 0.6}, {r({1, 0}), 0.4}});
  const auto w = group_shares(sigma);
  CHECK(w[0] == doctest::Approx(0.6));
  CHECK(w[1] == doctest::Approx(0.4));
  const auto g = decompose_groups(Profile::single(r({2, 0, 1})));
  CHECK(g.shares == std::vector<double>{0.0, 0.0, 1.0});
  CHECK_FALSE(g.group_prefs[0].has_value());
  CHECK(g.group_prefs[2].has_value());
}

TEST_CASE("induced matrices and decompositions match the oracle on random profiles") {
  Rng rng(101);
  for (int t = 0; t < 300; ++t) {
    const int m = 2 + static_cast<int>(rng.below(5));
    const Profile sigma = testing::random_profile(rng, m, 1 + static_cast<int>(rng.below(100)));
    const PreferenceMatrix p = induce_preference(sigma);
    CHECK(max_diff(p, oracle::induce(sigma)) < 1e-12);
    CHECK(validate_preference(p).ok());

    const GroupDecomposition g = decompose_groups(sigma);
    const auto w = oracle::shares(sigma);
    for (int k = 0; k < m; ++k) {
      CHECK(g.shares[k] == doctest::Approx(w[k]).epsilon(1e-12));
      CHECK(g.group_prefs[k].has_value() == (w[k] > 0.0));
      if (g.group_prefs[k]) {
        for (int j = 0; j < m; ++j) {
          if (j != k) CHECK(std::abs((*g.group_prefs[k])(k, j) - 1.0) < 1e-12);
        }
      }
    }
    CHECK(max_abs_diff(g.reconstruct().data(), p.data()) < 1e-9);
  }
}

TEST_CASE("induction is affine in the profile") {
  Rng rng(102);
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + static_cast<int>(rng.below(4));
    const Profile a = testing::random_profile(rng, m), b = testing::random_profile(rng, m);
    const double lambda = rng.uniform();
    const PreferenceMatrix mixed = induce_preference(a.mix(b, lambda));
    const PreferenceMatrix pa = induce_preference(a), pb = induce_preference(b);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        CHECK(std::abs(mixed(i, j) - (lambda * pa(i, j) + (1 - lambda) * pb(i, j))) < 1e-12);
      }
    }
  }
}

TEST_CASE("validate_preference diagnostics") {
  PreferenceMatrix good(2);
  good.set_pair(0, 1, 0.7);
  CHECK(validate_preference(good).ok());
  PreferenceMatrix bad(2);
  bad(0, 1) = 0.7;
  bad(1, 0) = 0.4;
  const auto d = validate_preference(bad);
  REQUIRE(d.violations.size() == 1);
  CHECK(d.violations[0].kind == PreferenceViolation::Kind::kSkewSymmetry);
  CHECK(d.violations[0].magnitude == doctest::Approx(0.1));
  CHECK(d.max_skew_deviation == doctest::Approx(0.1));
  CHECK_THROWS_AS(require_skew_symmetric(bad), ValidationError);
  CHECK(validate_preference(PreferenceMatrix(5)).ok());
  PreferenceMatrix range(2);
  range(0, 1) = 1.2;
  range(1, 0) = -0.2;
  CHECK(validate_preference(range).max_range_deviation == doctest::Approx(0.2));
}

TEST_CASE("policy validation and constructors") {
  CHECK_THROWS_AS(Policy(std::vector<double>{0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(Policy(std::vector<double>{1.5, -0.5}), ValidationError);
  CHECK(Policy::normalized({1.0, 3.0})[1] == doctest::Approx(0.75));
  CHECK_THROWS_AS(Policy::normalized({0.0, 0.0}), PreconditionError);
  CHECK(Policy::one_hot(3, 1) == Policy(std::vector<double>{0.0, 1.0, 0.0}));
  CHECK(Policy::uniform(4)[3] == doctest::Approx(0.25));
}
