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

// Axiom checkers. Each returns a verdict whose counterexample, when present,
// can be replayed with `replay` to reproduce the violation.

#ifndef PPLEARN_AXIOMS_HPP_
#define PPLEARN_AXIOMS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pplearn/core.hpp"
#include "pplearn/rules.hpp"

namespace pplearn {

enum class Axiom { kMonotonicity, kPareto, kPpa, kPbm, kCondorcet, kPmc };

std::string_view to_string(Axiom a);
// Accepts monotonicity, pareto, ppa, pbm, condorcet, pmc.
Axiom parse_axiom(std::string_view name);

inline constexpr double kAxiomTolerance = 1e-9;
// Condorcet winners need p > 1/2 + this against every rival.
inline constexpr double kCondorcetMargin = 1e-12;

struct Counterexample {
  // Profile-level axioms: the profile and (monotonicity) its perturbation.
  std::optional<Profile> profile;
  std::optional<Profile> perturbed;
  // Matrix-level axioms.
  std::optional<PreferenceMatrix> matrix;
  int alternative = -1;  // the alternative whose probability misbehaves
  int other = -1;        // Pareto/PMC: the alternative it should not trail
  Policy before;
  std::optional<Policy> after;
};

struct AxiomVerdict {
  Axiom axiom = Axiom::kMonotonicity;
  bool holds = true;
  std::optional<Counterexample> counterexample;
  // Monotonicity: the most negative change pi'(y) - pi(y) seen (0 if none).
  // Pareto / PMC: largest pi(y') - pi(y) over pairs that must not invert.
  // PPA: min_k pi_k / w_k.  Condorcet: pi(y*) or -1 when vacuous.
  double measured = 0.0;
  int cases_checked = 0;
  std::string note;
};

struct MonotonicityOptions {
  // Exhaustive: every supported ranking and every alternative not already
  // on top. Sampled: `trials` random such moves drawn with `seed`.
  bool exhaustive = true;
  int trials = 1000;
  std::uint64_t seed = 0;
  // Fraction of the improved ranking's weight moved to the new ranking.
  // 1 moves the full weight; smaller values are the partial-weight variant.
  double moved_fraction = 1.0;
};

// Lifts y one place (an adjacent swap with the alternative directly above
// it) in one supported ranking and asks pi'(y) >= pi(y) - 1e-9.
AxiomVerdict check_monotonicity(const Rule& rule, const Profile& profile,
                                const MonotonicityOptions& options = {});

// For every (y, y') with y above y' in every supported ranking asks
// pi(y) >= pi(y') - 1e-9.
AxiomVerdict check_pareto(const Rule& rule, const Profile& profile);

// min over k with w_k > 0 of pi_k / w_k.
double measure_ppa(const Rule& rule, const Profile& profile);
double measure_ppa(const Policy& policy, std::span<const double> shares);

// Strict Condorcet winner (p > 1/2 + 1e-12 against all), if any.
std::optional<int> condorcet_winner(const PreferenceMatrix& p);

// If p has a Condorcet winner, holds iff the policy is one-hot on it.
AxiomVerdict check_condorcet(const Rule& rule, const PreferenceMatrix& p);

// The ranking agreeing with every strict majority p(i, j) > 1/2, when the
// strict-majority relation is complete and transitive.
std::optional<Ranking> pmc_ranking(const PreferenceMatrix& p);

// If a PMC ranking exists, holds iff probabilities are non-increasing along it.
AxiomVerdict check_pmc(const Rule& rule, const PreferenceMatrix& p);

// Re-runs the rule on a stored counterexample; true when the violation is
// reproduced exactly.
bool replay(const Rule& rule, const AxiomVerdict& verdict);

}  // namespace pplearn

#endif  // PPLEARN_AXIOMS_HPP_
