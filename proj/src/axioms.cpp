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

#include "pplearn/axioms.hpp"

#include <algorithm>
#include <limits>

#include "pplearn/random.hpp"

namespace pplearn {

std::string_view to_string(Axiom a) {
  switch (a) {
    case Axiom::kMonotonicity: return "monotonicity";
    case Axiom::kPareto: return "pareto";
    case Axiom::kPpa: return "ppa";
    case Axiom::kPbm: return "pbm";
    case Axiom::kCondorcet: return "condorcet";
    case Axiom::kPmc: return "pmc";
  }
  return "unknown";
}

Axiom parse_axiom(std::string_view name) {
  for (Axiom a : {Axiom::kMonotonicity, Axiom::kPareto, Axiom::kPpa, Axiom::kPbm,
                  Axiom::kCondorcet, Axiom::kPmc}) {
    if (to_string(a) == name) return a;
  }
  throw ValidationError("unknown axiom '" + std::string(name) + "'");
}

namespace {

// Profile with `fraction` of r's weight moved onto r lifted at rank k.
Profile lift(const Profile& profile, const Ranking& r, int k, double fraction) {
  std::vector<Profile::Entry> entries = profile.entries();
  const double w = profile.weight(r);
  for (auto& [ranking, weight] : entries) {
    if (ranking == r) weight = fraction >= 1.0 ? 0.0 : w * (1.0 - fraction);
  }
  entries.emplace_back(r.with_adjacent_swap(k), fraction >= 1.0 ? w : w * fraction);
  return Profile(profile.m(), entries);
}

struct Move {
  Ranking ranking;
  int rank_above;  // swap ranks rank_above and rank_above + 1
};

}  // namespace

AxiomVerdict check_monotonicity(const Rule& rule, const Profile& profile,
                                const MonotonicityOptions& options) {
  if (!(options.moved_fraction > 0.0 && options.moved_fraction <= 1.0)) {
    throw PreconditionError("moved_fraction must lie in (0, 1]");
  }
  AxiomVerdict v;
  v.axiom = Axiom::kMonotonicity;
  const Policy base = rule(profile);

  std::vector<Move> moves;
  for (const auto& [r, w] : profile.weights()) {
    for (int k = 0; k + 1 < r.size(); ++k) moves.push_back({r, k});
  }
  std::vector<Move> plan;
  if (options.exhaustive) {
    plan = moves;
  } else if (!moves.empty()) {
    Rng rng(options.seed);
    for (int t = 0; t < options.trials; ++t) plan.push_back(moves[rng.below(moves.size())]);
  }

  double worst = 0.0;
  for (const auto& move : plan) {
    const int y = move.ranking.at(move.rank_above + 1);
    Profile perturbed = lift(profile, move.ranking, move.rank_above, options.moved_fraction);
    Policy after = rule(perturbed);
    ++v.cases_checked;
    const double change = after[y] - base[y];
    if (change < worst) {
      worst = change;
      if (change < -kAxiomTolerance) {
        v.holds = false;
        v.counterexample = Counterexample{profile, perturbed, std::nullopt, y, -1, base, after};
      }
    }
  }
  v.measured = worst;
  if (plan.empty()) v.note = "no improvable alternative in the support";
  return v;
}

AxiomVerdict check_pareto(const Rule& rule, const Profile& profile) {
  AxiomVerdict v;
  v.axiom = Axiom::kPareto;
  const int m = profile.m();
  const Policy pi = rule(profile);
  double worst = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      bool unanimous = true;
      for (const auto& [r, w] : profile.weights()) {
        if (!r.prefers(a, b)) {
          unanimous = false;
          break;
        }
      }
      if (!unanimous) continue;
      ++v.cases_checked;
      const double gap = pi[b] - pi[a];
      if (gap > worst) {
        worst = gap;
        if (gap > kAxiomTolerance) {
          v.holds = false;
          v.counterexample = Counterexample{profile, std::nullopt, std::nullopt, a, b, pi, std::nullopt};
        }
      }
    }
  }
  v.measured = v.cases_checked > 0 ? worst : 0.0;
  if (v.cases_checked == 0) v.note = "vacuous: no unanimously ordered pair";
  return v;
}

double measure_ppa(const Policy& policy, std::span<const double> shares) {
  double level = std::numeric_limits<double>::infinity();
  for (int k = 0; k < policy.m(); ++k) {
    if (shares[k] > 0.0) level = std::min(level, policy[k] / shares[k]);
  }
  return level;
}

double measure_ppa(const Rule& rule, const Profile& profile) {
  return measure_ppa(rule(profile), group_shares(profile));
}

std::optional<int> condorcet_winner(const PreferenceMatrix& p) {
  for (int i = 0; i < p.m(); ++i) {
    bool wins = true;
    for (int j = 0; j < p.m() && wins; ++j) wins = j == i || p(i, j) > 0.5 + kCondorcetMargin;
    if (wins) return i;
  }
  return std::nullopt;
}

AxiomVerdict check_condorcet(const Rule& rule, const PreferenceMatrix& p) {
  AxiomVerdict v;
  v.axiom = Axiom::kCondorcet;
  const auto winner = condorcet_winner(p);
  if (!winner) {
    v.measured = -1.0;
    v.note = "vacuous: no Condorcet winner";
    return v;
  }
  const Policy pi = rule(p);
  v.cases_checked = 1;
  v.measured = pi[*winner];
  if (pi[*winner] < 1.0 - kAxiomTolerance) {
    v.holds = false;
    v.counterexample = Counterexample{std::nullopt, std::nullopt, p, *winner, -1, pi, std::nullopt};
  }
  return v;
}

std::optional<Ranking> pmc_ranking(const PreferenceMatrix& p) {
  const int m = p.m();
  // A complete transitive strict tournament has distinct win counts
  // M-1, M-2, ..., 0; sort by wins and verify every pair.
  std::vector<int> wins(m, 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      if (p(i, j) > 0.5) {
        ++wins[i];
      } else if (!(p(j, i) > 0.5)) {
        return std::nullopt;  // a tie: the majority relation is incomplete
      }
    }
  }
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return wins[a] > wins[b]; });
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      if (!(p(order[a], order[b]) > 0.5)) return std::nullopt;
    }
  }
  return Ranking(std::move(order));
}

AxiomVerdict check_pmc(const Rule& rule, const PreferenceMatrix& p) {
  AxiomVerdict v;
  v.axiom = Axiom::kPmc;
  const auto ranking = pmc_ranking(p);
  if (!ranking) {
    v.note = "vacuous: no PMC ranking";
    return v;
  }
  const Policy pi = rule(p);
  double worst = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < p.m(); ++a) {
    for (int b = a + 1; b < p.m(); ++b) {
      const int hi = ranking->at(a);
      const int lo = ranking->at(b);
      ++v.cases_checked;
      const double gap = pi[lo] - pi[hi];
      if (gap > worst) {
        worst = gap;
        if (gap > kAxiomTolerance) {
          v.holds = false;
          v.counterexample = Counterexample{std::nullopt, std::nullopt, p, hi, lo, pi, std::nullopt};
        }
      }
    }
  }
  v.measured = worst;
  return v;
}

bool replay(const Rule& rule, const AxiomVerdict& verdict) {
  if (!verdict.counterexample) return false;
  const Counterexample& c = *verdict.counterexample;
  switch (verdict.axiom) {
    case Axiom::kMonotonicity: {
      if (!c.profile || !c.perturbed) return false;
      const Policy before = rule(*c.profile);
      const Policy after = rule(*c.perturbed);
      return before == c.before && c.after && after == *c.after &&
             after[c.alternative] < before[c.alternative] - kAxiomTolerance;
    }
    case Axiom::kPareto: {
      if (!c.profile) return false;
      const Policy pi = rule(*c.profile);
      return pi == c.before && pi[c.other] > pi[c.alternative] + kAxiomTolerance;
    }
    case Axiom::kCondorcet: {
      if (!c.matrix) return false;
      const Policy pi = rule(*c.matrix);
      return pi == c.before && pi[c.alternative] < 1.0 - kAxiomTolerance;
    }
    case Axiom::kPmc: {
      if (!c.matrix) return false;
      const Policy pi = rule(*c.matrix);
      return pi == c.before && pi[c.other] > pi[c.alternative] + kAxiomTolerance;
    }
    case Axiom::kPpa:
    case Axiom::kPbm:
      return false;
  }
  return false;
}

}  // namespace pplearn
