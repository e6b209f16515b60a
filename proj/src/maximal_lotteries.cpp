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

#include "pplearn/kernels.hpp"
#include "pplearn/linprog.hpp"
#include "pplearn/rules.hpp"

namespace pplearn {
namespace {

double guaranteed_value(const PreferenceMatrix& p, std::span<const double> pi) {
  const int m = p.m();
  std::vector<double> payoff(m);
  kernels::active().left_multiply(pi.data(), p.data().data(), m, payoff.data());
  return *std::min_element(payoff.begin(), payoff.end());
}

GameSolution make_solution(const PreferenceMatrix& p, std::vector<double> pi, int iterations) {
  for (double& x : pi) x = std::max(0.0, x);
  Policy policy = Policy::normalized(std::move(pi));
  const double value = guaranteed_value(p, policy.probs());
  return GameSolution{std::move(policy), value, 0.5 - value, iterations};
}

// maximize v  s.t.  sum_i pi_i p[i][j] - v - s_j = 0 (all j),  sum_i pi_i = 1.
// Columns: pi (m), v, s (m). Payoffs are non-negative, so v >= 0 is implied.
GameSolution solve_simplex(const PreferenceMatrix& p) {
  const int m = p.m();
  lp::Problem prob(m + 1, 2 * m + 1);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) prob.at(j, i) = p(i, j);
    prob.at(j, m) = -1.0;
    prob.at(j, m + 1 + j) = -1.0;
  }
  for (int i = 0; i < m; ++i) prob.at(m, i) = 1.0;
  prob.b[m] = 1.0;
  prob.c[m] = -1.0;
  const lp::Result res = lp::solve(prob);
  if (res.status != lp::Status::kOptimal) {
    throw GameSolverError("maximal lotteries LP ended with status " +
                              std::string(lp::to_string(res.status)),
                          make_solution(p, std::vector<double>(m, 1.0), res.iterations));
  }
  return make_solution(p, std::vector<double>(res.x.begin(), res.x.begin() + m), res.iterations);
}

GameSolution solve_fictitious_play(const PreferenceMatrix& p, double tol, int max_iterations) {
  const int m = p.m();
  const auto& k = kernels::active();
  std::vector<double> counts(m, 1.0 / m);
  std::vector<double> average(counts);
  std::vector<double> payoff(m);
  GameSolution best = make_solution(p, average, 0);
  for (int t = 1; t <= max_iterations; ++t) {
    k.right_multiply(p.data().data(), average.data(), m, payoff.data());
    const int reply = static_cast<int>(std::max_element(payoff.begin(), payoff.end()) - payoff.begin());
    counts[reply] += 1.0;
    const double total = 1.0 + t;
    for (int i = 0; i < m; ++i) average[i] = counts[i] / total;
    if (t % 16 == 0 || t == max_iterations) {
      GameSolution current = make_solution(p, average, t);
      if (current.exploitability < best.exploitability) best = std::move(current);
      if (best.exploitability <= tol) return best;
    }
  }
  return best;
}

}  // namespace

double exploitability(const PreferenceMatrix& p, const Policy& policy) {
  return 0.5 - guaranteed_value(p, policy.probs());
}

GameSolution maximal_lotteries(const PreferenceMatrix& p, double tol, const GameOptions& options) {
  require_skew_symmetric(p);
  if (!(tol > 0.0)) throw PreconditionError("maximal lotteries tolerance must be positive");
  GameSolution sol = options.solver == GameSolver::kSimplex
                         ? solve_simplex(p)
                         : solve_fictitious_play(p, tol, options.max_iterations);
  if (sol.exploitability > tol) {
    throw GameSolverError("maximal lotteries exploitability " + std::to_string(sol.exploitability) +
                              " exceeds tolerance",
                          std::move(sol));
  }
  return sol;
}

}  // namespace pplearn
