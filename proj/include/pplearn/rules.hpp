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

// Aggregation rules mapping a profile or its preference matrix to a policy:
//
//   * maximal Borda (the argmax of Bradley-Terry MLE rewards),
//   * maximal lotteries (equilibrium of the symmetric constant-sum game),
//   * random dictatorship (top-choice shares; needs the profile itself),
//   * the u-vector family: proportional to u, to u*exp(beta*u), and the
//     argmax of u (minimax Condorcet).
//
// Every argmax rule breaks ties toward the lowest alternative index.

#ifndef PPLEARN_RULES_HPP_
#define PPLEARN_RULES_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pplearn/core.hpp"
#include "pplearn/error.hpp"

namespace pplearn {

// ---------------------------------------------------------------------------
// Borda and Bradley-Terry

// B[i] = sum_r sigma_r * (M - r(y_i)).
std::vector<double> borda_scores(const Profile& profile);

// B[i] = sum_{j != i} p[i][j]; equal to borda_scores on induced matrices.
std::vector<double> borda_scores(const PreferenceMatrix& p);

struct BtFit {
  std::vector<double> rewards;  // gauge-fixed to sum 0
  double log_likelihood = 0.0;
  double gradient_norm = 0.0;   // infinity norm at `rewards`
  int iterations = 0;
  bool converged = false;
  // The MLE is unbounded (some block of alternatives never loses to the
  // rest). Rewards are then a clamped surrogate that preserves the order.
  bool diverged = false;
};

struct BtOptions {
  double initial_step = 1.0;
  double gradient_tol = 1e-10;
  int max_iterations = 100000;
  double reward_clamp = 30.0;
};

class BtNonConvergence : public Error {
 public:
  BtNonConvergence(const std::string& what, BtFit last)
      : Error(what), last_(std::move(last)) {}
  const BtFit& last_iterate() const { return last_; }

 private:
  BtFit last_;
};

// Maximizes sum_{i<j} p_ij log s(r_i - r_j) + p_ji log s(r_j - r_i) by
// damped Newton ascent on the sum-zero subspace: step 1, halved until the
// likelihood does not drop or the gradient norm halves, stopping at
// gradient inf-norm < 1e-10.
BtFit fit_bt(const PreferenceMatrix& p, const BtOptions& options = {});

// Bradley-Terry log-likelihood of `rewards` under p.
double bt_log_likelihood(const PreferenceMatrix& p, std::span<const double> rewards);

// One-hot on argmax Borda score.
Policy maximal_borda(const Profile& profile);
Policy maximal_borda(const PreferenceMatrix& p);

// ---------------------------------------------------------------------------
// Maximal lotteries

struct GameSolution {
  Policy policy;
  // Guaranteed payoff min_z sum_i pi_i p[i][z] (1/2 at an exact equilibrium).
  double value;
  // 1/2 - value: how far the best pure reply gets above 1/2.
  double exploitability;
  int iterations;
};

enum class GameSolver { kSimplex, kFictitiousPlay };

struct GameOptions {
  GameSolver solver = GameSolver::kSimplex;
  int max_iterations = 200000;  // fictitious play only
};

class GameSolverError : public Error {
 public:
  GameSolverError(const std::string& what, GameSolution best)
      : Error(what), best_(std::move(best)) {}
  const GameSolution& best_iterate() const { return best_; }

 private:
  GameSolution best_;
};

// Equilibrium of the symmetric game with payoff p. Throws GameSolverError
// if the exploitability of the result exceeds `tol`.
GameSolution maximal_lotteries(const PreferenceMatrix& p, double tol = 1e-9,
                               const GameOptions& options = {});

// 1/2 - min_z sum_i pi_i p[i][z].
double exploitability(const PreferenceMatrix& p, const Policy& policy);

// ---------------------------------------------------------------------------
// Random dictatorship

// decompose_groups(profile).shares as a policy.
Policy random_dictatorship(const Profile& profile);

// ---------------------------------------------------------------------------
// u-vector family

// u[i] = min_{j != i} p[i][j]. Throws PreconditionError for M < 2.
std::vector<double> u_vector(const PreferenceMatrix& p);

// pi_i = u_i / sum_j u_j.
Policy f_star(const PreferenceMatrix& p);

// pi_i proportional to u_i * exp(beta * u_i). beta == 0 matches f_star
// bit for bit.
Policy f_beta(const PreferenceMatrix& p, double beta);

// One-hot on argmax u.
Policy f_infinity(const PreferenceMatrix& p);

// Shared normalization step of f_star / f_beta, exposed for testing the
// scale invariance of the ratio definition.
Policy u_proportional_policy(std::span<const double> u, double beta);

// Smallest beta for which the finite-beta Condorcet bound claims
// pi(y*) >= alpha_c: (1/(u* - 1/2)) ln((M-1) alpha_c / (2 (1 - alpha_c))),
// floored at 0. Requires u* > 1/2 and alpha_c in (0, 1).
double condorcet_beta(double u_star, int m, double alpha_c);

// A beta that provably gives pi(y*) >= alpha_c for every matrix whose
// Condorcet winner has min-margin u* (uses u_j <= 1 - u* for j != *):
// (1/(2u* - 1)) ln((M-1)(1-u*) alpha_c / (u* (1 - alpha_c))), floored at 0.
double condorcet_beta_certified(double u_star, int m, double alpha_c);

// ---------------------------------------------------------------------------
// Rule handle used by the axiom checkers, manipulation search and
// experiments.

enum class RuleKind {
  kBorda,
  kMaximalLotteries,
  kRandomDictatorship,
  kFStar,
  kFBeta,
  kFInfinity,
};

struct Rule {
  RuleKind kind = RuleKind::kFStar;
  double beta = 0.0;  // kFBeta only

  static Rule borda() { return {RuleKind::kBorda}; }
  static Rule maximal_lotteries() { return {RuleKind::kMaximalLotteries}; }
  static Rule random_dictatorship() { return {RuleKind::kRandomDictatorship}; }
  static Rule fstar() { return {RuleKind::kFStar}; }
  static Rule fbeta(double beta) { return {RuleKind::kFBeta, beta}; }
  static Rule finfinity() { return {RuleKind::kFInfinity}; }

  // Accepts borda, ml, rd, fstar, finf, fbeta (with `beta`), and fbeta:B.
  static Rule parse(std::string_view name, double beta = 0.0);

  // Short name: borda, ml, rd, fstar, fbeta, finf.
  std::string name() const;
  // Name plus beta for fbeta, e.g. "fbeta:10".
  std::string label() const;

  // Whether the rule is a function of the preference matrix alone.
  bool implementable() const { return kind != RuleKind::kRandomDictatorship; }

  Policy operator()(const Profile& profile) const;
  // Throws PreconditionError for random dictatorship.
  Policy operator()(const PreferenceMatrix& p) const;
  // Evaluation from the pair (P, w) that determines every rule here.
  Policy evaluate(const PreferenceMatrix& p, std::span<const double> shares) const;

  friend bool operator==(const Rule&, const Rule&) = default;
};

}  // namespace pplearn

#endif  // PPLEARN_RULES_HPP_
