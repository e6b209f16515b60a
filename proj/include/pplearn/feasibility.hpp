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

// Which top-choice distributions w are consistent with a preference matrix P?
//
// A w is feasible when some profile induces P and has top-choice shares w.
// Every feasible w satisfies w_i <= u_i (the outer box, checked in O(M^2)).
// For M <= 6 the exact question is a linear feasibility problem over the M!
// ranking weights. Under the relaxed model where each group may report any
// skew-symmetric matrix, the outer box is exact and an explicit witness
// exists.

#ifndef PPLEARN_FEASIBILITY_HPP_
#define PPLEARN_FEASIBILITY_HPP_

#include <optional>
#include <vector>

#include "pplearn/core.hpp"

namespace pplearn {

inline constexpr int kMaxExactFeasibilityAlternatives = 6;
inline constexpr double kOuterMembershipSlack = 1e-9;
inline constexpr double kFeasibilityLpTolerance = 1e-7;

struct FeasibilityReport {
  std::vector<double> u;
  double sum_u = 0.0;
  bool member = false;
  // max |constraint residual| of the witness (LP route) or of the
  // reconstruction sum_k w_k P_k - P (extended construction).
  double residual = 0.0;
  // Profile route: a profile inducing P with shares w.
  std::optional<Profile> witness_profile;
  // Extended route: P_1..P_M with row k unanimous and sum_k w_k P_k = P.
  std::optional<std::vector<PreferenceMatrix>> witness_groups;
};

// w_i <= u_i + 1e-9 for all i.
bool outer_membership(const PreferenceMatrix& p, const Policy& w);

// Exact feasibility over strict rankings by LP. Throws SizeError for M > 6.
FeasibilityReport exact_membership_profile(const PreferenceMatrix& p, const Policy& w);

// The explicit group matrices
//   P_k(i, j) = (P(i, j) - w_i) / (1 - w_i - w_j)   for i, j != k,
// with row k unanimous. Throws PreconditionError if w is outside the outer box
// or some pair used by the construction has 1 - w_i - w_j <= 0.
FeasibilityReport extended_tightness_witness(const PreferenceMatrix& p, const Policy& w);

struct PpaBounds {
  double sum_u = 0.0;
  double inv_sum_u = 0.0;
  double alpha = 0.0;
  int n_delta = 0;  // alternatives that are not delta-dominated
};

// Lower bounds on min_k pi_k / w_k for the u-proportional policy:
// (sum u)^-1 and
//   alpha = [(N-1)(1 - w1) + (1 - w2) + (M - N)(1 - delta)]^-1
// with w1 >= w2 the two largest shares and N the number of alternatives y
// with no y' such that P(y' > y) >= delta. Throws std::logic_error if
// alpha <= (sum u)^-1 <= 1 fails by more than 1e-9.
PpaBounds ppa_lower_bounds(const Profile& profile, double delta);

// Same quantities from an already-induced matrix and shares.
PpaBounds ppa_lower_bounds(const PreferenceMatrix& p, std::span<const double> shares,
                           double delta);

}  // namespace pplearn

#endif  // PPLEARN_FEASIBILITY_HPP_
