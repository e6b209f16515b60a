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

#include "pplearn/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "pplearn/error.hpp"
#include "pplearn/linprog.hpp"
#include "pplearn/rules.hpp"

namespace pplearn {
namespace {

void require_same_size(const PreferenceMatrix& p, const Policy& w) {
  if (p.m() != w.m()) throw ValidationError("preference matrix and share vector differ in M");
}

FeasibilityReport base_report(const PreferenceMatrix& p) {
  FeasibilityReport r;
  r.u = u_vector(p);
  for (double x : r.u) r.sum_u += x;
  return r;
}

}  // namespace

bool outer_membership(const PreferenceMatrix& p, const Policy& w) {
  require_same_size(p, w);
  const auto u = u_vector(p);
  for (int i = 0; i < p.m(); ++i) {
    if (w[i] > u[i] + kOuterMembershipSlack) return false;
  }
  return true;
}

FeasibilityReport exact_membership_profile(const PreferenceMatrix& p, const Policy& w) {
  require_same_size(p, w);
  const int m = p.m();
  if (m > kMaxExactFeasibilityAlternatives) {
    throw SizeError("exact feasibility is limited to M <= " +
                    std::to_string(kMaxExactFeasibilityAlternatives));
  }
  require_skew_symmetric(p);
  FeasibilityReport report = base_report(p);

  const auto rankings = enumerate_rankings(m);
  const int n = static_cast<int>(rankings.size());
  const int pairs = m * (m - 1) / 2;
  lp::Problem prob(pairs + m, n);
  int row = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j, ++row) {
      for (int c = 0; c < n; ++c) prob.at(row, c) = rankings[c].prefers(i, j) ? 1.0 : 0.0;
      prob.b[row] = p(i, j);
    }
  }
  for (int k = 0; k < m; ++k, ++row) {
    for (int c = 0; c < n; ++c) prob.at(row, c) = rankings[c].top() == k ? 1.0 : 0.0;
    prob.b[row] = w[k];
  }

  lp::Options opt;
  opt.optimize = false;
  opt.feasibility_tol = kFeasibilityLpTolerance;
  const lp::Result res = lp::solve(prob, opt);
  report.residual = res.residual;
  report.member = res.status == lp::Status::kOptimal && res.residual <= kFeasibilityLpTolerance;
  if (report.member) {
    std::vector<Profile::Entry> entries;
    for (int c = 0; c < n; ++c) {
      if (res.x[c] > 0.0) entries.emplace_back(rankings[c], res.x[c]);
    }
    report.witness_profile = Profile::renormalized(m, entries);
  }
  return report;
}

FeasibilityReport extended_tightness_witness(const PreferenceMatrix& p, const Policy& w) {
  require_same_size(p, w);
  require_skew_symmetric(p);
  const int m = p.m();
  FeasibilityReport report = base_report(p);
  for (int i = 0; i < m; ++i) {
    if (w[i] > report.u[i] + kOuterMembershipSlack) {
      std::ostringstream msg;
      msg << "share w_" << i << " = " << w[i] << " exceeds u_" << i << " = " << report.u[i];
      throw PreconditionError(msg.str());
    }
  }
  if (m >= 3) {
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        if (1.0 - w[i] - w[j] <= 0.0) {
          throw PreconditionError("degenerate pair (" + std::to_string(i) + ", " +
                                  std::to_string(j) + "): 1 - w_i - w_j <= 0");
        }
      }
    }
  }

  std::vector<PreferenceMatrix> groups;
  groups.reserve(m);
  for (int k = 0; k < m; ++k) {
    PreferenceMatrix g(m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        if (i == k) {
          g(i, j) = 1.0;
        } else if (j == k) {
          g(i, j) = 0.0;
        } else {
          g(i, j) = (p(i, j) - w[i]) / (1.0 - w[i] - w[j]);
        }
      }
    }
    groups.push_back(std::move(g));
  }

  // The construction is only a witness if every P_k is a valid matrix and
  // the mixture reproduces P.
  bool valid = true;
  for (const auto& g : groups) {
    const auto d = validate_preference(g);
    if (!d.ok()) valid = false;
  }
  GroupDecomposition mix;
  mix.shares.assign(w.probs().begin(), w.probs().end());
  for (const auto& g : groups) mix.group_prefs.emplace_back(g);
  report.residual = max_abs_diff(mix.reconstruct().data(), p.data());
  report.member = valid && report.residual <= kFeasibilityLpTolerance;
  report.witness_groups = std::move(groups);
  return report;
}

PpaBounds ppa_lower_bounds(const PreferenceMatrix& p, std::span<const double> shares,
                           double delta) {
  const int m = p.m();
  if (static_cast<int>(shares.size()) != m) throw ValidationError("shares have wrong length");
  if (!(delta >= 0.0 && delta <= 1.0)) throw PreconditionError("delta must lie in [0, 1]");
  PpaBounds out;
  for (double x : u_vector(p)) out.sum_u += x;
  out.inv_sum_u = 1.0 / out.sum_u;

  for (int y = 0; y < m; ++y) {
    bool dominated = false;
    for (int z = 0; z < m && !dominated; ++z) {
      dominated = z != y && p(z, y) >= delta - 1e-12;
    }
    if (!dominated) ++out.n_delta;
  }
  std::vector<double> sorted(shares.begin(), shares.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double w1 = sorted[0];
  const double w2 = sorted[1];
  const double denom = (out.n_delta - 1) * (1.0 - w1) + (1.0 - w2) + (m - out.n_delta) * (1.0 - delta);
  out.alpha = 1.0 / denom;

  if (out.alpha > out.inv_sum_u + 1e-9 || out.inv_sum_u > 1.0 + 1e-9) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "PPA bound sandwich violated: alpha=" << out.alpha << " inv_sum_u=" << out.inv_sum_u;
    throw std::logic_error(msg.str());
  }
  return out;
}

PpaBounds ppa_lower_bounds(const Profile& profile, double delta) {
  return ppa_lower_bounds(induce_preference(profile), group_shares(profile), delta);
}

}  // namespace pplearn
