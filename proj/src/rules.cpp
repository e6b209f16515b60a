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

#include "pplearn/rules.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pplearn/kernels.hpp"

namespace pplearn {
namespace {

int argmax_lowest(std::span<const double> v) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

}  // namespace

std::vector<double> borda_scores(const Profile& profile) {
  const int m = profile.m();
  std::vector<double> scores(m, 0.0);
  for (const auto& [r, w] : profile.weights()) {
    for (int i = 0; i < m; ++i) scores[i] += w * static_cast<double>(m - r.position(i));
  }
  return scores;
}

std::vector<double> borda_scores(const PreferenceMatrix& p) {
  const int m = p.m();
  std::vector<double> scores(m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (j != i) scores[i] += p(i, j);
    }
  }
  return scores;
}

Policy maximal_borda(const Profile& profile) {
  return Policy::one_hot(profile.m(), argmax_lowest(borda_scores(profile)));
}

Policy maximal_borda(const PreferenceMatrix& p) {
  return Policy::one_hot(p.m(), argmax_lowest(borda_scores(p)));
}

Policy random_dictatorship(const Profile& profile) {
  return Policy::normalized(group_shares(profile));
}

// ---------------------------------------------------------------------------
// u-vector family

std::vector<double> u_vector(const PreferenceMatrix& p) {
  if (p.m() < 2) throw PreconditionError("u-vector needs at least two alternatives");
  std::vector<double> u(p.m());
  kernels::active().row_min_offdiag(p.data().data(), p.m(), u.data());
  return u;
}

Policy u_proportional_policy(std::span<const double> u, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw PreconditionError("beta must be finite and non-negative");
  }
  const double top = *std::max_element(u.begin(), u.end());
  std::vector<double> weights(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    weights[i] = u[i] * std::exp(beta * (u[i] - top));
  }
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) {
    throw PreconditionError("u-vector is identically zero; no alternative is undominated");
  }
  return Policy::normalized(std::move(weights));
}

Policy f_star(const PreferenceMatrix& p) { return u_proportional_policy(u_vector(p), 0.0); }

Policy f_beta(const PreferenceMatrix& p, double beta) {
  return u_proportional_policy(u_vector(p), beta);
}

Policy f_infinity(const PreferenceMatrix& p) {
  return Policy::one_hot(p.m(), argmax_lowest(u_vector(p)));
}

double condorcet_beta(double u_star, int m, double alpha_c) {
  if (!(u_star > 0.5) || !(alpha_c > 0.0 && alpha_c < 1.0) || m < 2) {
    throw PreconditionError("condorcet_beta needs u* > 1/2, 0 < alpha_c < 1, M >= 2");
  }
  const double ratio = (m - 1) * alpha_c / (2.0 * (1.0 - alpha_c));
  return std::max(0.0, std::log(ratio) / (u_star - 0.5));
}

double condorcet_beta_certified(double u_star, int m, double alpha_c) {
  if (!(u_star > 0.5) || !(alpha_c > 0.0 && alpha_c < 1.0) || m < 2) {
    throw PreconditionError("condorcet_beta_certified needs u* > 1/2, 0 < alpha_c < 1, M >= 2");
  }
  const double ratio = (m - 1) * (1.0 - u_star) * alpha_c / (u_star * (1.0 - alpha_c));
  return std::max(0.0, std::log(ratio) / (2.0 * u_star - 1.0));
}

// ---------------------------------------------------------------------------
// Rule

Rule Rule::parse(std::string_view name, double beta) {
  if (name.starts_with("fbeta:")) {
    const std::string_view num = name.substr(6);
    std::istringstream in{std::string(num)};
    double b = 0.0;
    if (!(in >> b) || !in.eof() || b < 0.0) {
      throw ValidationError("bad beta in rule name '" + std::string(name) + "'");
    }
    return fbeta(b);
  }
  if (name == "borda") return borda();
  if (name == "ml") return maximal_lotteries();
  if (name == "rd") return random_dictatorship();
  if (name == "fstar") return fstar();
  if (name == "finf") return finfinity();
  if (name == "fbeta") {
    if (!(beta >= 0.0)) throw ValidationError("beta must be non-negative");
    return fbeta(beta);
  }
  throw ValidationError("unknown rule '" + std::string(name) + "'");
}

std::string Rule::name() const {
  switch (kind) {
    case RuleKind::kBorda: return "borda";
    case RuleKind::kMaximalLotteries: return "ml";
    case RuleKind::kRandomDictatorship: return "rd";
    case RuleKind::kFStar: return "fstar";
    case RuleKind::kFBeta: return "fbeta";
    case RuleKind::kFInfinity: return "finf";
  }
  return "unknown";
}

std::string Rule::label() const {
  if (kind != RuleKind::kFBeta) return name();
  std::ostringstream out;
  out << "fbeta:" << beta;
  return out.str();
}

Policy Rule::operator()(const Profile& profile) const {
  switch (kind) {
    case RuleKind::kBorda: return maximal_borda(profile);
    case RuleKind::kRandomDictatorship: return pplearn::random_dictatorship(profile);
    default: return (*this)(induce_preference(profile));
  }
}

Policy Rule::operator()(const PreferenceMatrix& p) const {
  switch (kind) {
    case RuleKind::kBorda: return maximal_borda(p);
    case RuleKind::kMaximalLotteries: return pplearn::maximal_lotteries(p, 1e-7).policy;
    case RuleKind::kRandomDictatorship:
      throw PreconditionError("random dictatorship needs the profile, not just its preference matrix");
    case RuleKind::kFStar: return f_star(p);
    case RuleKind::kFBeta: return f_beta(p, beta);
    case RuleKind::kFInfinity: return f_infinity(p);
  }
  throw PreconditionError("unknown rule");
}

Policy Rule::evaluate(const PreferenceMatrix& p, std::span<const double> shares) const {
  if (kind == RuleKind::kRandomDictatorship) {
    return Policy::normalized(std::vector<double>(shares.begin(), shares.end()));
  }
  return (*this)(p);
}

}  // namespace pplearn
