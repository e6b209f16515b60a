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

#include "pplearn/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pplearn/error.hpp"
#include "pplearn/kernels.hpp"

namespace pplearn {

Ranking::Ranking(std::vector<int> order) : order_(std::move(order)) {
  const int m = static_cast<int>(order_.size());
  if (m == 0) throw ValidationError("ranking must contain at least one alternative");
  position_.assign(m, 0);
  for (int k = 0; k < m; ++k) {
    const int alt = order_[k];
    if (alt < 0 || alt >= m) {
      throw ValidationError("ranking entry " + std::to_string(alt) +
                            " out of range for M=" + std::to_string(m));
    }
    if (position_[alt] != 0) {
      throw ValidationError("alternative " + std::to_string(alt) +
                            " appears twice in ranking");
    }
    position_[alt] = k + 1;
  }
}

Ranking Ranking::identity(int m) {
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  return Ranking(std::move(order));
}

Ranking Ranking::with_adjacent_swap(int k) const {
  if (k < 0 || k + 1 >= size()) throw PreconditionError("adjacent swap index out of range");
  std::vector<int> order = order_;
  std::swap(order[k], order[k + 1]);
  return Ranking(std::move(order));
}

std::string Ranking::to_string() const {
  std::ostringstream out;
  for (int k = 0; k < size(); ++k) {
    if (k > 0) out << '>';
    out << order_[k];
  }
  return out.str();
}

std::vector<Ranking> enumerate_rankings(int m) {
  if (m < 1 || m > kMaxEnumerableAlternatives) {
    throw SizeError("ranking enumeration supports 1 <= M <= " +
                    std::to_string(kMaxEnumerableAlternatives));
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Ranking> out;
  do {
    out.emplace_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Profile

namespace {

std::map<Ranking, double> aggregate(int m, std::span<const Profile::Entry> entries) {
  if (m < 1) throw ValidationError("profile needs M >= 1");
  std::map<Ranking, double> weights;
  for (const auto& [ranking, w] : entries) {
    if (ranking.size() != m) {
      throw ValidationError("ranking " + ranking.to_string() + " has size " +
                            std::to_string(ranking.size()) + ", expected " +
                            std::to_string(m));
    }
    if (!std::isfinite(w) || w < 0.0) {
      throw ValidationError("profile weight must be finite and non-negative");
    }
    if (w > 0.0) weights[ranking] += w;
  }
  return weights;
}

double total_weight(const std::map<Ranking, double>& weights) {
  double total = 0.0;
  for (const auto& [r, w] : weights) total += w;
  return total;
}

}  // namespace

Profile::Profile(int m, std::map<Ranking, double> weights)
    : m_(m), weights_(std::move(weights)) {
  const double total = total_weight(weights_);
  if (std::abs(total - 1.0) > kWeightTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "profile weights sum to " << total << ", expected 1";
    throw ValidationError(msg.str());
  }
}

Profile::Profile(int m, std::span<const Entry> entries)
    : Profile(m, aggregate(m, entries)) {}

Profile Profile::renormalized(int m, std::span<const Entry> entries) {
  auto weights = aggregate(m, entries);
  const double total = total_weight(weights);
  if (!(total > 0.0)) throw ValidationError("cannot renormalize a profile with zero mass");
  for (auto& [r, w] : weights) w /= total;
  return Profile(m, std::move(weights));
}

Profile Profile::single(const Ranking& r) {
  return Profile(r.size(), {{r, 1.0}});
}

Profile Profile::uniform(int m) {
  auto all = enumerate_rankings(m);
  const double w = 1.0 / static_cast<double>(all.size());
  std::vector<Entry> entries;
  entries.reserve(all.size());
  for (auto& r : all) entries.emplace_back(std::move(r), w);
  return renormalized(m, entries);
}

double Profile::weight(const Ranking& r) const {
  auto it = weights_.find(r);
  return it == weights_.end() ? 0.0 : it->second;
}

std::vector<Profile::Entry> Profile::entries() const {
  return {weights_.begin(), weights_.end()};
}

Profile Profile::mix(const Profile& other, double lambda) const {
  if (other.m_ != m_) throw ValidationError("cannot mix profiles of different M");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw PreconditionError("mixture weight outside [0,1]");
  std::vector<Entry> entries;
  for (const auto& [r, w] : weights_) entries.emplace_back(r, lambda * w);
  for (const auto& [r, w] : other.weights_) entries.emplace_back(r, (1.0 - lambda) * w);
  return Profile(m_, entries);
}

// ---------------------------------------------------------------------------
// PreferenceMatrix

PreferenceMatrix::PreferenceMatrix(int m) : m_(m), p_(static_cast<std::size_t>(m) * m, 0.5) {
  if (m < 1) throw ValidationError("preference matrix needs M >= 1");
}

PreferenceMatrix::PreferenceMatrix(int m, std::vector<double> row_major)
    : m_(m), p_(std::move(row_major)) {
  if (m < 1) throw ValidationError("preference matrix needs M >= 1");
  if (p_.size() != static_cast<std::size_t>(m) * m) {
    throw ValidationError("preference matrix data has wrong size");
  }
}

PreferenceMatrix PreferenceMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const int m = static_cast<int>(rows.size());
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(m) * m);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != m) throw ValidationError("preference matrix must be square");
    data.insert(data.end(), row.begin(), row.end());
  }
  return PreferenceMatrix(m, std::move(data));
}

void PreferenceMatrix::set_pair(int i, int j, double v) {
  (*this)(i, j) = v;
  (*this)(j, i) = 1.0 - v;
}

std::vector<std::vector<double>> PreferenceMatrix::rows() const {
  std::vector<std::vector<double>> out(m_);
  for (int i = 0; i < m_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

// ---------------------------------------------------------------------------
// Policy

Policy::Policy(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw ValidationError("policy must have at least one entry");
  double total = 0.0;
  for (double q : probs_) {
    if (!std::isfinite(q) || q < 0.0) throw ValidationError("policy entries must be finite and >= 0");
    total += q;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw ValidationError("policy probabilities do not sum to 1");
  }
}

Policy Policy::normalized(std::vector<double> weights) {
  double total = 0.0;
  for (double q : weights) total += q;
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw PreconditionError("cannot normalize non-positive weights into a policy");
  }
  for (double& q : weights) q /= total;
  return Policy(std::move(weights));
}

Policy Policy::one_hot(int m, int index) {
  std::vector<double> probs(m, 0.0);
  probs.at(index) = 1.0;
  return Policy(std::move(probs));
}

Policy Policy::uniform(int m) {
  return Policy::normalized(std::vector<double>(m, 1.0));
}

// ---------------------------------------------------------------------------
// Induced preferences

namespace {

void accumulate_ranking(const Ranking& r, double w, std::vector<double>& rank,
                        std::span<double> p, int m) {
  const auto& k = kernels::active();
  for (int a = 0; a < m; ++a) rank[a] = static_cast<double>(r.position(a));
  for (int i = 0; i < m; ++i) k.accumulate_beaten(rank.data(), rank[i], w, p.data() + i * m, m);
}

PreferenceMatrix accumulate(int m, const std::map<Ranking, double>& weights, double scale) {
  PreferenceMatrix p(m, std::vector<double>(static_cast<std::size_t>(m) * m, 0.0));
  std::vector<double> rank(m);
  for (const auto& [r, w] : weights) accumulate_ranking(r, w * scale, rank, p.mutable_data(), m);
  for (int i = 0; i < m; ++i) p(i, i) = 0.5;
  return p;
}

}  // namespace

PreferenceMatrix induce_preference(const Profile& profile) {
  return accumulate(profile.m(), profile.weights(), 1.0);
}

PreferenceMatrix ranking_preference(const Ranking& r) {
  const int m = r.size();
  PreferenceMatrix p(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j) p(i, j) = r.prefers(i, j) ? 1.0 : 0.0;
    }
  }
  return p;
}

std::vector<double> group_shares(const Profile& profile) {
  std::vector<double> shares(profile.m(), 0.0);
  for (const auto& [r, w] : profile.weights()) shares[r.top()] += w;
  return shares;
}

GroupDecomposition decompose_groups(const Profile& profile) {
  const int m = profile.m();
  GroupDecomposition out;
  out.shares = group_shares(profile);
  out.group_prefs.resize(m);
  std::vector<std::map<Ranking, double>> groups(m);
  for (const auto& [r, w] : profile.weights()) groups[r.top()].emplace(r, w);
  for (int k = 0; k < m; ++k) {
    if (out.shares[k] > 0.0) out.group_prefs[k] = accumulate(m, groups[k], 1.0 / out.shares[k]);
  }
  return out;
}

PreferenceMatrix GroupDecomposition::reconstruct() const {
  const int m = static_cast<int>(shares.size());
  PreferenceMatrix p(m, std::vector<double>(static_cast<std::size_t>(m) * m, 0.0));
  for (int k = 0; k < m; ++k) {
    if (!group_prefs[k]) continue;
    kernels::active().axpy(shares[k], group_prefs[k]->data().data(),
                           p.mutable_data().data(), m * m);
  }
  for (int i = 0; i < m; ++i) p(i, i) = 0.5;
  return p;
}

// ---------------------------------------------------------------------------
// Validation

PreferenceDiagnostics validate_preference(const PreferenceMatrix& p) {
  using Kind = PreferenceViolation::Kind;
  PreferenceDiagnostics d;
  const int m = p.m();
  for (int i = 0; i < m; ++i) {
    const double diag = std::abs(p(i, i) - 0.5);
    d.max_diagonal_deviation = std::max(d.max_diagonal_deviation, diag);
    if (diag > kSkewTolerance) d.violations.push_back({Kind::kDiagonal, i, i, diag});
    for (int j = 0; j < m; ++j) {
      const double v = p(i, j);
      const double range = !std::isfinite(v) ? 1.0 : std::max({0.0, -v, v - 1.0});
      d.max_range_deviation = std::max(d.max_range_deviation, range);
      if (range > kSkewTolerance) d.violations.push_back({Kind::kOutOfRange, i, j, range});
      if (j > i) {
        const double skew = std::abs(v + p(j, i) - 1.0);
        d.max_skew_deviation = std::max(d.max_skew_deviation, skew);
        if (skew > kSkewTolerance) d.violations.push_back({Kind::kSkewSymmetry, i, j, skew});
      }
    }
  }
  return d;
}

void require_skew_symmetric(const PreferenceMatrix& p) {
  const auto d = validate_preference(p);
  for (const auto& v : d.violations) {
    if (v.kind == PreferenceViolation::Kind::kDiagonal) continue;
    std::ostringstream msg;
    msg << (v.kind == PreferenceViolation::Kind::kSkewSymmetry ? "skew-symmetry" : "range")
        << " violation at (" << v.i << ", " << v.j << ") of magnitude " << v.magnitude;
    throw ValidationError(msg.str());
  }
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("size mismatch");
  double out = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) out = std::max(out, std::abs(a[k] - b[k]));
  return out;
}

}  // namespace pplearn
