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

#include "pplearn/manipulation.hpp"

#include <algorithm>
#include <cmath>

#include "pplearn/kernels.hpp"
#include "pplearn/random.hpp"

namespace pplearn {

Profile manipulate_profile(const Profile& profile, int k, const Profile& sub) {
  if (sub.m() != profile.m()) throw ValidationError("sub-profile has a different M");
  if (k < 0 || k >= profile.m()) throw PreconditionError("group index out of range");
  const double wk = group_shares(profile)[k];
  if (!(wk > 0.0)) throw PreconditionError("group " + std::to_string(k) + " is empty");
  std::vector<Profile::Entry> entries;
  for (const auto& [r, w] : profile.weights()) {
    if (r.top() != k) entries.emplace_back(r, w);
  }
  for (const auto& [r, w] : sub.weights()) entries.emplace_back(r, wk * w);
  return Profile(profile.m(), entries);
}

namespace {

constexpr double kTieTolerance = 1e-12;

struct Candidate {
  std::vector<Ranking> rankings;
  std::vector<int> parts;  // grid units, summing to `grid`
};

class Searcher {
 public:
  Searcher(const Rule& rule, const Profile& profile, int k, const SearchOptions& opt)
      : rule_(rule), profile_(profile), k_(k), opt_(opt), m_(profile.m()) {
    if (k < 0 || k >= m_) throw PreconditionError("group index out of range");
    if (opt.grid < 1 || opt.max_support < 1) throw PreconditionError("bad search grid");
    const GroupDecomposition groups = decompose_groups(profile);
    shares_ = groups.shares;
    wk_ = shares_[k];
    if (!(wk_ > 0.0)) throw PreconditionError("group " + std::to_string(k) + " is empty");
    honest_matrix_ = induce_preference(profile);
    base_.assign(honest_matrix_.data().begin(), honest_matrix_.data().end());
    kernels::active().axpy(-wk_, groups.group_prefs[k]->data().data(), base_.data(), m_ * m_);
    base_shares_ = shares_;
    base_shares_[k] = 0.0;
    matrix_ = PreferenceMatrix(m_);
  }

  ManipulationResult run() {
    const Policy honest = rule_.evaluate(honest_matrix_, shares_);
    honest_value_ = honest[k_];
    best_value_ = honest_value_;
    best_top_mass_ = 1.0;
    best_is_truthful_ = true;

    if (opt_.mode == SearchMode::kExhaustive) {
      if (m_ > kMaxExhaustiveAlternatives) {
        throw SizeError("exhaustive manipulation search is limited to M <= " +
                        std::to_string(kMaxExhaustiveAlternatives));
      }
      exhaustive();
    } else {
      sampled();
    }

    const double u = u_vector(honest_matrix_)[k_];
    ManipulationResult out{
        .group = k_,
        .share = wk_,
        .u = u,
        .honest_policy_value = honest_value_,
        .best_manipulated_value = best_value_,
        .bound_theorem = u / (u + 1.0 - wk_),
        .bound_affine = 0.5 * (wk_ + 1.0),
        .best_subprofile = best_is_truthful_ ? truthful_subprofile() : to_profile(best_),
        .candidates = evaluated_,
        .budget_exhausted = exhausted_,
    };
    return out;
  }

 private:
  bool out_of_budget() {
    if (opt_.budget > 0 && evaluated_ >= opt_.budget) {
      exhausted_ = true;
      return true;
    }
    return false;
  }

  void score(const Candidate& c, const std::vector<const PreferenceMatrix*>& mats) {
    const auto& kern = kernels::active();
    std::span<double> out = matrix_.mutable_data();
    std::copy(base_.begin(), base_.end(), out.begin());
    std::vector<double> shares = base_shares_;
    double top_mass = 0.0;
    for (std::size_t a = 0; a < c.rankings.size(); ++a) {
      const double lambda = static_cast<double>(c.parts[a]) / opt_.grid;
      kern.axpy(wk_ * lambda, mats[a]->data().data(), out.data(), m_ * m_);
      shares[c.rankings[a].top()] += wk_ * lambda;
      if (c.rankings[a].top() == k_) top_mass += lambda;
    }
    // Subtracting w_k P_k leaves rounding residue around 0 and 1.
    for (double& x : out) x = std::clamp(x, 0.0, 1.0);
    ++evaluated_;
    const double value = rule_.evaluate(matrix_, shares)[k_];
    if (value > best_value_ + kTieTolerance ||
        (value >= best_value_ - kTieTolerance && top_mass > best_top_mass_ + kTieTolerance)) {
      best_value_ = value;
      best_top_mass_ = top_mass;
      best_ = c;
      best_is_truthful_ = false;
    }
  }

  void exhaustive() {
    const std::vector<Ranking> all = enumerate_rankings(m_);
    std::vector<PreferenceMatrix> mats;
    mats.reserve(all.size());
    for (const auto& r : all) mats.push_back(ranking_preference(r));
    const int n = static_cast<int>(all.size());
    const int g = opt_.grid;

    for (int i = 0; i < n; ++i) {
      if (out_of_budget()) return;
      score({{all[i]}, {g}}, {&mats[i]});
    }
    if (opt_.max_support < 2) return;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int a = 1; a < g; ++a) {
          if (out_of_budget()) return;
          score({{all[i], all[j]}, {a, g - a}}, {&mats[i], &mats[j]});
        }
      }
    }
    if (opt_.max_support < 3) return;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int l = j + 1; l < n; ++l) {
          for (int a = 1; a < g; ++a) {
            for (int b = 1; a + b < g; ++b) {
              if (out_of_budget()) return;
              score({{all[i], all[j], all[l]}, {a, b, g - a - b}}, {&mats[i], &mats[j], &mats[l]});
            }
          }
        }
      }
    }
  }

  void sampled() {
    const long budget = opt_.budget > 0 ? opt_.budget : 1000;
    Rng rng(opt_.seed);
    const int g = opt_.grid;
    const int max_support = std::min(opt_.max_support, g);
    for (long t = 0; t < budget; ++t) {
      Candidate c;
      const int support = 1 + static_cast<int>(rng.below(max_support));
      std::vector<PreferenceMatrix> mats;
      for (int s = 0; s < support; ++s) {
        std::vector<int> order = rng.permutation(m_);
        if (rng.bernoulli(0.5)) {
          auto it = std::find(order.begin(), order.end(), k_);
          std::rotate(order.begin(), it, it + 1);
        }
        c.rankings.emplace_back(std::move(order));
        mats.push_back(ranking_preference(c.rankings.back()));
      }
      // Random composition of `g` into `support` positive parts.
      std::vector<int> cuts;
      while (static_cast<int>(cuts.size()) < support - 1) {
        const int cut = 1 + static_cast<int>(rng.below(g - 1));
        if (std::find(cuts.begin(), cuts.end(), cut) == cuts.end()) cuts.push_back(cut);
      }
      std::sort(cuts.begin(), cuts.end());
      int prev = 0;
      for (int cut : cuts) {
        c.parts.push_back(cut - prev);
        prev = cut;
      }
      c.parts.push_back(g - prev);
      std::vector<const PreferenceMatrix*> ptrs;
      for (const auto& mat : mats) ptrs.push_back(&mat);
      score(c, ptrs);
    }
    exhausted_ = true;
  }

  Profile to_profile(const Candidate& c) const {
    std::vector<Profile::Entry> entries;
    for (std::size_t a = 0; a < c.rankings.size(); ++a) {
      entries.emplace_back(c.rankings[a], static_cast<double>(c.parts[a]) / opt_.grid);
    }
    return Profile::renormalized(m_, entries);
  }

  Profile truthful_subprofile() const {
    std::vector<Profile::Entry> entries;
    for (const auto& [r, w] : profile_.weights()) {
      if (r.top() == k_) entries.emplace_back(r, w);
    }
    return Profile::renormalized(m_, entries);
  }

  const Rule& rule_;
  const Profile& profile_;
  int k_;
  SearchOptions opt_;
  int m_;
  double wk_ = 0.0;
  std::vector<double> shares_;
  std::vector<double> base_shares_;
  std::vector<double> base_;
  PreferenceMatrix honest_matrix_{1};
  PreferenceMatrix matrix_{1};

  double honest_value_ = 0.0;
  double best_value_ = 0.0;
  double best_top_mass_ = 0.0;
  bool best_is_truthful_ = true;
  Candidate best_;
  long evaluated_ = 0;
  bool exhausted_ = false;
};

}  // namespace

ManipulationResult best_response(const Rule& rule, const Profile& profile, int k,
                                 const SearchOptions& options) {
  return Searcher(rule, profile, k, options).run();
}

std::vector<ManipulationResult> best_responses(const Rule& rule, const Profile& profile,
                                               const SearchOptions& options) {
  const auto shares = group_shares(profile);
  std::vector<ManipulationResult> out;
  for (int k = 0; k < profile.m(); ++k) {
    if (shares[k] > 0.0) {
      SearchOptions opt = options;
      opt.seed = derive_seed(options.seed, static_cast<std::uint64_t>(k));
      out.push_back(best_response(rule, profile, k, opt));
    }
  }
  return out;
}

std::vector<double> pbm_gain(const Rule& rule, const Profile& profile, const SearchOptions& options) {
  std::vector<double> gains(profile.m(), 0.0);
  for (const auto& r : best_responses(rule, profile, options)) {
    gains[r.group] = r.best_manipulated_value - r.honest_policy_value;
  }
  return gains;
}

}  // namespace pplearn
