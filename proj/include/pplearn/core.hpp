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

// Domain types shared by the whole library: rankings, profiles (distributions
// over rankings), pairwise preference matrices and policies. Alternatives are
// always referred to by 0-based index; labels only exist at the I/O boundary.

#ifndef PPLEARN_CORE_HPP_
#define PPLEARN_CORE_HPP_

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pplearn {

// Tolerance on probability vectors summing to one.
inline constexpr double kWeightTolerance = 1e-9;
// Tolerance on p[i][j] + p[j][i] == 1.
inline constexpr double kSkewTolerance = 1e-9;
// Largest M for which all M! rankings may be enumerated.
inline constexpr int kMaxEnumerableAlternatives = 8;

// A strict total order over M alternatives, best first.
class Ranking {
 public:
  // `order[k]` is the alternative placed at rank k+1. Throws ValidationError
  // unless `order` is a permutation of {0..M-1}.
  explicit Ranking(std::vector<int> order);

  static Ranking identity(int m);

  int size() const { return static_cast<int>(order_.size()); }
  std::span<const int> order() const { return order_; }
  // 1 = best.
  int position(int alternative) const { return position_[alternative]; }
  int top() const { return order_.front(); }
  int at(int k) const { return order_[k]; }
  bool prefers(int a, int b) const { return position_[a] < position_[b]; }

  // Swaps the alternatives at ranks k and k+1 (0-based k in [0, M-2]).
  Ranking with_adjacent_swap(int k) const;

  std::string to_string() const;

  friend bool operator==(const Ranking& a, const Ranking& b) {
    return a.order_ == b.order_;
  }
  friend std::strong_ordering operator<=>(const Ranking& a, const Ranking& b) {
    return a.order_ <=> b.order_;
  }

 private:
  std::vector<int> order_;
  std::vector<int> position_;
};

// All M! rankings in lexicographic order of `order()`. M <= 8.
std::vector<Ranking> enumerate_rankings(int m);

// A probability distribution over rankings. Zero-weight entries are dropped.
class Profile {
 public:
  using Entry = std::pair<Ranking, double>;

  // Aggregates duplicate rankings. Throws ValidationError on negative or
  // non-finite weights, mixed sizes, or a total outside 1 +- 1e-9.
  Profile(int m, std::span<const Entry> entries);
  Profile(int m, std::initializer_list<Entry> entries)
      : Profile(m, std::span<const Entry>(entries.begin(), entries.size())) {}

  // Same as the constructor but rescales the total to one first. The only
  // place where weights are renormalized.
  static Profile renormalized(int m, std::span<const Entry> entries);
  static Profile single(const Ranking& r);
  // Uniform over all M! rankings (M <= 8).
  static Profile uniform(int m);

  int m() const { return m_; }
  const std::map<Ranking, double>& weights() const { return weights_; }
  std::size_t support_size() const { return weights_.size(); }
  double weight(const Ranking& r) const;
  std::vector<Entry> entries() const;

  // lambda * this + (1 - lambda) * other.
  Profile mix(const Profile& other, double lambda) const;

  // Exact equality of M and every weight.
  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  Profile(int m, std::map<Ranking, double> weights);

  int m_;
  std::map<Ranking, double> weights_;
};

// M x M matrix of pairwise win probabilities, p(i, j) = P(y_i > y_j).
// Construction does not enforce skew-symmetry; use validate_preference or
// require_skew_symmetric.
class PreferenceMatrix {
 public:
  // All entries 1/2.
  explicit PreferenceMatrix(int m);
  PreferenceMatrix(int m, std::vector<double> row_major);
  static PreferenceMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int m() const { return m_; }
  double operator()(int i, int j) const { return p_[i * m_ + j]; }
  double& operator()(int i, int j) { return p_[i * m_ + j]; }
  // Sets p(i, j) = v and p(j, i) = 1 - v.
  void set_pair(int i, int j, double v);
  std::span<const double> row(int i) const {
    return std::span<const double>(p_).subspan(i * m_, m_);
  }
  std::span<const double> data() const { return p_; }
  std::span<double> mutable_data() { return p_; }

  std::vector<std::vector<double>> rows() const;

  friend bool operator==(const PreferenceMatrix&, const PreferenceMatrix&) = default;

 private:
  int m_;
  std::vector<double> p_;
};

// A probability distribution over M alternatives.
class Policy {
 public:
  // Throws ValidationError unless entries are >= 0 and sum to 1 +- 1e-9.
  explicit Policy(std::vector<double> probs);

  // Divides by the sum. Throws PreconditionError if the sum is not positive.
  static Policy normalized(std::vector<double> weights);
  static Policy one_hot(int m, int index);
  static Policy uniform(int m);

  int m() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  std::vector<double> probs_;
};

// Population split by top choice: shares[k] is the mass of rankings with y_k
// first; group_prefs[k] is the preference matrix of that normalized
// sub-profile, absent when shares[k] == 0.
struct GroupDecomposition {
  std::vector<double> shares;
  std::vector<std::optional<PreferenceMatrix>> group_prefs;

  // Sum_k shares[k] * group_prefs[k].
  PreferenceMatrix reconstruct() const;
};

struct PreferenceViolation {
  enum class Kind { kSkewSymmetry, kOutOfRange, kDiagonal };
  Kind kind;
  int i;
  int j;
  double magnitude;
};

struct PreferenceDiagnostics {
  std::vector<PreferenceViolation> violations;
  double max_skew_deviation = 0.0;
  double max_range_deviation = 0.0;
  double max_diagonal_deviation = 0.0;

  bool ok() const { return violations.empty(); }
};

// p[i][j] = sum_r sigma_r * 1{r(y_i) < r(y_j)}, diagonal 1/2.
PreferenceMatrix induce_preference(const Profile& profile);

// Preference matrix of a single ranking (entries in {0, 1/2, 1}).
PreferenceMatrix ranking_preference(const Ranking& r);

GroupDecomposition decompose_groups(const Profile& profile);

// Top-choice shares only (the `shares` half of decompose_groups).
std::vector<double> group_shares(const Profile& profile);

// Reports skew-symmetry, range and diagonal deviations beyond 1e-9.
PreferenceDiagnostics validate_preference(const PreferenceMatrix& p);

// Throws ValidationError if validate_preference finds skew-symmetry or range
// violations.
void require_skew_symmetric(const PreferenceMatrix& p);

// Max |a - b| over entries; sizes must match.
double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace pplearn

#endif  // PPLEARN_CORE_HPP_
