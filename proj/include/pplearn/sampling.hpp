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

// Pairwise-comparison data: sampling from a preference matrix, empirical
// estimation, the random-ranking population model and ranking ingestion.

#ifndef PPLEARN_SAMPLING_HPP_
#define PPLEARN_SAMPLING_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pplearn/core.hpp"

namespace pplearn {

struct Comparison {
  int winner = 0;
  int loser = 0;
  friend bool operator==(const Comparison&, const Comparison&) = default;
};

struct ComparisonDataset {
  int m = 0;
  std::uint64_t seed = 0;
  std::vector<Comparison> records;
  friend bool operator==(const ComparisonDataset&, const ComparisonDataset&) = default;
};

// n[i][j] = number of records with winner i and loser j.
class CountMatrix {
 public:
  explicit CountMatrix(int m) : m_(m), n_(static_cast<std::size_t>(m) * m, 0) {}
  static CountMatrix from(const ComparisonDataset& d);

  int m() const { return m_; }
  long operator()(int i, int j) const { return n_[i * m_ + j]; }
  long& operator()(int i, int j) { return n_[i * m_ + j]; }
  long total() const;

 private:
  int m_;
  std::vector<long> n_;
};

// Each record: an unordered pair {i, j} uniformly at random, then i wins with
// probability p(i, j). Throws PreconditionError for M < 2 or n < 0.
ComparisonDataset sample_comparisons(const PreferenceMatrix& p, long n, std::uint64_t seed);

// P(i, j) = N(i, j) / (N(i, j) + N(j, i)), or 1/2 for unobserved pairs.
PreferenceMatrix estimate_preference(const CountMatrix& counts);
PreferenceMatrix estimate_preference(const ComparisonDataset& d);

// Latent rewards r ~ N(0, 1) per alternative; evaluator e ranks by
// r + noise_scale * N(0, 1) (descending, ties to the lower index). Weights
// are counts / n_evaluators. The stream draws the M base rewards first, then
// M noise values per evaluator in order.
Profile random_ranking_profile(int m, int n_evaluators, std::uint64_t seed,
                               double noise_scale = 1.0);

enum class RankingFormat { kCsvRankings, kMovieLensRatings };

RankingFormat parse_ranking_format(const std::string& name);

struct IngestedProfile {
  Profile profile;
  // labels[i] is the external ID of alternative i.
  std::vector<std::string> labels;
  int evaluators = 0;
};

struct IngestOptions {
  RankingFormat format = RankingFormat::kCsvRankings;
  int top = 20;  // movielens-ratings: how many of the most-rated movies
};

// csv-rankings: one evaluator per line, comma-separated IDs best first.
// Alternatives are numbered in the order they appear on the first data
// line; blank lines and lines starting with '#' are skipped.
//
// movielens-ratings: lines "UserID::MovieID::Rating::Timestamp". Keeps the
// `top` movies with the most ratings (count ties go to the lower movie ID),
// numbered by ascending movie ID, and the users who rated all of them. A
// user's ranking sorts by rating (higher first), then earlier timestamp,
// then lower movie ID.
//
// Throws ParseError carrying the 1-based line number on malformed input.
IngestedProfile ingest_rankings(const std::string& path, const IngestOptions& options = {});
IngestedProfile ingest_rankings_text(const std::string& text, const IngestOptions& options = {});

}  // namespace pplearn

#endif  // PPLEARN_SAMPLING_HPP_
