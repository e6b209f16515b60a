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

#include "pplearn/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "pplearn/error.hpp"
#include "pplearn/random.hpp"

namespace pplearn {

CountMatrix CountMatrix::from(const ComparisonDataset& d) {
  CountMatrix c(d.m);
  for (const auto& r : d.records) {
    if (r.winner < 0 || r.winner >= d.m || r.loser < 0 || r.loser >= d.m || r.winner == r.loser) {
      throw ValidationError("comparison record out of range");
    }
    ++c(r.winner, r.loser);
  }
  return c;
}

long CountMatrix::total() const { return std::accumulate(n_.begin(), n_.end(), 0L); }

ComparisonDataset sample_comparisons(const PreferenceMatrix& p, long n, std::uint64_t seed) {
  const int m = p.m();
  if (m < 2) throw PreconditionError("sampling needs at least two alternatives");
  if (n < 0) throw PreconditionError("sample count must be nonnegative");
  ComparisonDataset d;
  d.m = m;
  d.seed = seed;
  d.records.reserve(n);
  Rng rng(seed);
  const std::uint64_t pairs = static_cast<std::uint64_t>(m) * (m - 1) / 2;
  // Flattened pair index -> (i, j) with i < j.
  std::vector<std::pair<int, int>> index;
  index.reserve(pairs);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) index.emplace_back(i, j);
  }
  for (long t = 0; t < n; ++t) {
    const auto [i, j] = index[rng.below(pairs)];
    if (rng.uniform() < p(i, j)) {
      d.records.push_back({i, j});
    } else {
      d.records.push_back({j, i});
    }
  }
  return d;
}

PreferenceMatrix estimate_preference(const CountMatrix& counts) {
  const int m = counts.m();
  PreferenceMatrix p(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const long total = counts(i, j) + counts(j, i);
      if (total > 0) p.set_pair(i, j, static_cast<double>(counts(i, j)) / total);
    }
  }
  return p;
}

PreferenceMatrix estimate_preference(const ComparisonDataset& d) {
  return estimate_preference(CountMatrix::from(d));
}

Profile random_ranking_profile(int m, int n_evaluators, std::uint64_t seed, double noise_scale) {
  if (m < 2) throw PreconditionError("random-ranking model needs M >= 2");
  if (n_evaluators < 1) throw PreconditionError("random-ranking model needs an evaluator");
  Rng rng(seed);
  std::vector<double> base(m);
  for (double& r : base) r = rng.normal();

  std::map<Ranking, long> counts;
  std::vector<double> score(m);
  std::vector<int> order(m);
  for (int e = 0; e < n_evaluators; ++e) {
    for (int i = 0; i < m; ++i) score[i] = base[i] + noise_scale * rng.normal();
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return score[a] > score[b]; });
    ++counts[Ranking(order)];
  }
  std::vector<Profile::Entry> entries;
  for (const auto& [r, c] : counts) {
    entries.emplace_back(r, static_cast<double>(c) / n_evaluators);
  }
  return Profile::renormalized(m, entries);
}

RankingFormat parse_ranking_format(const std::string& name) {
  if (name == "csv-rankings") return RankingFormat::kCsvRankings;
  if (name == "movielens-ratings") return RankingFormat::kMovieLensRatings;
  throw ValidationError("unknown ranking format '" + name + "'");
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line, std::string_view sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(trim(std::string_view(line).substr(start)));
      return out;
    }
    out.push_back(trim(std::string_view(line).substr(start, pos - start)));
    start = pos + sep.size();
  }
}

IngestedProfile aggregate(int m, std::vector<std::string> labels,
                          const std::vector<std::vector<int>>& rankings) {
  if (rankings.empty()) throw ParseError("no rankings in input");
  std::map<Ranking, long> counts;
  for (const auto& r : rankings) ++counts[Ranking(r)];
  std::vector<Profile::Entry> entries;
  const double n = static_cast<double>(rankings.size());
  for (const auto& [r, c] : counts) entries.emplace_back(r, c / n);
  return {Profile::renormalized(m, entries), std::move(labels), static_cast<int>(rankings.size())};
}

IngestedProfile ingest_csv(std::istream& in) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, int> index;
  std::vector<std::vector<int>> rankings;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto ids = split(t, ",");
    if (labels.empty()) {
      for (const auto& id : ids) {
        if (id.empty()) throw ParseError("empty alternative ID", line_no);
        if (!index.emplace(id, static_cast<int>(labels.size())).second) {
          throw ParseError("duplicate alternative '" + id + "'", line_no);
        }
        labels.push_back(id);
      }
      if (labels.size() < 2) throw ParseError("a ranking needs at least two alternatives", line_no);
    }
    if (ids.size() != labels.size()) {
      throw ParseError("expected " + std::to_string(labels.size()) + " alternatives, got " +
                           std::to_string(ids.size()),
                       line_no);
    }
    std::vector<int> order;
    std::vector<bool> seen(labels.size(), false);
    for (const auto& id : ids) {
      const auto it = index.find(id);
      if (it == index.end()) throw ParseError("unknown alternative '" + id + "'", line_no);
      if (seen[it->second]) throw ParseError("duplicate alternative '" + id + "'", line_no);
      seen[it->second] = true;
      order.push_back(it->second);
    }
    rankings.push_back(std::move(order));
  }
  const int m = static_cast<int>(labels.size());
  return aggregate(m, std::move(labels), rankings);
}

template <typename T>
T parse_number(const std::string& s, int line_no, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string("bad ") + what + " '" + s + "'", line_no);
  }
  return value;
}

struct Rating {
  long movie;
  double rating;
  long timestamp;
};

IngestedProfile ingest_movielens(std::istream& in, int top) {
  if (top < 2) throw PreconditionError("need at least two movies");
  std::map<long, std::vector<Rating>> by_user;
  std::map<long, long> movie_counts;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto f = split(t, "::");
    if (f.size() != 4) throw ParseError("expected UserID::MovieID::Rating::Timestamp", line_no);
    const long user = parse_number<long>(f[0], line_no, "user ID");
    const long movie = parse_number<long>(f[1], line_no, "movie ID");
    const double rating = parse_number<double>(f[2], line_no, "rating");
    const long ts = parse_number<long>(f[3], line_no, "timestamp");
    auto& list = by_user[user];
    for (const auto& r : list) {
      if (r.movie == movie) {
        throw ParseError("user " + f[0] + " rates movie " + f[1] + " twice", line_no);
      }
    }
    list.push_back({movie, rating, ts});
    ++movie_counts[movie];
  }
  if (static_cast<int>(movie_counts.size()) < top) {
    throw PreconditionError("only " + std::to_string(movie_counts.size()) + " movies, need " +
                            std::to_string(top));
  }
  std::vector<std::pair<long, long>> popular(movie_counts.begin(), movie_counts.end());
  std::stable_sort(popular.begin(), popular.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  popular.resize(top);
  std::vector<long> movies;
  for (const auto& [id, c] : popular) movies.push_back(id);
  std::sort(movies.begin(), movies.end());
  std::map<long, int> index;
  std::vector<std::string> labels;
  for (long id : movies) {
    index.emplace(id, static_cast<int>(labels.size()));
    labels.push_back(std::to_string(id));
  }

  std::vector<std::vector<int>> rankings;
  for (const auto& [user, list] : by_user) {
    std::vector<Rating> kept;
    for (const auto& r : list) {
      if (index.count(r.movie)) kept.push_back(r);
    }
    if (static_cast<int>(kept.size()) != top) continue;
    std::sort(kept.begin(), kept.end(), [](const Rating& a, const Rating& b) {
      if (a.rating != b.rating) return a.rating > b.rating;
      if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
      return a.movie < b.movie;
    });
    std::vector<int> order;
    for (const auto& r : kept) order.push_back(index.at(r.movie));
    rankings.push_back(std::move(order));
  }
  if (rankings.empty()) throw PreconditionError("no user rated all selected movies");
  return aggregate(top, std::move(labels), rankings);
}

IngestedProfile ingest_stream(std::istream& in, const IngestOptions& options) {
  switch (options.format) {
    case RankingFormat::kCsvRankings: return ingest_csv(in);
    case RankingFormat::kMovieLensRatings: return ingest_movielens(in, options.top);
  }
  throw ValidationError("unknown ranking format");
}

}  // namespace

IngestedProfile ingest_rankings(const std::string& path, const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return ingest_stream(in, options);
}

IngestedProfile ingest_rankings_text(const std::string& text, const IngestOptions& options) {
  std::istringstream in(text);
  return ingest_stream(in, options);
}

}  // namespace pplearn
