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

// JSON and CSV formats. Numbers are written in shortest round-trip form, so
// both read back bit-exact.
//
//   Profile           {"m": 3, "rankings": [{"order": [0, 1, 2], "weight": 0.5}, ...]}
//   PreferenceMatrix  {"m": 3, "p": [[...], [...], [...]]}
//   Policy            {"m": 3, "probs": [...], "rule": "fstar"}
//   shares            {"probs": [...]} or a bare array
//   ComparisonDataset CSV  winner,loser
//   EpisodeReport CSV      episode,rule,beta,seed,n_samples,win_rate,ppa_level,pbm_gain,sum_u,policy
//                          (policy: probabilities joined by ';')
//   BoundRow CSV           m,delta,seeds,inv_sum_u,alpha,max_share

#ifndef PPLEARN_IO_HPP_
#define PPLEARN_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "pplearn/axioms.hpp"
#include "pplearn/core.hpp"
#include "pplearn/experiments.hpp"
#include "pplearn/feasibility.hpp"
#include "pplearn/manipulation.hpp"
#include "pplearn/sampling.hpp"

namespace pplearn::io {

using Json = nlohmann::json;

Json to_json(const Ranking& r);
Json to_json(const Profile& profile);
Json to_json(const PreferenceMatrix& p);
Json to_json(const Policy& policy);
Json to_json(const FeasibilityReport& report);
Json to_json(const AxiomVerdict& verdict);
Json to_json(const ManipulationResult& result);
Json to_json(const std::vector<ManipulationResult>& results);
Json to_json(const EpisodeReport& report);

// Throw ParseError on missing fields or wrong types and ValidationError when
// the values break an invariant.
Ranking ranking_from_json(const Json& j);
Profile profile_from_json(const Json& j);
PreferenceMatrix preference_from_json(const Json& j);
Policy policy_from_json(const Json& j);
std::vector<double> shares_from_json(const Json& j);
ManipulationResult manipulation_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

void write_comparisons_csv(std::ostream& out, const ComparisonDataset& d);
// The header must read "winner,loser"; M is taken from `m` when positive,
// otherwise 1 + the largest index seen.
ComparisonDataset read_comparisons_csv(std::istream& in, int m = 0, std::uint64_t seed = 0);

void write_episodes_csv(std::ostream& out, const std::vector<EpisodeReport>& reports);
std::vector<EpisodeReport> read_episodes_csv(std::istream& in);

void write_bound_table_csv(std::ostream& out, const std::vector<BoundRow>& rows);
std::vector<BoundRow> read_bound_table_csv(std::istream& in);

}  // namespace pplearn::io

#endif  // PPLEARN_IO_HPP_
