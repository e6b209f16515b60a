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

#include "pplearn/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "pplearn/error.hpp"

namespace pplearn::io {
namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw ParseError(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

template <typename T>
T get(const Json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("field '") + name + "': " + e.what());
  }
}

Json doubles(std::span<const double> xs) { return Json(std::vector<double>(xs.begin(), xs.end())); }

std::vector<std::string> split_csv(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, int line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size()) throw ParseError("bad number '" + s + "'", line);
  return v;
}

long long parse_int(const std::string& s, int line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const long long v = std::strtoll(begin, &end, 10);
  if (s.empty() || end != begin + s.size()) throw ParseError("bad integer '" + s + "'", line);
  return v;
}

std::uint64_t parse_u64(const std::string& s, int line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const unsigned long long v = std::strtoull(begin, &end, 10);
  if (s.empty() || s[0] == '-' || end != begin + s.size()) {
    throw ParseError("bad unsigned integer '" + s + "'", line);
  }
  return v;
}

void expect_header(std::istream& in, const std::string& header) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input, expected header '" + header + "'", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw ParseError("expected header '" + header + "', got '" + line + "'", 1);
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json to_json(const Ranking& r) { return Json(std::vector<int>(r.order().begin(), r.order().end())); }

Json to_json(const Profile& profile) {
  Json rankings = Json::array();
  for (const auto& [r, w] : profile.weights()) {
    rankings.push_back({{"order", to_json(r)}, {"weight", w}});
  }
  return {{"m", profile.m()}, {"rankings", rankings}};
}

Json to_json(const PreferenceMatrix& p) { return {{"m", p.m()}, {"p", p.rows()}}; }

Json to_json(const Policy& policy) { return {{"m", policy.m()}, {"probs", doubles(policy.probs())}}; }

Json to_json(const FeasibilityReport& report) {
  Json j{{"u", report.u},
         {"sum_u", report.sum_u},
         {"member", report.member},
         {"residual", report.residual}};
  if (report.witness_profile) j["witness_profile"] = to_json(*report.witness_profile);
  if (report.witness_groups) {
    Json groups = Json::array();
    for (const auto& g : *report.witness_groups) groups.push_back(to_json(g));
    j["witness_groups"] = groups;
  }
  return j;
}

Json to_json(const AxiomVerdict& v) {
  Json j{{"axiom", std::string(to_string(v.axiom))},
         {"holds", v.holds},
         {"measured", v.measured},
         {"cases_checked", v.cases_checked}};
  if (!v.note.empty()) j["note"] = v.note;
  if (v.counterexample) {
    const Counterexample& c = *v.counterexample;
    Json cj{{"alternative", c.alternative}, {"before", to_json(c.before)}};
    if (c.other >= 0) cj["other"] = c.other;
    if (c.profile) cj["profile"] = to_json(*c.profile);
    if (c.perturbed) cj["perturbed"] = to_json(*c.perturbed);
    if (c.matrix) cj["matrix"] = to_json(*c.matrix);
    if (c.after) cj["after"] = to_json(*c.after);
    j["counterexample"] = cj;
  }
  return j;
}

Json to_json(const ManipulationResult& r) {
  return {{"group", r.group},
          {"share", r.share},
          {"u", r.u},
          {"honest_policy_value", r.honest_policy_value},
          {"best_manipulated_value", r.best_manipulated_value},
          {"bound_theorem", r.bound_theorem},
          {"bound_affine", r.bound_affine},
          {"best_subprofile", to_json(r.best_subprofile)},
          {"candidates", r.candidates},
          {"budget_exhausted", r.budget_exhausted}};
}

Json to_json(const std::vector<ManipulationResult>& results) {
  Json j = Json::array();
  for (const auto& r : results) j.push_back(to_json(r));
  return j;
}

Json to_json(const EpisodeReport& r) {
  return {{"episode", r.episode},
          {"rule", r.rule.name()},
          {"beta", r.rule.beta},
          {"seed", r.seed},
          {"n_samples", r.n_samples},
          {"win_rate", r.win_rate},
          {"ppa_level", r.ppa_level},
          {"pbm_gain", r.pbm_gain},
          {"sum_u", r.sum_u},
          {"policy", r.policy}};
}

Ranking ranking_from_json(const Json& j) {
  try {
    return Ranking(j.get<std::vector<int>>());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("ranking: ") + e.what());
  }
}

Profile profile_from_json(const Json& j) {
  const int m = get<int>(j, "m");
  const Json& list = field(j, "rankings");
  if (!list.is_array()) throw ParseError("field 'rankings' must be an array");
  std::vector<Profile::Entry> entries;
  for (const Json& e : list) {
    Ranking r = ranking_from_json(field(e, "order"));
    if (r.size() != m) throw ValidationError("ranking length differs from m");
    entries.emplace_back(std::move(r), get<double>(e, "weight"));
  }
  return Profile(m, entries);
}

PreferenceMatrix preference_from_json(const Json& j) {
  const int m = get<int>(j, "m");
  const auto rows = get<std::vector<std::vector<double>>>(j, "p");
  if (static_cast<int>(rows.size()) != m) throw ValidationError("matrix has wrong row count");
  return PreferenceMatrix::from_rows(rows);
}

std::vector<double> shares_from_json(const Json& j) {
  try {
    if (j.is_array()) return j.get<std::vector<double>>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("shares: ") + e.what());
  }
  return get<std::vector<double>>(j, "probs");
}

Policy policy_from_json(const Json& j) {
  Policy p(shares_from_json(j));
  if (j.is_object() && j.contains("m") && get<int>(j, "m") != p.m()) {
    throw ValidationError("policy length differs from m");
  }
  return p;
}

ManipulationResult manipulation_from_json(const Json& j) {
  return ManipulationResult{
      .group = get<int>(j, "group"),
      .share = get<double>(j, "share"),
      .u = get<double>(j, "u"),
      .honest_policy_value = get<double>(j, "honest_policy_value"),
      .best_manipulated_value = get<double>(j, "best_manipulated_value"),
      .bound_theorem = get<double>(j, "bound_theorem"),
      .bound_affine = get<double>(j, "bound_affine"),
      .best_subprofile = profile_from_json(field(j, "best_subprofile")),
      .candidates = get<long>(j, "candidates"),
      .budget_exhausted = get<bool>(j, "budget_exhausted"),
  };
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path + "'");
}

void write_comparisons_csv(std::ostream& out, const ComparisonDataset& d) {
  out << "winner,loser\n";
  for (const auto& r : d.records) out << r.winner << ',' << r.loser << '\n';
}

ComparisonDataset read_comparisons_csv(std::istream& in, int m, std::uint64_t seed) {
  expect_header(in, "winner,loser");
  ComparisonDataset d;
  d.seed = seed;
  int max_index = -1;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv(line);
    if (cells.size() != 2) throw ParseError("expected winner,loser", line_no);
    const long long w = parse_int(cells[0], line_no);
    const long long l = parse_int(cells[1], line_no);
    if (w < 0 || l < 0 || w == l || (m > 0 && (w >= m || l >= m))) {
      throw ParseError("invalid comparison " + cells[0] + "," + cells[1], line_no);
    }
    d.records.push_back({static_cast<int>(w), static_cast<int>(l)});
    max_index = std::max<int>(max_index, static_cast<int>(std::max(w, l)));
  }
  d.m = m > 0 ? m : max_index + 1;
  return d;
}

namespace {
constexpr const char* kEpisodeHeader =
    "episode,rule,beta,seed,n_samples,win_rate,ppa_level,pbm_gain,sum_u,policy";
constexpr const char* kBoundHeader = "m,delta,seeds,inv_sum_u,alpha,max_share";
}  // namespace

void write_episodes_csv(std::ostream& out, const std::vector<EpisodeReport>& reports) {
  out << kEpisodeHeader << '\n';
  for (const auto& r : reports) {
    out << r.episode << ',' << r.rule.name() << ',' << format_double(r.rule.beta) << ',' << r.seed
        << ',' << r.n_samples << ',' << format_double(r.win_rate) << ','
        << format_double(r.ppa_level) << ',' << format_double(r.pbm_gain) << ','
        << format_double(r.sum_u) << ',';
    for (std::size_t i = 0; i < r.policy.size(); ++i) {
      if (i) out << ';';
      out << format_double(r.policy[i]);
    }
    out << '\n';
  }
}

std::vector<EpisodeReport> read_episodes_csv(std::istream& in) {
  expect_header(in, kEpisodeHeader);
  std::vector<EpisodeReport> out;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto c = split_csv(line);
    if (c.size() != 10) throw ParseError("expected 10 columns", line_no);
    EpisodeReport r;
    r.episode = static_cast<int>(parse_int(c[0], line_no));
    try {
      r.rule = Rule::parse(c[1], parse_double(c[2], line_no));
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_no);
    }
    r.seed = parse_u64(c[3], line_no);
    r.n_samples = static_cast<long>(parse_int(c[4], line_no));
    r.win_rate = parse_double(c[5], line_no);
    r.ppa_level = parse_double(c[6], line_no);
    r.pbm_gain = parse_double(c[7], line_no);
    r.sum_u = parse_double(c[8], line_no);
    if (!c[9].empty()) {
      for (const auto& x : split_csv(c[9], ';')) r.policy.push_back(parse_double(x, line_no));
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_bound_table_csv(std::ostream& out, const std::vector<BoundRow>& rows) {
  out << kBoundHeader << '\n';
  for (const auto& r : rows) {
    out << r.m << ',' << format_double(r.delta) << ',' << r.seeds << ','
        << format_double(r.inv_sum_u) << ',' << format_double(r.alpha) << ','
        << format_double(r.max_share) << '\n';
  }
}

std::vector<BoundRow> read_bound_table_csv(std::istream& in) {
  expect_header(in, kBoundHeader);
  std::vector<BoundRow> out;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto c = split_csv(line);
    if (c.size() != 6) throw ParseError("expected 6 columns", line_no);
    out.push_back({static_cast<int>(parse_int(c[0], line_no)), parse_double(c[1], line_no),
                   static_cast<int>(parse_int(c[2], line_no)), parse_double(c[3], line_no),
                   parse_double(c[4], line_no), parse_double(c[5], line_no)});
  }
  return out;
}

}  // namespace pplearn::io
