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

// Command-line front end. Every subcommand writes JSON or CSV to --output
// (or stdout) and reports errors on stderr with a non-zero exit status.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pplearn/axioms.hpp"
#include "pplearn/error.hpp"
#include "pplearn/experiments.hpp"
#include "pplearn/feasibility.hpp"
#include "pplearn/io.hpp"
#include "pplearn/kernels.hpp"
#include "pplearn/manipulation.hpp"
#include "pplearn/rules.hpp"
#include "pplearn/sampling.hpp"

namespace pp = pplearn;
namespace io = pplearn::io;

namespace {

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    io::write_text_file(path, text);
  }
}

void emit_json(const std::string& path, const io::Json& j) { emit(path, j.dump(2) + "\n"); }

pp::Profile load_profile(const std::string& path) {
  return io::profile_from_json(io::read_json_file(path));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<pp::Rule> parse_rules(const std::string& list) {
  std::vector<pp::Rule> rules;
  for (const auto& name : split(list, ',')) rules.push_back(pp::Rule::parse(name));
  if (rules.empty()) throw pp::ValidationError("no rules given");
  return rules;
}

// "m=20,n=1000" (either key optional).
std::pair<int, int> parse_random_ranking(const std::string& spec) {
  int m = 20, n = 1000;
  for (const auto& kv : split(spec, ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw pp::ValidationError("expected key=value in '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const int value = std::stoi(kv.substr(eq + 1));
    if (key == "m") {
      m = value;
    } else if (key == "n") {
      n = value;
    } else {
      throw pp::ValidationError("unknown random-ranking key '" + key + "'");
    }
  }
  return {m, n};
}

struct Args {
  std::string rule = "fstar";
  double beta = 0.0;
  std::string input;
  std::string output;
  std::string query;
  bool exact = false;
  std::string axiom;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string mode = "exhaustive";
  long budget = 0;
  std::string format = "csv-rankings";
  std::string path;
  int top = 20;
  bool with_labels = false;
  long samples = 100000;
  std::string profile;
  std::string random_ranking;
  std::string rules = "fstar,fbeta:1,ml,borda,rd";
  int episodes = 50;
  int threads = 1;
  long pbm_budget = 1000;
  std::string ms = "10,20,50,100";
  double delta = 0.7;
  int seeds = 10;
  int evaluators = 1000;
};

int run_solve(const Args& a) {
  const pp::Rule rule = pp::Rule::parse(a.rule, a.beta);
  const io::Json in = io::read_json_file(a.input);
  io::Json out;
  if (in.contains("rankings")) {
    const pp::Profile profile = io::profile_from_json(in);
    if (rule.kind == pp::RuleKind::kMaximalLotteries) {
      const auto sol = pp::maximal_lotteries(pp::induce_preference(profile), 1e-7);
      out = io::to_json(sol.policy);
      out["value"] = sol.value;
      out["exploitability"] = sol.exploitability;
    } else {
      out = io::to_json(rule(profile));
    }
  } else {
    const pp::PreferenceMatrix p = io::preference_from_json(in);
    if (rule.kind == pp::RuleKind::kMaximalLotteries) {
      const auto sol = pp::maximal_lotteries(p, 1e-7);
      out = io::to_json(sol.policy);
      out["value"] = sol.value;
      out["exploitability"] = sol.exploitability;
    } else {
      out = io::to_json(rule(p));
    }
  }
  out["rule"] = rule.label();
  emit_json(a.output, out);
  return 0;
}

int run_feasible(const Args& a) {
  const pp::PreferenceMatrix p = io::preference_from_json(io::read_json_file(a.input));
  const pp::Policy w(io::shares_from_json(io::read_json_file(a.query)));
  pp::FeasibilityReport report;
  if (a.exact) {
    report = pp::exact_membership_profile(p, w);
  } else {
    report.u = pp::u_vector(p);
    for (double x : report.u) report.sum_u += x;
    report.member = pp::outer_membership(p, w);
  }
  io::Json out = io::to_json(report);
  out["outer_member"] = pp::outer_membership(p, w);
  out["method"] = a.exact ? "exact" : "outer";
  emit_json(a.output, out);
  return 0;
}

int run_audit(const Args& a) {
  const pp::Rule rule = pp::Rule::parse(a.rule, a.beta);
  const pp::Axiom axiom = pp::parse_axiom(a.axiom);
  const pp::Profile profile = load_profile(a.input);
  pp::AxiomVerdict v;
  v.axiom = axiom;
  switch (axiom) {
    case pp::Axiom::kMonotonicity: {
      pp::MonotonicityOptions opt;
      opt.exhaustive = a.trials <= 0;
      opt.trials = a.trials;
      opt.seed = a.seed;
      v = pp::check_monotonicity(rule, profile, opt);
      break;
    }
    case pp::Axiom::kPareto: v = pp::check_pareto(rule, profile); break;
    case pp::Axiom::kCondorcet: v = pp::check_condorcet(rule, pp::induce_preference(profile)); break;
    case pp::Axiom::kPmc: v = pp::check_pmc(rule, pp::induce_preference(profile)); break;
    case pp::Axiom::kPpa: {
      v.measured = pp::measure_ppa(rule, profile);
      v.holds = v.measured > 0.0;
      v.cases_checked = 1;
      v.note = "measured = min_k pi_k / w_k; holds when positive";
      break;
    }
    case pp::Axiom::kPbm: {
      pp::SearchOptions opt;
      opt.mode = a.trials > 0 || profile.m() > pp::kMaxExhaustiveAlternatives
                     ? pp::SearchMode::kSampled
                     : pp::SearchMode::kExhaustive;
      opt.budget = a.trials;
      opt.seed = a.seed;
      double worst = -1.0;
      for (const auto& r : pp::best_responses(rule, profile, opt)) {
        ++v.cases_checked;
        worst = std::max(worst, r.best_manipulated_value - r.bound_affine);
      }
      v.measured = worst;
      v.holds = worst <= pp::kAxiomTolerance;
      v.note = "measured = max_k (best manipulated pi_k - (w_k + 1) / 2)";
      break;
    }
  }
  emit_json(a.output, io::to_json(v));
  return 0;
}

int run_attack(const Args& a) {
  const pp::Rule rule = pp::Rule::parse(a.rule, a.beta);
  pp::SearchOptions opt;
  if (a.mode == "exhaustive") {
    opt.mode = pp::SearchMode::kExhaustive;
  } else if (a.mode == "sampled") {
    opt.mode = pp::SearchMode::kSampled;
  } else {
    throw pp::ValidationError("mode must be exhaustive or sampled");
  }
  opt.budget = a.budget;
  opt.seed = a.seed;
  emit_json(a.output, io::to_json(pp::best_responses(rule, load_profile(a.input), opt)));
  return 0;
}

int run_ingest(const Args& a) {
  pp::IngestOptions opt;
  opt.format = pp::parse_ranking_format(a.format);
  opt.top = a.top;
  const auto ingested = pp::ingest_rankings(a.path, opt);
  io::Json out = io::to_json(ingested.profile);
  if (a.with_labels) {
    out["labels"] = ingested.labels;
    out["evaluators"] = ingested.evaluators;
  }
  emit_json(a.output, out);
  return 0;
}

int run_sample(const Args& a) {
  const io::Json in = io::read_json_file(a.input);
  const pp::PreferenceMatrix p = in.contains("rankings")
                                     ? pp::induce_preference(io::profile_from_json(in))
                                     : io::preference_from_json(in);
  std::ostringstream out;
  io::write_comparisons_csv(out, pp::sample_comparisons(p, a.samples, a.seed));
  emit(a.output, out.str());
  return 0;
}

int run_estimate(const Args& a, int m) {
  std::ifstream in(a.input);
  if (!in) throw pp::Error("cannot open '" + a.input + "'");
  const auto data = io::read_comparisons_csv(in, m);
  emit_json(a.output, io::to_json(pp::estimate_preference(data)));
  return 0;
}

int run_tabular(const Args& a) {
  pp::Profile profile = pp::Profile::uniform(2);
  if (!a.profile.empty()) {
    profile = load_profile(a.profile);
  } else {
    const auto [m, n] = parse_random_ranking(a.random_ranking.empty() ? "m=20,n=1000" : a.random_ranking);
    profile = pp::random_ranking_profile(m, n, a.seed);
  }
  pp::TabularOptions opt;
  opt.episodes = a.episodes;
  opt.n_samples = a.samples;
  opt.seed = a.seed;
  opt.threads = a.threads;
  opt.episode.pbm_budget = a.pbm_budget;
  std::ostringstream out;
  io::write_episodes_csv(out, pp::run_tabular(profile, parse_rules(a.rules), opt));
  emit(a.output, out.str());
  return 0;
}

int run_bound_table(const Args& a) {
  std::vector<int> ms;
  for (const auto& s : split(a.ms, ',')) ms.push_back(std::stoi(s));
  std::ostringstream out;
  io::write_bound_table_csv(out, pp::bound_table(ms, a.delta, a.seeds, a.evaluators, a.seed));
  emit(a.output, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Population-proportional preference aggregation"};
  app.require_subcommand(1);
  Args a;
  int estimate_m = 0;

  auto* solve = app.add_subcommand("solve", "apply a rule to a profile or preference matrix");
  solve->add_option("--rule", a.rule, "borda|ml|rd|fstar|fbeta|finf (or fbeta:B)");
  solve->add_option("--beta", a.beta, "beta for fbeta");
  solve->add_option("--input", a.input, "profile.json or pref.json")->required();
  solve->add_option("--output", a.output, "policy.json (default stdout)");

  auto* feasible = app.add_subcommand("feasible", "test a share vector against a matrix");
  feasible->add_option("--input", a.input, "pref.json")->required();
  feasible->add_option("--query", a.query, "w.json")->required();
  feasible->add_flag("--exact", a.exact, "solve the exact LP over rankings (M <= 6)");
  feasible->add_option("--output", a.output);

  auto* audit = app.add_subcommand("audit", "check an axiom on a profile");
  audit->add_option("--rule", a.rule);
  audit->add_option("--beta", a.beta);
  audit->add_option("--axiom", a.axiom, "monotonicity|pareto|ppa|pbm|condorcet|pmc")->required();
  audit->add_option("--input", a.input, "profile.json")->required();
  audit->add_option("--trials", a.trials, "random trials (0: exhaustive)");
  audit->add_option("--seed", a.seed);
  audit->add_option("--output", a.output);

  auto* attack = app.add_subcommand("attack", "best single-group manipulation per group");
  attack->add_option("--rule", a.rule);
  attack->add_option("--beta", a.beta);
  attack->add_option("--input", a.input, "profile.json")->required();
  attack->add_option("--mode", a.mode, "exhaustive|sampled");
  attack->add_option("--budget", a.budget, "candidates per group (0: unlimited)");
  attack->add_option("--seed", a.seed);
  attack->add_option("--output", a.output);

  auto* ingest = app.add_subcommand("ingest", "turn ranking or rating data into a profile");
  ingest->add_option("--format", a.format, "csv-rankings|movielens-ratings");
  ingest->add_option("--path", a.path)->required();
  ingest->add_option("--top", a.top, "movielens-ratings: number of most-rated movies");
  ingest->add_flag("--labels", a.with_labels, "include alternative labels");
  ingest->add_option("--output", a.output);

  auto* sample = app.add_subcommand("sample", "draw pairwise comparisons (CSV winner,loser)");
  sample->add_option("--input", a.input, "profile.json or pref.json")->required();
  sample->add_option("--samples", a.samples);
  sample->add_option("--seed", a.seed);
  sample->add_option("--output", a.output);

  auto* estimate = app.add_subcommand("estimate", "empirical preference matrix from comparisons");
  estimate->add_option("--input", a.input, "comparisons.csv")->required();
  estimate->add_option("--m", estimate_m, "number of alternatives (default: inferred)");
  estimate->add_option("--output", a.output);

  auto* experiment = app.add_subcommand("experiment", "tabular episodes and bound tables");
  experiment->require_subcommand(1);
  auto* tabular = experiment->add_subcommand("tabular", "episodes of sample / estimate / apply");
  auto* source = tabular->add_option_group("source");
  source->add_option("--profile", a.profile, "profile.json");
  source->add_option("--random-ranking", a.random_ranking, "m=20,n=1000");
  source->require_option(0, 1);
  tabular->add_option("--rules", a.rules, "comma-separated rule names");
  tabular->add_option("--episodes", a.episodes);
  tabular->add_option("--samples", a.samples, "comparisons per episode (0: exact P)");
  tabular->add_option("--seed", a.seed);
  tabular->add_option("--threads", a.threads);
  tabular->add_option("--pbm-budget", a.pbm_budget, "manipulation candidates per group (0: skip)");
  tabular->add_option("--out", a.output, "report.csv (default stdout)");
  auto* bounds = experiment->add_subcommand("bound-table", "random-ranking PPA bounds");
  bounds->add_option("--ms", a.ms, "comma-separated M values");
  bounds->add_option("--delta", a.delta);
  bounds->add_option("--seeds", a.seeds);
  bounds->add_option("--evaluators", a.evaluators);
  bounds->add_option("--seed", a.seed);
  bounds->add_option("--out", a.output, "table.csv (default stdout)");

  app.add_flag_callback("--simd-info", [] {
    std::cerr << "kernels: " << pp::kernels::active().name << "\n";
  }, "print the active kernel table on stderr");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*solve) return run_solve(a);
    if (*feasible) return run_feasible(a);
    if (*audit) return run_audit(a);
    if (*attack) return run_attack(a);
    if (*ingest) return run_ingest(a);
    if (*sample) return run_sample(a);
    if (*estimate) return run_estimate(a, estimate_m);
    if (*tabular) return run_tabular(a);
    if (*bounds) return run_bound_table(a);
  } catch (const pp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
