// Copyright 2026 The Authors.
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

// prefalloc: generate profiles, solve Monroe / Chamberlin-Courant committee
// selection, evaluate assignments and benchmark approximation ratios.
//
// Reports go to stdout as one key=value line per record (or one JSON object
// per line with --json); diagnostics go to stderr.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "prefalloc/prefalloc.hpp"

namespace {

using namespace prefalloc;  // NOLINT

constexpr int kExitError = 2;
constexpr int kExitViolation = 1;

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string fixed(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << v;
  return out.str();
}

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values[i]);
  }
  return out;
}

Objective parse_objective(const std::string& name) {
  for (Objective o : {Objective::kL1Dec, Objective::kL1Inc, Objective::kMinDec,
                      Objective::kMaxInc}) {
    if (name == to_string(o)) return o;
  }
  throw CLI::ValidationError("--objective", "unknown objective '" + name + "'");
}

ScoringFunction scoring_for(Objective o) {
  return wants_decreasing(o) ? ScoringFunction::BordaDec() : ScoringFunction::BordaInc();
}

// One solver run, as printed.
struct RunRecord {
  std::string instance;
  std::string system;
  int k = 0;
  std::string algorithm;
  std::optional<int> trial;
  SolveReport report;
  std::optional<double> bound;
  std::optional<double> expected_ratio;
  std::optional<Value> oracle;
  bool violation = false;

  std::optional<double> ratio() const {
    if (!oracle) return std::nullopt;
    if (*oracle == 0) return report.value == 0 ? 1.0 : 0.0;
    return static_cast<double>(report.value) / static_cast<double>(*oracle);
  }
};

void print_record(const RunRecord& r, bool as_json, bool timing) {
  const double elapsed_ms = std::chrono::duration<double, std::milli>(r.report.elapsed).count();
  if (as_json) {
    nlohmann::json j;
    j["instance"] = r.instance;
    j["system"] = r.system;
    j["K"] = r.k;
    if (r.trial) j["trial"] = *r.trial;
    j["algorithm"] = r.algorithm;
    j["solver"] = r.report.algorithm;
    j["branch"] = r.report.branch;
    j["objective"] = r.report.objective;
    j["value"] = r.report.value;
    if (r.bound) j["bound"] = *r.bound;
    if (r.expected_ratio) j["expected_ratio"] = *r.expected_ratio;
    if (r.oracle) j["oracle"] = *r.oracle;
    if (auto q = r.ratio()) j["ratio"] = *q;
    if (r.report.seed) j["seed"] = *r.report.seed;
    if (r.report.sampling_runs) j["sampling_runs"] = *r.report.sampling_runs;
    if (r.report.delta) j["delta"] = *r.report.delta;
    if (r.report.guarantee_void) j["guarantee_void"] = true;
    j["violation"] = r.violation;
    if (timing) j["elapsed_ms"] = elapsed_ms;
    j["committee"] = r.report.assignment.committee();
    j["targets"] = r.report.assignment.targets();
    std::cout << j.dump() << '\n';
    return;
  }
  std::ostringstream line;
  line << "instance=" << r.instance << " system=" << r.system << " K=" << r.k;
  if (r.trial) line << " trial=" << *r.trial;
  line << " algorithm=" << r.algorithm << " solver=" << r.report.algorithm
       << " branch=" << r.report.branch << " objective=" << r.report.objective
       << " value=" << r.report.value;
  if (r.bound) line << " bound=" << fixed(*r.bound);
  if (r.expected_ratio) line << " expected_ratio=" << fixed(*r.expected_ratio);
  if (r.oracle) line << " oracle=" << *r.oracle;
  if (auto q = r.ratio()) line << " ratio=" << fixed(*q);
  if (r.report.seed) line << " seed=" << *r.report.seed;
  if (r.report.sampling_runs) line << " sampling_runs=" << *r.report.sampling_runs;
  if (r.report.delta) line << " delta=" << fixed(*r.report.delta);
  if (r.report.guarantee_void) line << " guarantee_void=1";
  line << " violation=" << (r.violation ? 1 : 0);
  if (timing) line << " elapsed_ms=" << fixed(elapsed_ms);
  std::cout << line.str() << '\n';
}

void print_assignment(const RunRecord& r) {
  std::cout << "committee: " << join(r.report.assignment.committee()) << '\n';
  std::cout << "targets: " << join(r.report.assignment.targets()) << '\n';
}

struct SolveOptions {
  std::string system = "monroe";
  int k = 1;
  std::string algorithm = "greedy";
  std::string objective = "l1_dec";
  double epsilon = 0.1;
  double lambda = 0.9;
  std::optional<std::uint64_t> seed;
  std::optional<double> delta;
  std::int64_t cap = kDefaultEnumerationCap;
  std::optional<std::int64_t> runs;
  bool oracle = false;
};

Instance build_instance(const ProfileDocument& doc, const SolveOptions& o) {
  if (o.system == "monroe") return make_monroe(doc.profile, o.k);
  if (o.system == "cc") return make_cc(doc.profile, o.k);
  return doc.to_instance();
}

void check_flags(const SolveOptions& o) {
  const bool heuristic = o.algorithm != "exact";
  if ((o.algorithm == "sample" || o.algorithm == "combined") && !o.seed) {
    throw CLI::ValidationError("--seed", "algorithm '" + o.algorithm + "' requires --seed");
  }
  if (o.algorithm == "maxcover" && o.system != "cc") {
    throw CLI::ValidationError("--algorithm", "maxcover requires --system cc");
  }
  if ((o.algorithm == "sample" || o.algorithm == "combined") && o.system != "monroe") {
    throw CLI::ValidationError("--algorithm", o.algorithm + " requires --system monroe");
  }
  if (o.system == "general" && heuristic) {
    throw CLI::ValidationError("--system", "general instances are served by exact only");
  }
  if (heuristic && o.objective != "l1_dec") {
    throw CLI::ValidationError("--objective",
                               "heuristic algorithms optimize l1_dec only");
  }
  if (o.delta && !(o.system == "cc" && o.algorithm == "greedy")) {
    throw CLI::ValidationError("--delta", "--delta applies to greedy with --system cc");
  }
}

// Runs the requested algorithm and fills in the applicable proven bound.
RunRecord run_algorithm(const ProfileDocument& doc, const SolveOptions& o) {
  RunRecord r;
  r.system = o.system;
  r.k = o.k;
  r.algorithm = o.algorithm;
  const Profile& p = doc.profile;
  const int n = p.num_agents();
  const int m = p.num_alternatives();
  const Objective objective = parse_objective(o.objective);
  const ScoringFunction psf = scoring_for(objective);

  if (o.algorithm == "exact") {
    r.report = exact_enumeration(build_instance(doc, o), psf, objective, o.cap);
  } else if (o.algorithm == "greedy" && o.system == "monroe") {
    GreedyOptions g;
    g.enumeration_cap = o.cap;
    r.report = greedy_monroe(p, o.k, g);
    if (o.k >= 3) r.bound = greedy_monroe_bound(n, m, o.k);
  } else if (o.algorithm == "greedy" && o.delta) {
    r.report = greedy_cc_majority(p, o.k, *o.delta);
    r.bound = static_cast<double>(greedy_cc_majority_bound(m, o.k, *o.delta));
  } else if (o.algorithm == "greedy") {
    r.report = greedy_cc(p, o.k);
    r.bound = greedy_cc_bound(n, m, o.k);
  } else if (o.algorithm == "sample") {
    r.report = sample_once_monroe(p, o.k, *o.seed);
    r.expected_ratio = sampling_expected_ratio(m, o.k);
  } else if (o.algorithm == "combined") {
    SolverConfig config;
    config.epsilon = o.epsilon;
    config.lambda = o.lambda;
    config.seed = *o.seed;
    config.enumeration_cap = o.cap;
    config.sampling_runs_override = o.runs;
    r.report = combined_monroe(p, o.k, config);
  } else if (o.algorithm == "maxcover") {
    r.report = maxcover_cc_baseline(p, o.k);
  } else {
    throw CLI::ValidationError("--algorithm", "unknown algorithm '" + o.algorithm + "'");
  }

  if (o.oracle && !o.delta) {
    const Value opt =
        o.algorithm == "exact"
            ? r.report.value
            : exact_enumeration(build_instance(doc, o), psf, objective, o.cap).value;
    r.oracle = opt;
    const bool exact_path = o.algorithm == "exact" ||
                            r.report.branch.rfind("exact", 0) == 0;
    if (exact_path) r.bound = static_cast<double>(opt);
    if (o.algorithm == "maxcover") r.bound = kMaxCoverRatio * static_cast<double>(opt);
  }
  if (r.bound) {
    const double v = static_cast<double>(r.report.value);
    r.violation = maximizing(objective) || r.report.objective == "min_delta"
                      ? v < *r.bound - 1e-9
                      : v > *r.bound + 1e-9;
  }
  return r;
}

void add_solve_flags(CLI::App* cmd, SolveOptions& o) {
  cmd->add_option("--system", o.system, "monroe, cc or general")
      ->check(CLI::IsMember({"monroe", "cc", "general"}));
  cmd->add_option("--k,-k", o.k, "committee size")->required();
  cmd->add_option("--epsilon", o.epsilon, "combined solver accuracy, in (0,1)");
  cmd->add_option("--lambda", o.lambda, "combined solver success probability, in (0,1)");
  cmd->add_option("--seed", o.seed, "RNG seed (required for randomized runs)");
  cmd->add_option("--cap", o.cap, "maximum committees an exact branch may enumerate");
  cmd->add_option("--runs", o.runs, "override the combined solver's sampling run count");
}

int cmd_gen(const std::string& kind, int n, int m, std::optional<std::uint64_t> seed,
            const std::string& out_path) {
  Profile p = kind == "ic" ? (seed ? gen_impartial_culture(n, m, *seed)
                                   : throw CLI::ValidationError("--seed", "gen ic requires --seed"))
                           : gen_identical(n, m);
  const std::string text = write_instance(p);
  std::ofstream out(out_path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) {
    throw std::runtime_error("cannot write '" + out_path + "'");
  }
  std::cout << "path=" << out_path << " digest=" << fnv1a_hex(text) << '\n';
  return 0;
}

int cmd_solve(const std::string& in_path, SolveOptions o, bool as_json, bool timing) {
  check_flags(o);
  const ProfileDocument doc = parse_instance(read_file(in_path));
  RunRecord r = run_algorithm(doc, o);
  r.instance = in_path;
  print_record(r, as_json, timing);
  if (!as_json) print_assignment(r);
  return r.violation ? kExitViolation : 0;
}

struct RatioOptions {
  std::optional<std::string> in_path;
  std::string gen = "ic";
  int n = 12;
  int m = 6;
  std::vector<std::string> algorithms = {"greedy"};
  int trials = 10;
  std::uint64_t seed = 0;
};

int cmd_ratio(const RatioOptions& ro, SolveOptions o, bool as_json, bool timing) {
  struct Summary {
    double min_ratio = 1e300;
    int violations = 0;
    int errors = 0;
  };
  std::vector<Summary> summary(ro.algorithms.size());
  for (const auto& a : ro.algorithms) {
    SolveOptions probe = o;
    probe.algorithm = a;
    probe.seed = 0;
    check_flags(probe);
  }
  bool failed = false;
  for (int t = 0; t < ro.trials; ++t) {
    const std::uint64_t gen_seed = derive_seed(ro.seed, 2 * static_cast<std::uint64_t>(t));
    const std::uint64_t alg_seed = derive_seed(ro.seed, 2 * static_cast<std::uint64_t>(t) + 1);
    std::string descriptor;
    std::optional<ProfileDocument> doc;
    try {
      if (ro.in_path) {
        doc = parse_instance(read_file(*ro.in_path));
        descriptor = *ro.in_path;
      } else {
        Profile p = ro.gen == "ic" ? gen_impartial_culture(ro.n, ro.m, gen_seed)
                                   : gen_identical(ro.n, ro.m);
        doc = ProfileDocument{std::move(p), std::nullopt, std::nullopt, std::nullopt,
                              std::nullopt};
        descriptor = ro.gen + ":" + std::to_string(ro.n) + "x" + std::to_string(ro.m);
        if (ro.gen == "ic") descriptor += ":" + std::to_string(gen_seed);
      }
    } catch (const std::exception& e) {
      std::cerr << "trial " << t << ": " << e.what() << '\n';
      return kExitError;
    }
    for (std::size_t ai = 0; ai < ro.algorithms.size(); ++ai) {
      SolveOptions run = o;
      run.algorithm = ro.algorithms[ai];
      run.seed = alg_seed;
      run.oracle = true;
      try {
        RunRecord r = run_algorithm(*doc, run);
        r.instance = descriptor;
        r.trial = t;
        print_record(r, as_json, timing);
        if (auto q = r.ratio()) summary[ai].min_ratio = std::min(summary[ai].min_ratio, *q);
        if (r.violation) {
          ++summary[ai].violations;
          failed = true;
        }
      } catch (const std::exception& e) {
        ++summary[ai].errors;
        failed = true;
        if (as_json) {
          nlohmann::json j{{"trial", t}, {"algorithm", run.algorithm}, {"error", e.what()}};
          std::cout << j.dump() << '\n';
        } else {
          std::cout << "instance=" << descriptor << " trial=" << t
                    << " algorithm=" << run.algorithm << " error=\"" << e.what() << "\"\n";
        }
      }
    }
  }
  for (std::size_t ai = 0; ai < ro.algorithms.size(); ++ai) {
    const auto& s = summary[ai];
    const double min_ratio = s.min_ratio > 1e299 ? 0.0 : s.min_ratio;
    if (as_json) {
      nlohmann::json j{{"summary", ro.algorithms[ai]}, {"min_ratio", min_ratio},
                       {"violations", s.violations}, {"errors", s.errors}};
      std::cout << j.dump() << '\n';
    } else {
      std::cout << "summary algorithm=" << ro.algorithms[ai]
                << " min_ratio=" << fixed(min_ratio) << " violations=" << s.violations
                << " errors=" << s.errors << '\n';
    }
  }
  return failed ? kExitViolation : 0;
}

int cmd_eval(const std::string& in_path, const SolveOptions& o, const std::vector<int>& targets,
             const std::string& psf_name, std::optional<double> delta) {
  const ProfileDocument doc = parse_instance(read_file(in_path));
  const Instance inst = build_instance(doc, o);
  const Assignment a(targets);
  const ScoringFunction psf =
      psf_name == "borda_inc" ? ScoringFunction::BordaInc() : ScoringFunction::BordaDec();
  const auto violations = validate_assignment(inst, a);
  for (const auto& v : violations) std::cerr << "violation: " << v.describe() << '\n';
  std::cout << "instance=" << in_path << " system=" << to_string(inst.system)
            << " psf=" << psf.name() << " feasible=" << (violations.empty() ? 1 : 0);
  if (a.size() == inst.n() &&
      std::all_of(targets.begin(), targets.end(),
                  [&](int t) { return t >= 1 && t <= inst.m(); })) {
    std::cout << " cost=" << assignment_cost(inst, a) << " l1=" << metric_l1(inst.profile, psf, a)
              << " min=" << metric_extreme(inst.profile, psf, a, ExtremeMode::kMin)
              << " max=" << metric_extreme(inst.profile, psf, a, ExtremeMode::kMax);
    if (delta) {
      std::cout << " min_delta=" << metric_min_delta(inst.profile, psf, a, *delta);
    }
  }
  std::cout << '\n';
  return violations.empty() ? 0 : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budgeted preference allocation: Monroe and Chamberlin-Courant solvers"};
  app.require_subcommand(1);
  bool as_json = false;
  bool timing = false;
  app.add_flag("--json", as_json, "emit one JSON object per record");
  app.add_flag("--timing", timing, "include elapsed_ms (breaks byte-identical replays)");

  // gen
  auto* gen = app.add_subcommand("gen", "write a synthetic profile");
  std::string gen_kind;
  int gen_n = 0;
  int gen_m = 0;
  std::optional<std::uint64_t> gen_seed;
  std::string gen_out;
  gen->add_option("kind", gen_kind, "ic or identical")
      ->required()
      ->check(CLI::IsMember({"ic", "identical"}));
  gen->add_option("n", gen_n, "agents")->required()->check(CLI::PositiveNumber);
  gen->add_option("m", gen_m, "alternatives")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "RNG seed (required for ic)");
  gen->add_option("--out,-o", gen_out, "output path")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "solve one instance file");
  SolveOptions solve_opts;
  std::string solve_in;
  solve->add_option("--in,-i", solve_in, "profile file")->required();
  add_solve_flags(solve, solve_opts);
  solve->add_option("--algorithm,-a", solve_opts.algorithm)
      ->check(CLI::IsMember({"greedy", "sample", "combined", "maxcover", "exact"}));
  solve->add_option("--objective", solve_opts.objective, "l1_dec, l1_inc, min_dec or max_inc")
      ->check(CLI::IsMember({"l1_dec", "l1_inc", "min_dec", "max_inc"}));
  solve->add_option("--delta", solve_opts.delta, "greedy cc: optimize min_delta at this delta");
  solve->add_flag("--oracle", solve_opts.oracle, "also run exact enumeration and report the ratio");

  // ratio
  auto* ratio = app.add_subcommand("ratio", "benchmark algorithms against the exact oracle");
  RatioOptions ratio_opts;
  SolveOptions ratio_solve;
  ratio->add_option("--in,-i", ratio_opts.in_path, "profile file (instead of a generator)");
  ratio->add_option("--gen", ratio_opts.gen)->check(CLI::IsMember({"ic", "identical"}));
  ratio->add_option("--n", ratio_opts.n)->check(CLI::PositiveNumber);
  ratio->add_option("--m", ratio_opts.m)->check(CLI::PositiveNumber);
  ratio->add_option("--algorithms", ratio_opts.algorithms, "comma separated")
      ->delimiter(',')
      ->check(CLI::IsMember({"greedy", "sample", "combined", "maxcover", "exact"}));
  ratio->add_option("--trials", ratio_opts.trials)->check(CLI::PositiveNumber);
  add_solve_flags(ratio, ratio_solve);
  ratio->get_option("--seed")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a given assignment");
  SolveOptions eval_opts;
  std::string eval_in;
  std::vector<int> eval_targets;
  std::string eval_psf = "borda_dec";
  std::optional<double> eval_delta;
  eval->add_option("--in,-i", eval_in, "profile file")->required();
  eval->add_option("--system", eval_opts.system)
      ->check(CLI::IsMember({"monroe", "cc", "general"}));
  eval->add_option("--k,-k", eval_opts.k, "committee size");
  eval->add_option("--targets", eval_targets, "one alternative per agent")
      ->required()
      ->expected(1, -1);
  eval->add_option("--psf", eval_psf)->check(CLI::IsMember({"borda_dec", "borda_inc"}));
  eval->add_option("--delta", eval_delta, "also report min_delta");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(gen_kind, gen_n, gen_m, gen_seed, gen_out);
    if (*solve) return cmd_solve(solve_in, solve_opts, as_json, timing);
    if (*ratio) {
      if (ratio_solve.seed) ratio_opts.seed = *ratio_solve.seed;
      return cmd_ratio(ratio_opts, ratio_solve, as_json, timing);
    }
    if (*eval) return cmd_eval(eval_in, eval_opts, eval_targets, eval_psf, eval_delta);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
