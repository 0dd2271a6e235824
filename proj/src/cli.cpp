#include "pmcover/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmcover/covers.hpp"
#include "pmcover/exact.hpp"
#include "pmcover/io.hpp"
#include "pmcover/log.hpp"
#include "pmcover/lovasz.hpp"
#include "pmcover/relax.hpp"
#include "pmcover/rounding.hpp"
#include "pmcover/scpsc.hpp"

namespace pmc {

using nlohmann::json;

namespace {

struct RunConfig {
  std::string input;
  std::string report_path;
  double epsilon = -1;  // <0: default 0.05 q
  double s = -1;        // <0: default 1/q
  double t = -1;        // <0: default 1/sqrt(q)
  double tol = 1e-7;
  std::uint64_t seed = 0;
  int reps = 0;  // 0: ceil(4 ln n)
  int threads = 1;
  bool scpsc = false;
  bool expectation_mode = false;
  bool trace = false;
};

json set_ids(const Instance& inst, std::uint64_t mask) {
  json out = json::array();
  for (int i = 0; i < inst.num_sets(); ++i)
    if (mask & (std::uint64_t{1} << i)) out.push_back(inst.sets[i].id);
  return out;
}

long long now_unix() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

void emit(const json& report, const RunConfig& cfg) {
  const std::string text = report.dump(2) + "\n";
  if (cfg.report_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream out(cfg.report_path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Parse, "cannot write report to '" + cfg.report_path + "'");
    out << text;
  }
}

RoundingParams make_params(const Instance& inst, const RunConfig& cfg) {
  RoundingParams params = RoundingParams::defaults(inst);
  if (cfg.epsilon >= 0) params.epsilon = rational_from_double(cfg.epsilon);
  if (cfg.s >= 0) params.s = rational_from_double(cfg.s);
  if (cfg.t >= 0) params.t = cfg.t;
  params.seed = cfg.seed;
  params.expectation_mode = cfg.expectation_mode;
  return params;
}

int cmd_solve(const RunConfig& cfg) {
  Instance inst = load_instance(cfg.input);
  RoundingParams params = make_params(inst, cfg);
  RelaxOptions relax_options;
  relax_options.tol = cfg.tol;

  WhpResult result;
  if (cfg.scpsc) {
    result = solve_whp_scpsc(inst, params, cfg.reps, cfg.threads, relax_options);
  } else {
    result = solve_whp(inst, params, cfg.reps, cfg.threads, relax_options);
  }
  const RoundedOutcome& best = result.best;
  CostOracle oracle(inst);

  json report;
  report["command"] = "solve";
  report["instance"] = cfg.input;
  report["mode"] = cfg.scpsc ? "scpsc" : "scpmc";
  report["expectation_mode"] = cfg.expectation_mode;
  report["q"] = to_double(inst.q);
  report["q_exact"] = rational_to_string(inst.q);
  report["epsilon"] = to_double(params.epsilon);
  report["epsilon_exact"] = rational_to_string(params.epsilon);
  report["s"] = to_double(params.s);
  report["t"] = params.t;
  report["seed"] = params.seed;
  report["repetitions_requested"] = cfg.reps;
  report["repetitions_used"] = result.reps_run;
  report["best_repetition"] = result.best_rep;
  report["cost"] = best.cost;
  report["cost_exact"] = best.exact ? json(rational_to_string(best.cost_exact)) : json();
  report["cost_unshifted"] = best.cost + to_double(oracle.raw_offset());
  report["covered_profit"] = to_double(best.covered_profit);
  report["covered_profit_exact"] = rational_to_string(best.covered_profit);
  report["profit_target"] =
      to_double((params.expectation_mode ? inst.q : inst.q - params.epsilon) *
                inst.total_profit());
  report["feasible"] = best.feasible;
  report["warning_ratio"] = result.warning_ratio;
  report["S1"] = set_ids(inst, best.s1_mask);
  report["S2"] = set_ids(inst, best.s2_mask);
  report["S_prime"] = set_ids(inst, best.union_mask);
  report["opt_cp"] = result.opt_cp;
  report["opt_cp_exact"] =
      result.opt_cp_is_exact ? json(rational_to_string(result.opt_cp_exact)) : json();
  report["ratio_vs_relaxation"] = result.opt_cp > 0 ? best.cost / result.opt_cp : 0.0;
  report["theta_traces"] = cfg.trace ? json(best.thetas) : json();
  report["timestamp"] = now_unix();
  emit(report, cfg);
  std::fprintf(stderr, "solve: cost %.6g, covered profit %.6g/%.6g, %s\n", best.cost,
               to_double(best.covered_profit), to_double(inst.total_profit()),
               best.feasible ? "feasible" : "infeasible");
  return best.feasible ? 0 : 2;
}

int cmd_relax(const RunConfig& cfg) {
  Instance inst = load_instance(cfg.input);
  RelaxOptions options;
  options.tol = cfg.tol;
  CostOracle oracle(inst);
  FractionalSolution frac;
  CoverFamily family;
  if (cfg.scpsc) {
    frac = solve_scpsc_relaxation(inst, oracle, options);
    family = enumerate_covers(inst);
  } else {
    family = enumerate_covers(inst);
    frac = solve_relaxation(inst, family, oracle, options);
  }

  json report;
  report["command"] = "relax";
  report["instance"] = cfg.input;
  report["mode"] = cfg.scpsc ? "scpsc" : "scpmc";
  report["value"] = frac.value_f;
  report["value_exact"] = frac.exact ? json(rational_to_string(frac.value)) : json();
  json xs = json::array();
  for (int i = 0; i < family.size(); ++i) {
    json item;
    item["sets"] = set_ids(inst, family.covers[i]);
    item["x"] = to_double(frac.x[i]);
    xs.push_back(std::move(item));
  }
  report["x"] = std::move(xs);
  json ys = json::object();
  for (int e = 0; e < inst.num_elements(); ++e)
    ys[inst.elements[e].id] = to_double(frac.y[e]);
  report["y"] = std::move(ys);
  report["cuts"] = frac.diag.cuts;
  report["lp_solves"] = frac.diag.lp_solves;
  report["iterations"] = frac.diag.lp_pivots;
  report["final_gap"] = frac.diag.final_gap;
  report["timestamp"] = now_unix();
  emit(report, cfg);
  std::fprintf(stderr, "relax: value %.9g with %d cuts\n", frac.value_f, frac.diag.cuts);
  return 0;
}

int cmd_exact(const RunConfig& cfg) {
  Instance inst = load_instance(cfg.input);
  ExactResult result = exact_solve(inst);
  json report;
  report["command"] = "exact";
  report["instance"] = cfg.input;
  report["optimum"] = result.optimum;
  report["optimum_exact"] =
      result.exact ? json(rational_to_string(result.optimum_exact)) : json();
  report["best_sets"] = set_ids(inst, result.best_mask);
  report["feasible_count"] = result.feasible_count;
  report["enumerated"] = result.enumerated;
  report["timestamp"] = now_unix();
  emit(report, cfg);
  std::fprintf(stderr, "exact: optimum %.6g over %llu feasible sub-collections\n",
               result.optimum, static_cast<unsigned long long>(result.feasible_count));
  return 0;
}

int cmd_gap(const RunConfig& cfg) {
  Instance inst = load_instance(cfg.input);
  RelaxOptions options;
  options.tol = cfg.tol;
  GapReport gap = gap_report(inst, options);
  json report;
  report["command"] = "gap";
  report["instance"] = cfg.input;
  report["natural_lp"] = gap.natural.value;
  report["natural_lp_exact"] = rational_to_string(gap.natural.value_exact);
  report["reformulated"] = gap.reformulated.value_f;
  report["reformulated_exact"] =
      gap.reformulated.exact ? json(rational_to_string(gap.reformulated.value)) : json();
  report["exact"] = gap.integer.optimum;
  report["exact_value"] =
      gap.integer.exact ? json(rational_to_string(gap.integer.optimum_exact)) : json();
  report["natural_gap"] = gap.natural_gap;
  report["reformulated_gap"] = gap.reformulated_gap;
  report["timestamp"] = now_unix();
  emit(report, cfg);
  std::fprintf(stderr, "gap: natural %.6g vs reformulated %.6g (exact %.6g)\n",
               gap.natural_gap, gap.reformulated_gap, gap.integer.optimum);
  return 0;
}

int cmd_covers(const RunConfig& cfg) {
  Instance inst = load_instance(cfg.input);
  CoverFamily family = enumerate_covers(inst);
  json report;
  report["command"] = "covers";
  report["instance"] = cfg.input;
  report["count"] = family.size();
  json omega = json::array();
  for (int i = 0; i < family.size(); ++i) omega.push_back(set_ids(inst, family.covers[i]));
  report["omega"] = std::move(omega);
  json per_element = json::object();
  for (int e = 0; e < inst.num_elements(); ++e)
    per_element[inst.elements[e].id] = family.omega_e[e];
  report["omega_e"] = std::move(per_element);
  report["timestamp"] = now_unix();
  emit(report, cfg);
  std::fprintf(stderr, "covers: %d distinct covers\n", family.size());
  return 0;
}

int cmd_check(const RunConfig& cfg) {
  Instance inst = load_instance(cfg.input, /*run_validation=*/false);
  ValidationReport validation = validate(inst);

  json report;
  report["command"] = "check";
  report["instance"] = cfg.input;
  report["valid"] = validation.ok();
  report["violations"] = validation.violations;
  report["induced_submodular"] = json();
  report["induced_violation"] = json();
  report["cost_submodular"] = json();
  report["cost_monotone"] = json();

  if (validation.ok()) {
    CostOracle oracle(inst);
    if (oracle.rational()) {
      auto base = SetFunctionView<Rational>::from_mask_fn(
          inst.num_sets(), [&](std::uint64_t mask) { return oracle.eval_exact(mask); });
      auto base_report = check_submodular<Rational>(base);
      report["cost_submodular"] = base_report.submodular;
      report["cost_monotone"] = base_report.monotone;
    } else {
      report["cost_submodular"] = true;  // concave-cardinality, by construction
      report["cost_monotone"] = true;
    }
    CoverFamily family = enumerate_covers(inst);
    Limits limits;
    if (family.size() <= limits.submod_check_max) {
      InducedCost rho(family, oracle);
      json violation;
      if (oracle.rational()) {
        auto induced_report = check_submodular<Rational>(rho.view_exact());
        report["induced_submodular"] = induced_report.submodular;
        if (!induced_report.violations.empty()) {
          const auto& v = induced_report.violations.front();
          violation["omega_dprime"] = v.e_dprime;
          violation["omega_prime"] = v.e_prime;
          violation["omega_zero"] = v.e_zero;
          violation["lhs"] = rational_to_string(v.lhs);
          violation["rhs"] = rational_to_string(v.rhs);
        }
      } else {
        auto induced_report = check_submodular<double>(rho.view());
        report["induced_submodular"] = induced_report.submodular;
      }
      report["induced_violation"] = violation.empty() ? json() : violation;
    }
  }
  report["timestamp"] = now_unix();
  emit(report, cfg);
  std::fprintf(stderr, "check: %s\n", validation.ok() ? "valid" : "invalid");
  return validation.ok() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Solver for minimum submodular-cost partial multi-cover"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "instance JSON file")->required();
    sub->add_option("--report", cfg.report_path, "write the JSON report to this path");
    sub->add_option("--tol", cfg.tol, "relaxation termination tolerance");
  };

  CLI::App* solve = app.add_subcommand("solve", "run the two-phase rounding pipeline");
  add_common(solve);
  solve->add_option("--epsilon", cfg.epsilon, "coverage slack (default 0.05 q)");
  solve->add_option("--seed", cfg.seed, "RNG seed");
  solve->add_option("--reps", cfg.reps, "repetitions (default ceil(4 ln n))");
  solve->add_option("--s", cfg.s, "phase-1 parameter (default 1/q)");
  solve->add_option("--t", cfg.t, "phase-2 parameter (default 1/sqrt(q))");
  solve->add_option("--threads", cfg.threads, "repetitions run in parallel");
  solve->add_flag("--scpsc", cfg.scpsc, "r = 1 pipeline with the gamma closure");
  solve->add_flag("--expectation-mode", cfg.expectation_mode,
                  "stop phase 1 at qP instead of (q - epsilon)P");
  solve->add_flag("--trace", cfg.trace, "include theta draws in the report");

  CLI::App* relax = app.add_subcommand("relax", "solve the convex relaxation only");
  add_common(relax);
  relax->add_flag("--scpsc", cfg.scpsc, "set-variable relaxation (requires r = 1)");

  CLI::App* exact = app.add_subcommand("exact", "brute-force integer optimum");
  add_common(exact);

  CLI::App* gap = app.add_subcommand("gap", "compare natural LP, relaxation and optimum");
  add_common(gap);

  CLI::App* covers = app.add_subcommand("covers", "dump the cover family");
  add_common(covers);

  CLI::App* check = app.add_subcommand("check", "validate an instance and its cost oracle");
  add_common(check);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(cfg);
    if (relax->parsed()) return cmd_relax(cfg);
    if (exact->parsed()) return cmd_exact(cfg);
    if (gap->parsed()) return cmd_gap(cfg);
    if (covers->parsed()) return cmd_covers(cfg);
    if (check->parsed()) return cmd_check(cfg);
  } catch (const Error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    switch (err.kind()) {
      case ErrorKind::Parse:
      case ErrorKind::InvalidInstance:
      case ErrorKind::BadArgument:
        return 1;
      case ErrorKind::Infeasible:
        return 2;
      case ErrorKind::GuardExceeded:
      case ErrorKind::Internal:
        return 3;
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 3;
  }
  return 1;
}

}  // namespace pmc
