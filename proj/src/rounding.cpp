#include "pmcover/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "pmcover/log.hpp"

namespace pmc {

RoundingParams RoundingParams::defaults(const Instance& instance) {
  instance.require_valid();
  RoundingParams params;
  params.s = Rational(1) / instance.q;
  params.t = 1.0 / std::sqrt(to_double(instance.q));
  params.epsilon = instance.q / 20;
  return params;
}

long default_iterations(std::uint64_t b, const Rational& s, double t) {
  const double sf = to_double(s);
  return static_cast<long>(std::ceil(static_cast<double>(b) * sf * std::log(sf / (sf - t))));
}

void check_params(const Instance& instance, const RoundingParams& params) {
  instance.require_valid();
  if (!(params.t > 1.0) || !(Rational(params.t) < params.s) ||
      !(params.s * instance.q <= 1))
    throw Error(ErrorKind::BadArgument, "rounding parameters must satisfy 1 < t < s <= 1/q");
  if (!(params.epsilon > 0) || !(params.epsilon < instance.q))
    throw Error(ErrorKind::BadArgument, "epsilon must lie strictly between 0 and q");
}

std::vector<int> deterministic_round(const Instance& instance, const CoverFamily& family,
                                     const FractionalSolution& frac,
                                     const RoundingParams& params) {
  instance.require_valid();
  const FrequencyStats stats = frequency_stats(instance);
  Rational tau_y = Rational(1) / params.s;
  Rational tau_x = tau_y / static_cast<long>(stats.b);
  if (!frac.exact) {
    const Rational slack = Rational(1e-9);
    tau_y -= slack;
    tau_x = (tau_y - slack) / static_cast<long>(stats.b);
  }
  std::vector<char> selected(family.size(), 0);
  for (int e = 0; e < instance.num_elements(); ++e) {
    if (frac.y[e] < tau_y) continue;
    for (int idx : family.omega_e[e])
      if (frac.x[idx] >= tau_x) selected[idx] = 1;
  }
  std::vector<int> out;
  for (int i = 0; i < family.size(); ++i)
    if (selected[i]) out.push_back(i);
  return out;
}

Phase2Result randomized_round(const Instance& instance, const CoverFamily& family,
                              const FractionalSolution& frac,
                              std::span<const int> remaining_covers,
                              const RoundingParams& params, long iterations, SplitMix64& rng) {
  (void)params;
  Phase2Result result;
  result.y_hat.assign(instance.num_elements(), 0);
  result.thetas.reserve(iterations);
  std::vector<char> selected(family.size(), 0);
  for (long it = 0; it < iterations; ++it) {
    const double theta = rng.next_theta();
    result.thetas.push_back(theta);
    const Rational theta_q(theta);
    for (int idx : remaining_covers) {
      if (!selected[idx] && frac.x[idx] >= theta_q) {
        selected[idx] = 1;
        result.s2_mask |= family.covers[idx];
      }
    }
  }
  for (int e = 0; e < instance.num_elements(); ++e)
    for (int idx : family.omega_e[e])
      if (selected[idx]) {
        result.y_hat[e] = 1;
        break;
      }
  return result;
}

RoundedOutcome run_algorithm1(const Instance& instance, const CoverFamily& family,
                              const CostOracle& oracle, const FractionalSolution& frac,
                              const RoundingParams& params, SplitMix64 rng,
                              const Phase1Closure& closure) {
  check_params(instance, params);
  const Rational P = instance.total_profit();
  const Rational target = params.expectation_mode ? Rational(instance.q * P)
                                                  : Rational((instance.q - params.epsilon) * P);

  RoundedOutcome out;
  out.exact = frac.exact && oracle.rational();
  out.s1_cover_indices = deterministic_round(instance, family, frac, params);
  for (int idx : out.s1_cover_indices) out.s1_rounded_mask |= family.covers[idx];
  out.s1_mask = closure ? closure(out.s1_rounded_mask) : out.s1_rounded_mask;

  const Rational p1 = covered_profit(instance, out.s1_mask);
  out.q_prime = (instance.q * P - p1) / P;
  out.y_hat.assign(instance.num_elements(), 0);

  if (p1 < target) {
    out.phase2_ran = true;
    std::vector<char> in_s1(family.size(), 0);
    for (int idx : out.s1_cover_indices) in_s1[idx] = 1;
    std::vector<int> remaining;
    remaining.reserve(family.size());
    for (int i = 0; i < family.size(); ++i)
      if (!in_s1[i]) remaining.push_back(i);

    const FrequencyStats stats = frequency_stats(instance);
    const long iterations = params.iterations > 0
                                ? params.iterations
                                : default_iterations(stats.b, params.s, params.t);
    out.iterations = iterations;
    {
      const auto covered1 = fully_covered(instance, out.s1_mask);
      std::vector<char> is_covered(instance.num_elements(), 0);
      for (int e : covered1) is_covered[e] = 1;
      for (int e = 0; e < instance.num_elements(); ++e)
        if (!is_covered[e]) out.e_prime.push_back(e);
    }
    Phase2Result phase2 =
        randomized_round(instance, family, frac, remaining, params, iterations, rng);
    out.s2_mask = phase2.s2_mask;
    out.y_hat = std::move(phase2.y_hat);
    out.thetas = std::move(phase2.thetas);
    for (int e : out.e_prime)
      if (out.y_hat[e]) out.credited_profit_s2 += instance.elements[e].profit;
  }

  out.union_mask = out.s1_mask | out.s2_mask;
  out.covered_profit = covered_profit(instance, out.union_mask);
  out.feasible = out.covered_profit >= target;
  out.cost = oracle.eval(out.union_mask);
  out.s1_cost = oracle.eval(out.s1_mask);
  out.s2_cost = oracle.eval(out.s2_mask);
  if (out.exact) {
    out.cost_exact = oracle.eval_exact(out.union_mask);
    out.s1_cost_exact = oracle.eval_exact(out.s1_mask);
    out.s2_cost_exact = oracle.eval_exact(out.s2_mask);
  }
  return out;
}

WhpResult solve_whp(const Instance& instance, const CoverFamily& family,
                    const CostOracle& oracle, const FractionalSolution& frac,
                    const RoundingParams& params, int max_reps, int threads,
                    const Phase1Closure& closure) {
  check_params(instance, params);
  const int n = instance.num_elements();
  if (max_reps <= 0)
    max_reps = static_cast<int>(std::ceil(4.0 * std::log(std::max(n, 2))));

  const FrequencyStats stats = frequency_stats(instance);
  const double sf = to_double(params.s);
  const double eps_f = to_double(params.epsilon);
  const double qf = to_double(instance.q);
  const double l = (1.0 - qf) / ((params.t - 1.0) * eps_f);
  const double per_iter = static_cast<double>(stats.b) * sf * std::log(sf / (sf - params.t));

  WhpResult result;
  result.reps_run = max_reps;
  result.s2_cost_bound = per_iter * l * frac.value_f;
  result.total_cost_bound = static_cast<double>(stats.b) * sf * frac.value_f +
                            result.s2_cost_bound;
  result.opt_cp = frac.value_f;
  result.opt_cp_exact = frac.value;
  result.opt_cp_is_exact = frac.exact;
  result.outcomes.resize(max_reps);

  SplitMix64 root(params.seed);
  auto run_range = [&](int lo, int hi) {
    for (int r = lo; r < hi; ++r)
      result.outcomes[r] =
          run_algorithm1(instance, family, oracle, frac, params, root.stream(r), closure);
  };
  threads = std::max(1, std::min(threads, max_reps));
  if (threads == 1) {
    run_range(0, max_reps);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (max_reps + threads - 1) / threads;
    for (int k = 0; k < threads; ++k) {
      const int lo = k * chunk, hi = std::min(max_reps, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  const double event_slack = 1e-9 * (1.0 + std::abs(result.s2_cost_bound));
  int best_any = -1, best_qualifying = -1;
  for (int r = 0; r < max_reps; ++r) {
    const RoundedOutcome& o = result.outcomes[r];
    if (!o.feasible) continue;
    ++result.feasible_count;
    if (best_any < 0 || o.cost < result.outcomes[best_any].cost) best_any = r;
    if (o.s2_cost <= result.s2_cost_bound + event_slack) {
      ++result.qualifying_count;
      if (best_qualifying < 0 || o.cost < result.outcomes[best_qualifying].cost)
        best_qualifying = r;
    }
  }
  if (best_any < 0)
    throw Error(ErrorKind::Infeasible,
                "no repetition reached the coverage target (" + std::to_string(max_reps) +
                    " repetitions)");
  result.warning_ratio = best_qualifying < 0;
  result.best_rep = result.warning_ratio ? best_any : best_qualifying;
  result.best = result.outcomes[result.best_rep];
  PMC_LOG_INFO("repetitions %d, feasible %d, within cost event %d, best #%d cost %g",
               max_reps, result.feasible_count, result.qualifying_count, result.best_rep,
               result.best.cost);
  return result;
}

WhpResult solve_whp(const Instance& instance, const RoundingParams& params, int max_reps,
                    int threads, const RelaxOptions& relax_options, const Limits& limits) {
  instance.require_valid();
  CoverFamily family = enumerate_covers(instance, limits);
  CostOracle oracle(instance);
  FractionalSolution frac = solve_relaxation(instance, family, oracle, relax_options, limits);
  return solve_whp(instance, family, oracle, frac, params, max_reps, threads);
}

}  // namespace pmc
