#include "pmcover/exact.hpp"

#include <algorithm>
#include <bit>

#include "pmcover/covers.hpp"
#include "pmcover/simplex.hpp"

namespace pmc {

ExactResult exact_solve(const Instance& instance, const Limits& limits) {
  instance.require_valid();
  const int m = instance.num_sets();
  if (m > limits.exact_max_sets)
    throw Error(ErrorKind::GuardExceeded,
                "exact enumeration is limited to " + std::to_string(limits.exact_max_sets) +
                    " sets");
  CostOracle oracle(instance);
  const Rational target = instance.q * instance.total_profit();

  // Masks in (cardinality, ascending-index lex) order.
  std::vector<std::uint64_t> order;
  order.reserve(std::size_t{1} << m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) order.push_back(mask);
  std::sort(order.begin(), order.end(), [](std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return lex_mask_less(a, b);
  });

  ExactResult result;
  result.exact = oracle.rational();
  result.enumerated = order.size();
  bool found = false;
  Rational best_q = 0;
  double best_f = 0;
  for (std::uint64_t mask : order) {
    if (covered_profit(instance, mask) < target) continue;
    ++result.feasible_count;
    if (result.exact) {
      Rational value = oracle.eval_exact(mask);
      if (!found || value < best_q) {
        found = true;
        best_q = value;
        result.best_mask = mask;
      }
    } else {
      double value = oracle.eval(mask);
      if (!found || value < best_f) {
        found = true;
        best_f = value;
        result.best_mask = mask;
      }
    }
  }
  if (!found)
    throw Error(ErrorKind::Infeasible, "no sub-collection reaches the coverage target");
  result.optimum_exact = best_q;
  result.optimum = result.exact ? to_double(best_q) : best_f;
  for (int i = 0; i < m; ++i)
    if (result.best_mask & (std::uint64_t{1} << i)) result.best_sets.push_back(i);
  return result;
}

namespace {

// min sum c_S x_S subject to sum p_e y_e >= qP, sum_{S : e in S} x_S >=
// r_e y_e, x >= 0, 0 <= y <= 1.
template <typename T>
T natural_lp_impl(const Instance& instance) {
  const int m = instance.num_sets();
  const int n = instance.num_elements();
  LpProblem<T> lp;
  lp.nvars = m + n;
  lp.objective.assign(lp.nvars, T{});
  for (int i = 0; i < m; ++i) {
    if constexpr (std::is_same_v<T, double>)
      lp.objective[i] = to_double(instance.cost.weights[i]);
    else
      lp.objective[i] = instance.cost.weights[i];
  }
  auto& profit = lp.add_row(Sense::Ge, [&] {
    if constexpr (std::is_same_v<T, double>)
      return to_double(instance.q * instance.total_profit());
    else
      return instance.q * instance.total_profit();
  }());
  for (int e = 0; e < n; ++e) {
    if constexpr (std::is_same_v<T, double>)
      profit.a[m + e] = to_double(instance.elements[e].profit);
    else
      profit.a[m + e] = instance.elements[e].profit;
  }
  for (int e = 0; e < n; ++e) {
    auto& row = lp.add_row(Sense::Ge, T{});
    for (int s : instance.derived.elem_sets[e]) row.a[s] = T(1);
    row.a[m + e] = T(-instance.elements[e].requirement);
  }
  for (int e = 0; e < n; ++e) lp.add_row(Sense::Le, T(1)).a[m + e] = T(1);

  LpSolution<T> sol = solve_lp<T>(lp);
  if (sol.status != LpStatus::Optimal)
    throw Error(ErrorKind::Internal, "natural LP did not solve to optimality");
  return sol.value;
}

}  // namespace

NaturalLpResult natural_lp_value(const Instance& instance) {
  instance.require_valid();
  if (instance.cost.kind != CostKind::Linear)
    throw Error(ErrorKind::BadArgument, "the natural LP is defined for linear costs only");
  NaturalLpResult result;
  result.exact = true;
  result.value_exact = natural_lp_impl<Rational>(instance);
  result.value = to_double(result.value_exact);
  return result;
}

GapReport gap_report(const Instance& instance, const RelaxOptions& options,
                     const Limits& limits) {
  instance.require_valid();
  if (instance.cost.kind != CostKind::Linear)
    throw Error(ErrorKind::BadArgument, "gap report is defined for linear costs only");
  GapReport report;
  report.natural = natural_lp_value(instance);
  CoverFamily family = enumerate_covers(instance, limits);
  CostOracle oracle(instance);
  report.reformulated = solve_relaxation(instance, family, oracle, options, limits);
  report.integer = exact_solve(instance, limits);
  report.natural_gap =
      report.natural.value > 0 ? report.integer.optimum / report.natural.value : 0.0;
  report.reformulated_gap =
      report.reformulated.value_f > 0 ? report.integer.optimum / report.reformulated.value_f
                                      : 0.0;
  return report;
}

}  // namespace pmc
