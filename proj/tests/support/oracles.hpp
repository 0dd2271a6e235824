#pragma once

// Independent oracles used to freeze expected values: these deliberately
// avoid the code paths they certify.

#include <cmath>
#include <cstdint>
#include <vector>

#include "pmcover/covers.hpp"
#include "pmcover/instance.hpp"
#include "pmcover/simplex.hpp"

namespace pmc::test {

// Convex-closure LP: lambda weights over every sub-family of Omega plus
// the y variables. The Lovasz extension of a submodular function matches
// the convex closure on the unit box, so this LP equals the cutting-plane
// optimum while sharing none of its machinery.
template <typename T>
T closure_lp_value(const Instance& inst, const CoverFamily& family,
                   const CostOracle& oracle) {
  const int m = family.size();
  const int n = inst.num_elements();
  if (m > 12) throw Error(ErrorKind::GuardExceeded, "closure LP oracle: family too large");
  const std::uint64_t count = std::uint64_t{1} << m;

  auto to_t = [](const Rational& r) {
    if constexpr (std::is_same_v<T, double>)
      return to_double(r);
    else
      return r;
  };

  LpProblem<T> lp;
  lp.nvars = static_cast<int>(count) + n;  // lambda per sub-family, then y
  lp.objective.assign(lp.nvars, T{});
  for (std::uint64_t w = 0; w < count; ++w) {
    std::uint64_t sets = 0;
    for (int i = 0; i < m; ++i)
      if (w & (std::uint64_t{1} << i)) sets |= family.covers[i];
    if constexpr (std::is_same_v<T, double>)
      lp.objective[w] = oracle.eval(sets);
    else
      lp.objective[w] = oracle.eval_exact(sets);
  }

  auto& convex = lp.add_row(Sense::Eq, T(1));
  for (std::uint64_t w = 0; w < count; ++w) convex.a[w] = T(1);

  auto& profit = lp.add_row(Sense::Ge, to_t(inst.q * inst.total_profit()));
  for (int e = 0; e < n; ++e) profit.a[count + e] = to_t(inst.elements[e].profit);

  for (int e = 0; e < n; ++e) {
    auto& row = lp.add_row(Sense::Ge, T{});
    for (std::uint64_t w = 0; w < count; ++w) {
      int hits = 0;
      for (int idx : family.omega_e[e])
        if (w & (std::uint64_t{1} << idx)) ++hits;
      if (hits > 0) row.a[w] = T(hits);
    }
    row.a[count + e] = T(-1);
  }
  for (int e = 0; e < n; ++e) lp.add_row(Sense::Le, T(1)).a[count + e] = T(1);

  LpSolution<T> sol = solve_lp<T>(lp, 4000000);
  if (sol.status != LpStatus::Optimal)
    throw Error(ErrorKind::Internal, "closure LP oracle did not reach optimality");
  return sol.value;
}

// Brute-force grid search over the two-cover fractional space of the
// high-gap fixture (covers {S1,S3} and {S2,S3}); resolution 1/steps.
inline double grid_min_two_cover(double m_cost, int steps = 400) {
  const double rho1 = 1.0 + m_cost;  // either single cover
  const double rho12 = 2.0 + m_cost;
  double best = rho12;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j <= steps; ++j) {
      const double x1 = static_cast<double>(i) / steps;
      const double x2 = static_cast<double>(j) / steps;
      if (x1 + x2 < 1.0) continue;  // y_e <= x_cover(e), need y1 + y2 >= 1
      const double hi = std::max(x1, x2), lo = std::min(x1, x2);
      const double value = (hi - lo) * rho1 + lo * rho12;
      best = std::min(best, value);
    }
  }
  return best;
}

struct MeanStd {
  double mean = 0;
  double stddev = 0;
  long n = 0;
};

inline MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  out.n = static_cast<long>(xs.size());
  if (out.n == 0) return out;
  for (double v : xs) out.mean += v;
  out.mean /= static_cast<double>(out.n);
  double ss = 0;
  for (double v : xs) ss += (v - out.mean) * (v - out.mean);
  out.stddev = out.n > 1 ? std::sqrt(ss / static_cast<double>(out.n - 1)) : 0.0;
  return out;
}

// Standard error for an empirical frequency, floored by the variance at
// the hypothesized rate so zero-count cells do not degenerate.
inline double freq_stderr(double p_hat, double p_bound, long n) {
  const double v =
      std::max({p_hat * (1.0 - p_hat), p_bound * (1.0 - p_bound), 1e-4});
  return std::sqrt(v / static_cast<double>(n));
}

}  // namespace pmc::test
