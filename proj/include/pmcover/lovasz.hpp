#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <type_traits>
#include <vector>

#include "pmcover/error.hpp"
#include "pmcover/rational.hpp"
#include "pmcover/rng.hpp"

namespace pmc {

// A normalized set function over ground indices {0, ..., n-1}. The
// evaluator receives an arbitrary subset as an index list (order and
// duplicates irrelevant) and must return 0 on the empty subset.
template <typename T>
struct SetFunctionView {
  int n = 0;
  std::function<T(std::span<const int>)> eval;

  static SetFunctionView from_mask_fn(int n, std::function<T(std::uint64_t)> f) {
    return SetFunctionView{n, [f = std::move(f)](std::span<const int> idx) {
                             std::uint64_t mask = 0;
                             for (int i : idx) mask |= (std::uint64_t{1} << i);
                             return f(mask);
                           }};
  }
};

// Ground indices ordered by descending coordinate, ties by ascending
// index. The fixed tie rule makes subgradients and cuts deterministic.
template <typename T>
std::vector<int> descending_order(std::span<const T> x) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (x[a] != x[b]) return x[b] < x[a];
    return a < b;
  });
  return order;
}

// Sorted-prefix form: sum_i (x_{j_i} - x_{j_{i+1}}) f(E_i) + x_{j_n} f(E_n).
// Defined for any x >= 0; positively homogeneous.
template <typename T>
T lovasz_eval(const SetFunctionView<T>& fn, std::span<const T> x) {
  if (static_cast<int>(x.size()) != fn.n)
    throw Error(ErrorKind::BadArgument, "lovasz_eval: dimension mismatch");
  for (const T& v : x)
    if (v < T{}) throw Error(ErrorKind::BadArgument, "lovasz_eval: negative coordinate");
  std::vector<int> order = descending_order(x);
  std::vector<int> prefix;
  prefix.reserve(fn.n);
  T total{};
  for (int i = 0; i < fn.n; ++i) {
    prefix.push_back(order[i]);
    T weight = x[order[i]];
    if (i + 1 < fn.n) weight -= x[order[i + 1]];
    if (weight != T{}) total += weight * fn.eval(prefix);
  }
  return total;
}

// Threshold form on [0,1]^n: the exact integral of f({i : x_i >= theta})
// over theta in [0,1], summed over its piecewise-constant intervals.
template <typename T>
T lovasz_eval_theta(const SetFunctionView<T>& fn, std::span<const T> x) {
  if (static_cast<int>(x.size()) != fn.n)
    throw Error(ErrorKind::BadArgument, "lovasz_eval_theta: dimension mismatch");
  for (const T& v : x)
    if (v < T{} || v > T(1))
      throw Error(ErrorKind::BadArgument, "lovasz_eval_theta: coordinate outside [0,1]");
  std::vector<int> order = descending_order(x);
  std::vector<int> prefix;
  prefix.reserve(fn.n);
  T total{};
  // On (x_{j_{i+1}}, x_{j_i}] the level set is {j_1..j_i}; above x_{j_1}
  // it is empty and contributes nothing for a normalized function.
  for (int i = 0; i < fn.n; ++i) {
    prefix.push_back(order[i]);
    if (i + 1 < fn.n && x[order[i + 1]] == x[order[i]]) continue;  // same group
    T hi = x[order[i]];
    T lo = (i + 1 < fn.n) ? x[order[i + 1]] : T{};
    if (hi != lo) total += (hi - lo) * fn.eval(prefix);
  }
  return total;
}

// Edmonds' greedy vector at x: prefix marginals in the tie-broken order.
// For submodular fn it lies in the base polytope, and w . x equals the
// extension value at x, which is what makes it an epigraph cut.
template <typename T>
std::vector<T> greedy_subgradient(const SetFunctionView<T>& fn, std::span<const T> x) {
  if (static_cast<int>(x.size()) != fn.n)
    throw Error(ErrorKind::BadArgument, "greedy_subgradient: dimension mismatch");
  for (const T& v : x)
    if (v < T{})
      throw Error(ErrorKind::BadArgument, "greedy_subgradient: negative coordinate");
  std::vector<int> order = descending_order(x);
  std::vector<int> prefix;
  prefix.reserve(fn.n);
  std::vector<T> w(fn.n);
  T prev{};
  for (int i = 0; i < fn.n; ++i) {
    prefix.push_back(order[i]);
    T cur = fn.eval(prefix);
    w[order[i]] = cur - prev;
    prev = cur;
  }
  return w;
}

// One violated instance of the submodularity inequality
// f(E' u E0) - f(E') <= f(E'' u E0) - f(E''), reported as masks.
template <typename T>
struct SubmodularViolation {
  std::uint64_t e_dprime = 0;  // E''
  std::uint64_t e_prime = 0;   // E'  (contains E'')
  std::uint64_t e_zero = 0;    // E0  (disjoint from E')
  T lhs{};                     // f(E' u E0) - f(E')
  T rhs{};                     // f(E'' u E0) - f(E'')
};

template <typename T>
struct SubmodularReport {
  bool submodular = true;
  bool monotone = true;
  bool nonnegative = true;
  std::vector<SubmodularViolation<T>> violations;
  std::vector<std::uint64_t> monotone_violations;  // masks A with f(A+i) < f(A)
  std::vector<std::uint64_t> negative_sets;
};

// Exhaustive check over the canonical triples E'' = A, E' = A u {j},
// E0 = {i}: violation-free here is equivalent to submodularity, and each
// hit is itself a valid (E'', E', E0) witness.
template <typename T>
SubmodularReport<T> check_submodular(const SetFunctionView<T>& fn, int max_ground = 16,
                                     std::size_t max_violations = 64) {
  if (fn.n > max_ground)
    throw Error(ErrorKind::GuardExceeded, "check_submodular: ground set too large");
  const int n = fn.n;
  const std::uint64_t full = (n >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  std::vector<T> table(std::size_t{1} << n);
  std::vector<int> idx;
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    idx.clear();
    for (int i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) idx.push_back(i);
    table[mask] = fn.eval(idx);
  }

  T tol{};
  if constexpr (std::is_same_v<T, double>) tol = 1e-12;
  SubmodularReport<T> report;
  for (std::uint64_t a = 0; a <= full; ++a) {
    if (table[a] < -tol) {
      report.nonnegative = false;
      if (report.negative_sets.size() < max_violations) report.negative_sets.push_back(a);
    }
    for (int i = 0; i < n; ++i) {
      std::uint64_t bi = std::uint64_t{1} << i;
      if (a & bi) continue;
      if (table[a | bi] < table[a] - tol) {
        report.monotone = false;
        if (report.monotone_violations.size() < max_violations)
          report.monotone_violations.push_back(a);
      }
      for (int j = i + 1; j < n; ++j) {
        std::uint64_t bj = std::uint64_t{1} << j;
        if (a & bj) continue;
        // f(A+i) + f(A+j) >= f(A+i+j) + f(A), symmetric in i and j, so a
        // hit yields a witness triple under both labelings.
        if (table[a | bi | bj] + table[a] > table[a | bi] + table[a | bj] + tol) {
          report.submodular = false;
          if (report.violations.size() < max_violations)
            report.violations.push_back({a, a | bj, bi, table[a | bj | bi] - table[a | bj],
                                         table[a | bi] - table[a]});
          if (report.violations.size() < max_violations)
            report.violations.push_back({a, a | bi, bj, table[a | bj | bi] - table[a | bi],
                                         table[a | bj] - table[a]});
        }
      }
    }
  }
  return report;
}

struct ConvexityVerdict {
  long trials = 0;
  long violations = 0;
  // First violating triple, if any, for diagnosis.
  std::vector<double> witness_x, witness_y;
  double witness_lambda = 0.0;
  double worst_gap = 0.0;  // max of lhs - rhs over samples
};

// Samples lambda-combinations of random points of [0,1]^n and tests the
// convexity inequality at tolerance tol. Submodular functions should pass;
// for a non-submodular function the sampler is expected to find a witness.
inline ConvexityVerdict check_convexity_samples(const SetFunctionView<double>& fn,
                                                long trials, SplitMix64& rng,
                                                double tol = 1e-9) {
  ConvexityVerdict verdict;
  verdict.trials = trials;
  const int n = fn.n;
  std::vector<double> x(n), y(n), mid(n);
  for (long t = 0; t < trials; ++t) {
    for (int i = 0; i < n; ++i) x[i] = rng.next_unit();
    for (int i = 0; i < n; ++i) y[i] = rng.next_unit();
    double lambda = rng.next_unit();
    for (int i = 0; i < n; ++i) mid[i] = lambda * x[i] + (1.0 - lambda) * y[i];
    double lhs = lovasz_eval<double>(fn, mid);
    double rhs = lambda * lovasz_eval<double>(fn, x) + (1.0 - lambda) * lovasz_eval<double>(fn, y);
    double gap = lhs - rhs;
    if (gap > verdict.worst_gap) verdict.worst_gap = gap;
    if (gap > tol) {
      if (verdict.violations == 0) {
        verdict.witness_x = x;
        verdict.witness_y = y;
        verdict.witness_lambda = lambda;
      }
      ++verdict.violations;
    }
  }
  return verdict;
}

}  // namespace pmc
