#include "pmcover/relax.hpp"

#include <algorithm>
#include <bit>

#include "pmcover/log.hpp"
#include "pmcover/lovasz.hpp"
#include "pmcover/simplex.hpp"

namespace pmc {

namespace {

bool all_singletons(const CoverFamily& family) {
  for (const auto& sets : family.cover_sets)
    if (sets.size() != 1) return false;
  return true;
}

template <typename T>
T from_rational(const Rational& r) {
  if constexpr (std::is_same_v<T, double>) {
    return to_double(r);
  } else {
    return r;
  }
}

// Static rows of the relaxation plus the accumulated epigraph cuts.
// Variables: x per cover, y per element, then z = z_pos - z_neg.
template <typename T>
struct RelaxationModel {
  const Instance* instance;
  const CoverFamily* family;
  int m, n;

  explicit RelaxationModel(const Instance& inst, const CoverFamily& fam)
      : instance(&inst), family(&fam), m(fam.size()), n(inst.num_elements()) {}

  int zpos() const { return m + n; }
  int zneg() const { return m + n + 1; }

  LpProblem<T> build(const std::vector<std::vector<T>>& cuts) const {
    LpProblem<T> lp;
    lp.nvars = m + n + 2;
    lp.objective.assign(lp.nvars, T{});
    lp.objective[zpos()] = T(1);
    lp.objective[zneg()] = T(-1);

    auto& profit = lp.add_row(Sense::Ge, from_rational<T>(instance->q * instance->total_profit()));
    for (int e = 0; e < n; ++e)
      profit.a[m + e] = from_rational<T>(instance->elements[e].profit);

    for (int e = 0; e < n; ++e) {
      auto& row = lp.add_row(Sense::Ge, T{});
      for (int idx : family->omega_e[e]) row.a[idx] = T(1);
      row.a[m + e] = T(-1);
    }
    for (int i = 0; i < m; ++i) lp.add_row(Sense::Le, T(1)).a[i] = T(1);
    for (int e = 0; e < n; ++e) lp.add_row(Sense::Le, T(1)).a[m + e] = T(1);

    for (const auto& w : cuts) {
      auto& row = lp.add_row(Sense::Le, T{});
      for (int i = 0; i < m; ++i) row.a[i] = w[i];
      row.a[zpos()] = T(-1);
      row.a[zneg()] = T(1);
    }
    return lp;
  }
};

template <typename T>
FractionalSolution cutting_plane(const Instance& instance, const CoverFamily& family,
                                 const SetFunctionView<T>& rho, const RelaxOptions& options) {
  RelaxationModel<T> model(instance, family);
  const int m = model.m;
  const T tol = std::is_same_v<T, double> ? T(options.tol) : T{};
  const long max_cuts =
      options.max_cuts > 0 ? options.max_cuts : 10L * (1L << std::min(m, 12));

  std::vector<std::vector<T>> cuts;
  {
    // Seed cut at the all-ones point; every later cut comes from the LP optimum.
    std::vector<T> ones(m, T(1));
    cuts.push_back(greedy_subgradient<T>(rho, ones));
  }

  FractionalSolution out;
  out.exact = !std::is_same_v<T, double>;
  long pivots = 0;
  int solves = 0;
  while (true) {
    LpSolution<T> sol = solve_lp<T>(model.build(cuts), options.max_pivots);
    pivots += sol.pivots;
    ++solves;
    if (sol.status != LpStatus::Optimal)
      throw Error(ErrorKind::Internal,
                  "relaxation LP did not solve to optimality (status " +
                      std::to_string(static_cast<int>(sol.status)) + ")");
    std::vector<T> x(sol.x.begin(), sol.x.begin() + m);
    if constexpr (std::is_same_v<T, double>) {
      for (double& v : x) {
        if (v < -1e-6)
          throw Error(ErrorKind::Internal, "relaxation LP produced a negative coordinate");
        if (v < 0) v = 0;
      }
    }
    T z = sol.x[model.zpos()] - sol.x[model.zneg()];
    T h = lovasz_eval<T>(rho, x);
    bool done = h - z <= tol;
    if (!done && static_cast<long>(cuts.size()) < max_cuts) {
      std::vector<T> w = greedy_subgradient<T>(rho, x);
      bool duplicate = std::any_of(cuts.begin(), cuts.end(),
                                   [&](const std::vector<T>& c) { return c == w; });
      if (!duplicate) {
        PMC_LOG_DEBUG("cut %zu: gap %g", cuts.size(), to_double(Rational(h - z)));
        cuts.push_back(std::move(w));
        continue;
      }
      // A violated cut can never repeat; only float drift gets here.
      if (out.exact)
        throw Error(ErrorKind::Internal, "duplicate cut in exact cutting-plane loop");
      PMC_LOG_ERROR("duplicate cut with open gap %g; returning current iterate",
                    to_double(Rational(h - z)));
    } else if (!done) {
      PMC_LOG_ERROR("cutting-plane loop hit the cut cap with gap still open");
    }
    {
      out.x.reserve(m);
      for (const T& v : x) out.x.push_back(Rational(v));
      out.y.reserve(model.n);
      for (int e = 0; e < model.n; ++e) out.y.push_back(Rational(sol.x[m + e]));
      out.value = Rational(h);
      out.value_f = static_cast<double>(to_double(out.value));
      out.diag.cuts = static_cast<int>(cuts.size());
      out.diag.lp_pivots = pivots;
      out.diag.lp_solves = solves;
      out.diag.final_gap = to_double(Rational(h - z));
      if (options.keep_cuts) {
        out.diag.cut_vectors.reserve(cuts.size());
        for (const auto& w : cuts) {
          std::vector<Rational> wq;
          wq.reserve(w.size());
          for (const T& v : w) wq.push_back(Rational(v));
          out.diag.cut_vectors.push_back(std::move(wq));
        }
      }
      // Float-mode extraction can sit a hair outside the box.
      for (auto& v : out.x) v = std::min(Rational(1), std::max(Rational(0), v));
      for (auto& v : out.y) v = std::min(Rational(1), std::max(Rational(0), v));
      return out;
    }
  }
}

}  // namespace

FractionalSolution solve_relaxation(const Instance& instance, const CoverFamily& family,
                                    const CostOracle& oracle, const RelaxOptions& options,
                                    const Limits& limits) {
  (void)limits;
  instance.require_valid();
  if (!oracle.monotone() && !all_singletons(family))
    throw Error(ErrorKind::BadArgument,
                "the cover-variable relaxation needs a monotone cost oracle unless every "
                "cover is a singleton");
  InducedCost rho(family, oracle);
  if (oracle.rational()) return cutting_plane<Rational>(instance, family, rho.view_exact(), options);
  return cutting_plane<double>(instance, family, rho.view(), options);
}

FractionalSolution solve_scpsc_relaxation(const Instance& instance, const CostOracle& oracle,
                                          const RelaxOptions& options, const Limits& limits) {
  instance.require_valid();
  for (const auto& elem : instance.elements)
    if (elem.requirement != 1)
      throw Error(ErrorKind::BadArgument,
                  "set-variable relaxation requires requirement 1 for every element "
                  "(element '" + elem.id + "' has " + std::to_string(elem.requirement) + ")");
  CoverFamily family = enumerate_covers(instance, limits);
  if (family.size() != instance.num_sets())
    throw Error(ErrorKind::Internal, "singleton cover family does not match the sets");
  return solve_relaxation(instance, family, oracle, options, limits);
}

namespace {

template <typename T, typename Eval>
SeparationResult<T> g_min_impl(const CoverFamily& family, Eval&& rho_of_mask,
                               std::span<const T> c, const Limits& limits) {
  const int m = family.size();
  if (m > limits.gmin_max_covers)
    throw Error(ErrorKind::GuardExceeded, "dual separation check is limited to " +
                                              std::to_string(limits.gmin_max_covers) +
                                              " covers");
  if (static_cast<int>(c.size()) != m)
    throw Error(ErrorKind::BadArgument, "dual separation: weight vector size mismatch");

  const std::uint64_t count = std::uint64_t{1} << m;
  std::vector<std::uint64_t> unions(count, 0);
  std::vector<T> csum(count, T{});
  SeparationResult<T> best;  // empty family: g = 0
  best.value = T{};
  std::uint64_t best_mask = 0;
  auto better = [&](const T& value, std::uint64_t mask) {
    if (value < best.value) return true;
    if (best.value < value) return false;
    int pa = std::popcount(mask), pb = std::popcount(best_mask);
    if (pa != pb) return pa < pb;
    return mask < best_mask;  // ascending-index lex on equal cardinality
  };
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    int low = std::countr_zero(mask);
    std::uint64_t rest = mask & (mask - 1);
    unions[mask] = unions[rest] | family.covers[low];
    csum[mask] = csum[rest] + c[low];
    T g = rho_of_mask(unions[mask]) - csum[mask];
    if (better(g, mask)) {
      best.value = g;
      best_mask = mask;
    }
  }
  for (int i = 0; i < m; ++i)
    if (best_mask & (std::uint64_t{1} << i)) best.minimizer.push_back(i);
  return best;
}

}  // namespace

SeparationResult<Rational> dual_separation_g_min(const CoverFamily& family,
                                                 const InducedCost& cost,
                                                 std::span<const Rational> modular_weights,
                                                 const Limits& limits) {
  return g_min_impl<Rational>(
      family, [&](std::uint64_t mask) { return cost.oracle().eval_exact(mask); },
      modular_weights, limits);
}

SeparationResult<double> dual_separation_g_min_f(const CoverFamily& family,
                                                 const InducedCost& cost,
                                                 std::span<const double> modular_weights,
                                                 const Limits& limits) {
  return g_min_impl<double>(
      family, [&](std::uint64_t mask) { return cost.oracle().eval(mask); }, modular_weights,
      limits);
}

}  // namespace pmc
