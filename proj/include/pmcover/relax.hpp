#pragma once

#include <cstdint>
#include <vector>

#include "pmcover/covers.hpp"
#include "pmcover/instance.hpp"
#include "pmcover/limits.hpp"

namespace pmc {

struct RelaxOptions {
  double tol = 1e-7;      // termination gap in float mode (exact mode closes to 0)
  long max_cuts = 0;      // 0: 10 * 2^min(|Omega|, 12)
  long max_pivots = 2000000;
  bool keep_cuts = true;  // retain cut vectors in diagnostics
};

// Optimal fractional solution of the cover-variable relaxation. Values are
// exact rationals; float-mode results are stored through the (exact)
// dyadic embedding of the computed doubles.
struct FractionalSolution {
  bool exact = false;
  std::vector<Rational> x;  // per cover (or per set on the r = 1 path)
  std::vector<Rational> y;  // per element
  Rational value = 0;       // extension value at x*
  double value_f = 0.0;

  struct Diagnostics {
    int cuts = 0;
    long lp_pivots = 0;
    int lp_solves = 0;
    double final_gap = 0.0;
    std::vector<std::vector<Rational>> cut_vectors;
  } diag;
};

// Cutting-plane solve of the relaxation: an epigraph variable over the
// induced cost's extension, greedy-vector cuts, profit and coverage rows,
// x and y capped at 1. Requires a monotone oracle unless every cover is a
// singleton (where the induced cost coincides with the base oracle).
FractionalSolution solve_relaxation(const Instance& instance, const CoverFamily& family,
                                    const CostOracle& oracle, const RelaxOptions& options = {},
                                    const Limits& limits = {});

// r = 1 specialization with set variables; valid for non-monotone
// submodular costs because the extension only needs submodularity.
FractionalSolution solve_scpsc_relaxation(const Instance& instance, const CostOracle& oracle,
                                          const RelaxOptions& options = {},
                                          const Limits& limits = {});

template <typename T>
struct SeparationResult {
  std::vector<int> minimizer;
  T value{};
};

// Brute-force minimizer of g(W) = rho(W) - sum_{A in W} c_A over all
// sub-families; certifies cut validity and weak duality in tests.
SeparationResult<Rational> dual_separation_g_min(const CoverFamily& family,
                                                 const InducedCost& cost,
                                                 std::span<const Rational> modular_weights,
                                                 const Limits& limits = {});
SeparationResult<double> dual_separation_g_min_f(const CoverFamily& family,
                                                 const InducedCost& cost,
                                                 std::span<const double> modular_weights,
                                                 const Limits& limits = {});

}  // namespace pmc
