#pragma once

#include <cstdint>
#include <vector>

#include "pmcover/instance.hpp"
#include "pmcover/rounding.hpp"

namespace pmc {

// Monotone envelope of a possibly non-monotone submodular cost:
// gamma(S') = min { rho0(S'') : S' subseteq S'' subseteq S }.
class GammaClosure {
 public:
  GammaClosure(const CostOracle& oracle, const Limits& limits = {})
      : oracle_(&oracle), limits_(limits) {}

  struct Result {
    double value = 0;
    Rational value_exact = 0;
    std::uint64_t minimizer = 0;  // contains the input sub-collection
  };

  // Exhaustive over the free sets, guarded by limits. Ties broken by
  // cardinality then ascending-index lex order, so a monotone oracle
  // always gets its own input back.
  Result eval(std::uint64_t subcollection) const;

  const CostOracle& oracle() const { return *oracle_; }

 private:
  const CostOracle* oracle_;
  Limits limits_;
};

// The r = 1 pipeline: set-variable relaxation, threshold rounding with
// b = f, replacement of the phase-1 collection by its gamma minimizer,
// then the usual theta-sampling phase.
RoundedOutcome solve_scpsc(const Instance& instance, const RoundingParams& params,
                           SplitMix64 rng, const RelaxOptions& relax_options = {},
                           const Limits& limits = {});

WhpResult solve_whp_scpsc(const Instance& instance, const RoundingParams& params,
                          int max_reps = 0, int threads = 1,
                          const RelaxOptions& relax_options = {}, const Limits& limits = {});

}  // namespace pmc
