#include "pmcover/scpsc.hpp"

#include <bit>
#include <cmath>

#include "pmcover/covers.hpp"
#include "pmcover/log.hpp"
#include "pmcover/relax.hpp"

namespace pmc {

namespace {

void require_unit_requirements(const Instance& instance) {
  for (const auto& elem : instance.elements)
    if (elem.requirement != 1)
      throw Error(ErrorKind::BadArgument,
                  "the r = 1 pipeline requires requirement 1 for every element (element '" +
                      elem.id + "' has " + std::to_string(elem.requirement) + ")");
}

}  // namespace

GammaClosure::Result GammaClosure::eval(std::uint64_t subcollection) const {
  const int m = oracle_->num_sets();
  const std::uint64_t full = (m == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
  if (subcollection & ~full)
    throw Error(ErrorKind::BadArgument, "gamma closure: unknown set in sub-collection");

  std::vector<int> free_sets;
  for (int i = 0; i < m; ++i)
    if (!(subcollection & (std::uint64_t{1} << i))) free_sets.push_back(i);
  if (static_cast<int>(free_sets.size()) > limits_.gamma_max_free)
    throw Error(ErrorKind::GuardExceeded,
                "gamma closure enumeration is limited to " +
                    std::to_string(limits_.gamma_max_free) + " free sets");

  const bool exact = oracle_->rational();
  Result best;
  best.minimizer = subcollection;
  if (exact)
    best.value_exact = oracle_->eval_exact(subcollection);
  else
    best.value = oracle_->eval(subcollection);

  const std::uint64_t count = std::uint64_t{1} << free_sets.size();
  for (std::uint64_t pick = 1; pick < count; ++pick) {
    std::uint64_t candidate = subcollection;
    for (std::size_t j = 0; j < free_sets.size(); ++j)
      if (pick & (std::uint64_t{1} << j)) candidate |= std::uint64_t{1} << free_sets[j];
    bool better = false, tie = false;
    if (exact) {
      Rational v = oracle_->eval_exact(candidate);
      better = v < best.value_exact;
      tie = v == best.value_exact;
      if (better) best.value_exact = v;
    } else {
      double v = oracle_->eval(candidate);
      better = v < best.value;
      tie = v == best.value;
      if (better) best.value = v;
    }
    if (better) {
      best.minimizer = candidate;
    } else if (tie) {
      int pa = std::popcount(candidate), pb = std::popcount(best.minimizer);
      if (pa < pb || (pa == pb && lex_mask_less(candidate, best.minimizer)))
        best.minimizer = candidate;
    }
  }
  if (exact) best.value = to_double(best.value_exact);
  return best;
}

namespace {

struct ScpscPipeline {
  CoverFamily family;
  CostOracle oracle;
  FractionalSolution frac;
  GammaClosure gamma;
  double lemma_bound;  // b * s * opt_cp, slightly relaxed in float mode

  ScpscPipeline(const Instance& instance, const RoundingParams& params,
                const RelaxOptions& relax_options, const Limits& limits)
      : family(enumerate_covers(instance, limits)),
        oracle(instance),
        frac(solve_relaxation(instance, family, oracle, relax_options, limits)),
        gamma(oracle, limits) {
    const FrequencyStats stats = frequency_stats(instance);
    lemma_bound = static_cast<double>(stats.b) * to_double(params.s) * frac.value_f;
    lemma_bound += 1e-9 * (1.0 + std::abs(lemma_bound));
  }

  Phase1Closure closure() {
    return [this](std::uint64_t s1) {
      GammaClosure::Result r = gamma.eval(s1);
      if (r.value > lemma_bound)
        throw Error(ErrorKind::Internal, "phase-1 closure cost exceeds b*s*opt_cp");
      return r.minimizer;
    };
  }
};

}  // namespace

RoundedOutcome solve_scpsc(const Instance& instance, const RoundingParams& params,
                           SplitMix64 rng, const RelaxOptions& relax_options,
                           const Limits& limits) {
  instance.require_valid();
  require_unit_requirements(instance);
  ScpscPipeline pipe(instance, params, relax_options, limits);
  return run_algorithm1(instance, pipe.family, pipe.oracle, pipe.frac, params, rng,
                        pipe.closure());
}

WhpResult solve_whp_scpsc(const Instance& instance, const RoundingParams& params,
                          int max_reps, int threads, const RelaxOptions& relax_options,
                          const Limits& limits) {
  instance.require_valid();
  require_unit_requirements(instance);
  ScpscPipeline pipe(instance, params, relax_options, limits);
  return solve_whp(instance, pipe.family, pipe.oracle, pipe.frac, params, max_reps, threads,
                   pipe.closure());
}

}  // namespace pmc
