#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pmcover/covers.hpp"
#include "pmcover/instance.hpp"
#include "pmcover/relax.hpp"
#include "pmcover/rng.hpp"

namespace pmc {

struct RoundingParams {
  Rational s = 2;          // 1 < t < s <= 1/q
  double t = 1.5;
  Rational epsilon = 0;    // 0 < epsilon < q
  long iterations = 0;     // 0: ceil(b * s * ln(s / (s - t)))
  bool expectation_mode = false;  // phase-1 stop and feasibility at qP instead of (q-eps)P
  std::uint64_t seed = 0;

  // s = 1/q, t = 1/sqrt(q), epsilon = q/20.
  static RoundingParams defaults(const Instance& instance);
};

long default_iterations(std::uint64_t b, const Rational& s, double t);

struct RoundedOutcome {
  std::uint64_t s1_mask = 0;          // phase-1 collection (post-closure when one is used)
  std::uint64_t s1_rounded_mask = 0;  // union of the covers rounded in phase 1
  std::uint64_t s2_mask = 0;
  std::uint64_t union_mask = 0;
  std::vector<int> s1_cover_indices;

  Rational covered_profit = 0;  // of the union, by true coverage
  Rational q_prime = 0;         // (qP - p(C(S1)))/P
  Rational credited_profit_s2 = 0;  // sum of p_e over E' with y_hat_e = 1

  bool exact = false;
  double cost = 0, s1_cost = 0, s2_cost = 0;
  Rational cost_exact = 0, s1_cost_exact = 0, s2_cost_exact = 0;

  std::vector<char> y_hat;   // per element: some cover of Omega_e selected in phase 2
  std::vector<int> e_prime;  // elements not fully covered after phase 1
  std::vector<double> thetas;
  bool phase2_ran = false;
  bool feasible = false;
  long iterations = 0;
};

// Threshold rounding: for every element with y*_e >= 1/s, round up every
// cover of Omega_e with x*_A >= 1/(bs). Float-mode solutions get a 1e-9
// slack on both thresholds so LP noise cannot break the coverage lemma.
std::vector<int> deterministic_round(const Instance& instance, const CoverFamily& family,
                                     const FractionalSolution& frac,
                                     const RoundingParams& params);

struct Phase2Result {
  std::uint64_t s2_mask = 0;
  std::vector<char> y_hat;
  std::vector<double> thetas;
};

// theta-sampling rounds: per iteration draw theta uniform on (0,1] and
// select every remaining cover with x*_A >= theta.
Phase2Result randomized_round(const Instance& instance, const CoverFamily& family,
                              const FractionalSolution& frac,
                              std::span<const int> remaining_covers,
                              const RoundingParams& params, long iterations, SplitMix64& rng);

// Optional replacement of the phase-1 collection before the coverage
// check and phase 2 (the r = 1 pipeline passes the gamma-closure step).
using Phase1Closure = std::function<std::uint64_t(std::uint64_t)>;

RoundedOutcome run_algorithm1(const Instance& instance, const CoverFamily& family,
                              const CostOracle& oracle, const FractionalSolution& frac,
                              const RoundingParams& params, SplitMix64 rng,
                              const Phase1Closure& closure = nullptr);

void check_params(const Instance& instance, const RoundingParams& params);

struct WhpResult {
  RoundedOutcome best;
  int best_rep = -1;
  int reps_run = 0;
  int feasible_count = 0;
  int qualifying_count = 0;  // feasible and phase-2 cost within the ratio event bound
  bool warning_ratio = false;  // no repetition satisfied the cost event
  double s2_cost_bound = 0;    // b s l ln(s/(s-t)) opt_cp
  double total_cost_bound = 0; // b s (1 + l ln(s/(s-t))) opt_cp
  double opt_cp = 0;
  Rational opt_cp_exact = 0;
  bool opt_cp_is_exact = false;
  std::vector<RoundedOutcome> outcomes;  // per repetition, in order
};

// Repeats the rounding with independent RNG streams derived from the seed
// (stream r for repetition r) and keeps the cheapest outcome that is
// feasible and satisfies the phase-2 cost event; falls back to the
// cheapest feasible outcome with a warning, and throws if none is feasible.
WhpResult solve_whp(const Instance& instance, const CoverFamily& family,
                    const CostOracle& oracle, const FractionalSolution& frac,
                    const RoundingParams& params, int max_reps = 0, int threads = 1,
                    const Phase1Closure& closure = nullptr);

// Convenience end-to-end entry: covers + oracle + relaxation + repetitions.
WhpResult solve_whp(const Instance& instance, const RoundingParams& params, int max_reps = 0,
                    int threads = 1, const RelaxOptions& relax_options = {},
                    const Limits& limits = {});

}  // namespace pmc
