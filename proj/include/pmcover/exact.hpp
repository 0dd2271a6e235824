#pragma once

#include <cstdint>
#include <vector>

#include "pmcover/instance.hpp"
#include "pmcover/relax.hpp"

namespace pmc {

struct ExactResult {
  bool exact = false;        // rational cost oracle
  double optimum = 0;        // normalized cost of the best feasible sub-collection
  Rational optimum_exact = 0;
  std::uint64_t best_mask = 0;
  std::vector<int> best_sets;
  std::uint64_t feasible_count = 0;
  std::uint64_t enumerated = 0;
};

// Full 2^|S| enumeration; feasibility is covered profit >= qP. The first
// optimum in (cardinality, lex) order is kept, so the reported collection
// is the smallest one.
ExactResult exact_solve(const Instance& instance, const Limits& limits = {});

// Value of the direct LP relaxation with per-set variables and
// requirement-scaled coverage rows; linear costs only. This is the
// relaxation with the arbitrarily large integrality gap.
struct NaturalLpResult {
  bool exact = false;
  double value = 0;
  Rational value_exact = 0;
};

NaturalLpResult natural_lp_value(const Instance& instance);

struct GapReport {
  NaturalLpResult natural;
  FractionalSolution reformulated;
  ExactResult integer;
  double natural_gap = 0;       // exact / natural LP
  double reformulated_gap = 0;  // exact / cover-variable relaxation
};

GapReport gap_report(const Instance& instance, const RelaxOptions& options = {},
                     const Limits& limits = {});

}  // namespace pmc
