#pragma once

#include <cstdint>

namespace pmc {

// Size guards for the exhaustive parts of the solver. Sub-collections of
// sets are represented as 64-bit masks, hence the hard cap on |S|.
struct Limits {
  int r_max_cap = 4;          // maximum covering requirement accepted
  int max_sets = 64;          // mask representation bound
  int max_elements = 64;      // element masks use the same representation
  int table_max_sets = 16;    // explicit-table cost oracles need 2^|S| entries
  std::size_t omega_cap = 5000;  // cap on the number of distinct covers
  int exact_max_sets = 20;       // brute-force optimum enumerates 2^|S|
  int gamma_max_free = 20;       // gamma minimizer enumerates 2^(|S|-|S'|)
  int gmin_max_covers = 20;      // dual separation check enumerates 2^|Omega|
  int submod_check_max = 16;     // exhaustive submodularity check bound
};

}  // namespace pmc
