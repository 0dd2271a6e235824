#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "pmcover/instance.hpp"
#include "pmcover/lovasz.hpp"

namespace pmc {

// The family Omega of all r_e-covers. Covers identical as sets of sets are
// stored once and shared by every owning element; the global order is
// lexicographic on the ascending set-id sequences, which fixes variable
// order in the relaxation and makes seeded rounding runs reproducible.
struct CoverFamily {
  std::vector<std::uint64_t> covers;          // set masks, lex order
  std::vector<std::vector<int>> cover_sets;   // per cover: ascending set indices
  std::vector<std::vector<int>> omega_e;      // per element: cover indices, ascending
  std::unordered_map<std::uint64_t, int> index_of;

  int size() const { return static_cast<int>(covers.size()); }
  std::uint64_t union_mask(std::span<const int> indices) const {
    std::uint64_t mask = 0;
    for (int i : indices) mask |= covers.at(static_cast<std::size_t>(i));
    return mask;
  }
};

CoverFamily enumerate_covers(const Instance& instance, const Limits& limits = {});

// Lexicographic order on the ascending index sequences of two masks,
// e.g. {0} < {0,1} < {0,3} < {1}.
bool lex_mask_less(std::uint64_t a, std::uint64_t b);

// rho on sub-families of Omega: the base oracle applied to the union of
// the member sets. Normalized because the base oracle is.
class InducedCost {
 public:
  InducedCost(const CoverFamily& family, const CostOracle& oracle)
      : family_(&family), oracle_(&oracle) {}

  double eval(std::span<const int> indices) const {
    return oracle_->eval(checked_union(indices));
  }
  Rational eval_exact(std::span<const int> indices) const {
    return oracle_->eval_exact(checked_union(indices));
  }

  bool rational() const { return oracle_->rational(); }
  const CoverFamily& family() const { return *family_; }
  const CostOracle& oracle() const { return *oracle_; }

  SetFunctionView<double> view() const {
    return {family_->size(), [this](std::span<const int> idx) { return eval(idx); }};
  }
  SetFunctionView<Rational> view_exact() const {
    return {family_->size(), [this](std::span<const int> idx) { return eval_exact(idx); }};
  }

 private:
  std::uint64_t checked_union(std::span<const int> indices) const {
    std::uint64_t mask = 0;
    for (int i : indices) {
      if (i < 0 || i >= family_->size())
        throw Error(ErrorKind::BadArgument, "induced cost: cover index out of range");
      mask |= family_->covers[static_cast<std::size_t>(i)];
    }
    return mask;
  }

  const CoverFamily* family_;
  const CostOracle* oracle_;
};

// Elements fully covered by the sub-collection: |{S in mask : e in S}| >= r_e.
std::vector<int> fully_covered(const Instance& instance, std::uint64_t set_mask);

Rational covered_profit(const Instance& instance, std::uint64_t set_mask);

// One r_e-cover inside the sub-collection per fully covered element, the
// lexicographically smallest qualifying cover each time. The union of the
// returned covers' member sets is contained in the input sub-collection.
std::vector<int> lift_solution(const Instance& instance, const CoverFamily& family,
                               std::uint64_t set_mask);

}  // namespace pmc
