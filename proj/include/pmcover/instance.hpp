#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pmcover/error.hpp"
#include "pmcover/limits.hpp"
#include "pmcover/rational.hpp"

namespace pmc {

struct ElementSpec {
  std::string id;
  int requirement = 1;   // r_e >= 1
  Rational profit = 1;   // p_e > 0
};

struct SetSpec {
  std::string id;
  std::vector<std::string> members;
};

enum class CostKind { Linear, ConcaveCardinality, ExplicitTable };

struct CostSpec {
  CostKind kind = CostKind::Linear;
  // linear: one weight per set, aligned with Instance::sets.
  std::vector<Rational> weights;
  // concave-cardinality: scale * |A|^exponent.
  double scale = 1.0;
  double exponent = 1.0;
  // explicit-table: raw value per sub-collection mask (size 2^|sets|),
  // bit i of the mask selects Instance::sets[i].
  std::vector<Rational> table;
  bool table_monotone = true;  // declared; validation checks it
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

struct Instance {
  std::vector<ElementSpec> elements;
  std::vector<SetSpec> sets;
  Rational q;
  CostSpec cost;

  // Derived by validate(); instances are immutable afterwards.
  struct Derived {
    bool valid = false;
    std::vector<std::vector<int>> elem_sets;  // per element: owning set indices, ascending
    std::vector<std::uint64_t> elem_sets_mask;
    std::vector<std::uint64_t> set_members_mask;  // per set: element mask
    std::unordered_map<std::string, int> elem_index;
    std::unordered_map<std::string, int> set_index;
    Rational total_profit;  // P
  } derived;

  int num_elements() const { return static_cast<int>(elements.size()); }
  int num_sets() const { return static_cast<int>(sets.size()); }
  const Rational& total_profit() const { return derived.total_profit; }
  bool valid() const { return derived.valid; }
  void require_valid() const {
    if (!derived.valid)
      throw Error(ErrorKind::InvalidInstance, "instance has not passed validation");
  }
};

// Checks every structural invariant, fills Instance::derived and caches P.
// Report-style: all violations are collected, not just the first.
ValidationReport validate(Instance& instance, const Limits& limits = {});

struct FrequencyStats {
  int f = 0;             // max number of sets containing a common element
  std::uint64_t b = 0;   // max_e C(f, r_e), with the global f
};

FrequencyStats frequency_stats(const Instance& instance);

std::uint64_t binomial(int n, int k);

// Evaluates the cost of sub-collections of sets, shifted so that the
// empty sub-collection costs zero. Memoized; safe for concurrent readers.
class CostOracle {
 public:
  explicit CostOracle(const Instance& instance, bool memoize = true);

  bool rational() const { return kind_ != CostKind::ConcaveCardinality; }
  bool monotone() const { return monotone_; }
  CostKind kind() const { return kind_; }

  // Normalized values: eval(0) == 0 for every kind.
  double eval(std::uint64_t mask) const;
  Rational eval_exact(std::uint64_t mask) const;  // requires rational()

  // Raw cost of the empty sub-collection (the normalization shift).
  const Rational& raw_offset() const { return raw_offset_; }

  // By set ids, as the CLI and tests address sub-collections.
  double eval_ids(std::span<const std::string> ids) const;
  std::uint64_t mask_of_ids(std::span<const std::string> ids) const;

  std::uint64_t evaluations() const { return evals_.load(std::memory_order_relaxed); }
  std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }

  int num_sets() const { return nsets_; }

 private:
  Rational raw_exact(std::uint64_t mask) const;
  double raw_float(std::uint64_t mask) const;

  const Instance* instance_;
  CostKind kind_;
  bool monotone_ = true;
  bool memoize_;
  int nsets_ = 0;
  Rational raw_offset_ = 0;
  double raw_offset_f_ = 0.0;
  mutable std::mutex mu_;
  mutable std::map<std::uint64_t, Rational> memo_exact_;
  mutable std::map<std::uint64_t, double> memo_float_;
  mutable std::atomic<std::uint64_t> evals_{0};
  mutable std::atomic<std::uint64_t> calls_{0};
};

}  // namespace pmc
