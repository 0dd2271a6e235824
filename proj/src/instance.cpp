#include "pmcover/instance.hpp"

#include <bit>
#include <cmath>
#include <set>

#include "pmcover/lovasz.hpp"

namespace pmc {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

namespace {

void check_cost(const Instance& inst, const Limits& limits, std::vector<std::string>& out) {
  const CostSpec& cost = inst.cost;
  const int m = inst.num_sets();
  switch (cost.kind) {
    case CostKind::Linear:
      if (static_cast<int>(cost.weights.size()) != m) {
        out.push_back("linear cost must provide exactly one weight per set");
        return;
      }
      for (int i = 0; i < m; ++i)
        if (cost.weights[i] < 0)
          out.push_back("linear cost weight for set '" + inst.sets[i].id + "' is negative");
      break;
    case CostKind::ConcaveCardinality:
      if (!(cost.scale > 0.0)) out.push_back("concave-cardinality cost requires scale > 0");
      if (!(cost.exponent > 0.0) || cost.exponent > 1.0)
        out.push_back("concave-cardinality cost requires exponent in (0, 1]");
      break;
    case CostKind::ExplicitTable: {
      if (m > limits.table_max_sets) {
        out.push_back("explicit-table cost is only permitted for at most " +
                      std::to_string(limits.table_max_sets) + " sets");
        return;
      }
      const std::size_t want = std::size_t{1} << m;
      if (cost.table.size() != want) {
        out.push_back("explicit-table cost must list a value for every sub-collection (" +
                      std::to_string(want) + " entries)");
        return;
      }
      for (std::size_t mask = 0; mask < want; ++mask)
        if (cost.table[mask] < 0) {
          out.push_back("explicit-table cost values must be nonnegative");
          break;
        }
      auto view = SetFunctionView<Rational>::from_mask_fn(
          m, [&](std::uint64_t mask) { return cost.table[mask] - cost.table[0]; });
      auto report = check_submodular<Rational>(view, limits.table_max_sets);
      if (!report.submodular)
        out.push_back("explicit-table cost fails the submodularity check");
      if (report.monotone != cost.table_monotone)
        out.push_back(std::string("explicit-table cost is declared ") +
                      (cost.table_monotone ? "monotone" : "non-monotone") +
                      " but the exhaustive check disagrees");
      break;
    }
  }
}

}  // namespace

ValidationReport validate(Instance& instance, const Limits& limits) {
  ValidationReport report;
  auto& out = report.violations;
  auto& d = instance.derived;
  d = Instance::Derived{};

  const int n = instance.num_elements();
  const int m = instance.num_sets();
  if (n == 0) out.push_back("instance has no elements");
  if (m == 0) out.push_back("instance has no sets");
  if (m > limits.max_sets)
    out.push_back("instance has " + std::to_string(m) + " sets; at most " +
                  std::to_string(limits.max_sets) + " are supported");
  if (n > limits.max_elements)
    out.push_back("instance has " + std::to_string(n) + " elements; at most " +
                  std::to_string(limits.max_elements) + " are supported");

  for (int i = 0; i < n; ++i) {
    if (!d.elem_index.emplace(instance.elements[i].id, i).second)
      out.push_back("duplicate element id '" + instance.elements[i].id + "'");
  }
  for (int i = 0; i < m; ++i) {
    if (!d.set_index.emplace(instance.sets[i].id, i).second)
      out.push_back("duplicate set id '" + instance.sets[i].id + "'");
  }

  d.elem_sets.assign(n, {});
  d.elem_sets_mask.assign(n, 0);
  d.set_members_mask.assign(m, 0);
  const bool masks_fit = m <= limits.max_sets && n <= limits.max_elements && m <= 64 && n <= 64;
  for (int s = 0; s < m && masks_fit; ++s) {
    const SetSpec& spec = instance.sets[s];
    if (spec.members.empty()) out.push_back("set '" + spec.id + "' has no members");
    std::set<std::string> seen;
    for (const std::string& member : spec.members) {
      auto it = d.elem_index.find(member);
      if (it == d.elem_index.end()) {
        out.push_back("set '" + spec.id + "' references unknown element '" + member + "'");
        continue;
      }
      if (!seen.insert(member).second) continue;
      d.elem_sets[it->second].push_back(s);
      d.elem_sets_mask[it->second] |= std::uint64_t{1} << s;
      d.set_members_mask[s] |= std::uint64_t{1} << it->second;
    }
  }

  if (!(instance.q > 0)) out.push_back("covering ratio q must be positive");
  if (!(instance.q < 1)) out.push_back("covering ratio q must be strictly less than 1");

  d.total_profit = 0;
  for (int e = 0; e < n; ++e) {
    const ElementSpec& spec = instance.elements[e];
    if (!(spec.profit > 0))
      out.push_back("element '" + spec.id + "' must have positive profit");
    d.total_profit += spec.profit;
    if (spec.requirement < 1)
      out.push_back("element '" + spec.id + "' must have requirement >= 1");
    if (spec.requirement > limits.r_max_cap)
      out.push_back("element '" + spec.id + "' has requirement " +
                    std::to_string(spec.requirement) + " above the configured cap " +
                    std::to_string(limits.r_max_cap));
    const int freq = static_cast<int>(d.elem_sets[e].size());
    if (freq == 0)
      out.push_back("element '" + spec.id + "' does not appear in any set");
    else if (spec.requirement > freq)
      out.push_back("requirement exceeds frequency: element '" + spec.id + "' needs " +
                    std::to_string(spec.requirement) + " but appears in " +
                    std::to_string(freq) + " set(s)");
  }

  if (out.empty()) check_cost(instance, limits, out);

  d.valid = out.empty();
  return report;
}

FrequencyStats frequency_stats(const Instance& instance) {
  instance.require_valid();
  FrequencyStats stats;
  for (const auto& owners : instance.derived.elem_sets)
    stats.f = std::max(stats.f, static_cast<int>(owners.size()));
  for (const auto& elem : instance.elements)
    stats.b = std::max(stats.b, binomial(stats.f, elem.requirement));
  return stats;
}

CostOracle::CostOracle(const Instance& instance, bool memoize)
    : instance_(&instance), kind_(instance.cost.kind), memoize_(memoize) {
  instance.require_valid();
  nsets_ = instance.num_sets();
  if (kind_ == CostKind::ExplicitTable) {
    raw_offset_ = instance.cost.table[0];
    auto view = SetFunctionView<Rational>::from_mask_fn(
        nsets_, [&](std::uint64_t mask) { return instance.cost.table[mask] - raw_offset_; });
    monotone_ = check_submodular<Rational>(view).monotone;
  }
  raw_offset_f_ = to_double(raw_offset_);
}

Rational CostOracle::raw_exact(std::uint64_t mask) const {
  evals_.fetch_add(1, std::memory_order_relaxed);
  switch (kind_) {
    case CostKind::Linear: {
      Rational total = 0;
      for (int i = 0; i < nsets_; ++i)
        if (mask & (std::uint64_t{1} << i)) total += instance_->cost.weights[i];
      return total;
    }
    case CostKind::ExplicitTable:
      return instance_->cost.table[mask] - raw_offset_;
    case CostKind::ConcaveCardinality:
      break;
  }
  throw Error(ErrorKind::Internal, "raw_exact on a non-rational cost kind");
}

double CostOracle::raw_float(std::uint64_t mask) const {
  evals_.fetch_add(1, std::memory_order_relaxed);
  const int k = std::popcount(mask);
  return instance_->cost.scale * std::pow(static_cast<double>(k), instance_->cost.exponent);
}

Rational CostOracle::eval_exact(std::uint64_t mask) const {
  if (!rational())
    throw Error(ErrorKind::BadArgument, "eval_exact requires a rational cost kind");
  if (mask >> nsets_)
    throw Error(ErrorKind::BadArgument, "cost oracle: unknown set in sub-collection");
  calls_.fetch_add(1, std::memory_order_relaxed);
  if (!memoize_) return raw_exact(mask);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_exact_.find(mask);
    if (it != memo_exact_.end()) return it->second;
  }
  Rational value = raw_exact(mask);
  std::lock_guard<std::mutex> lock(mu_);
  return memo_exact_.emplace(mask, std::move(value)).first->second;
}

double CostOracle::eval(std::uint64_t mask) const {
  if (rational()) return to_double(eval_exact(mask));
  if (mask >> nsets_)
    throw Error(ErrorKind::BadArgument, "cost oracle: unknown set in sub-collection");
  calls_.fetch_add(1, std::memory_order_relaxed);
  if (!memoize_) return raw_float(mask);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_float_.find(mask);
    if (it != memo_float_.end()) return it->second;
  }
  double value = raw_float(mask);
  std::lock_guard<std::mutex> lock(mu_);
  return memo_float_.emplace(mask, value).first->second;
}

std::uint64_t CostOracle::mask_of_ids(std::span<const std::string> ids) const {
  std::uint64_t mask = 0;
  for (const std::string& id : ids) {
    auto it = instance_->derived.set_index.find(id);
    if (it == instance_->derived.set_index.end())
      throw Error(ErrorKind::BadArgument, "cost oracle: unknown set id '" + id + "'");
    mask |= std::uint64_t{1} << it->second;
  }
  return mask;
}

double CostOracle::eval_ids(std::span<const std::string> ids) const {
  return eval(mask_of_ids(ids));
}

}  // namespace pmc
