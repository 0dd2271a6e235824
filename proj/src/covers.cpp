#include "pmcover/covers.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace pmc {

bool lex_mask_less(std::uint64_t a, std::uint64_t b) {
  while (a != 0 && b != 0) {
    int la = std::countr_zero(a);
    int lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

CoverFamily enumerate_covers(const Instance& instance, const Limits& limits) {
  instance.require_valid();
  const int n = instance.num_elements();

  std::set<std::uint64_t> distinct;
  std::vector<std::vector<std::uint64_t>> per_element(n);
  for (int e = 0; e < n; ++e) {
    const auto& owners = instance.derived.elem_sets[e];
    const int f_e = static_cast<int>(owners.size());
    const int r = instance.elements[e].requirement;
    // All size-r combinations of the ascending owner list, in lex order.
    std::vector<int> pick(r);
    for (int i = 0; i < r; ++i) pick[i] = i;
    while (true) {
      std::uint64_t mask = 0;
      for (int i : pick) mask |= std::uint64_t{1} << owners[i];
      per_element[e].push_back(mask);
      if (distinct.insert(mask).second && distinct.size() > limits.omega_cap)
        throw Error(ErrorKind::GuardExceeded,
                    "cover family exceeds the cap of " + std::to_string(limits.omega_cap));
      int i = r - 1;
      while (i >= 0 && pick[i] == f_e - r + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  CoverFamily family;
  family.covers.assign(distinct.begin(), distinct.end());
  std::sort(family.covers.begin(), family.covers.end(), lex_mask_less);
  family.cover_sets.reserve(family.covers.size());
  for (std::size_t i = 0; i < family.covers.size(); ++i) {
    family.index_of.emplace(family.covers[i], static_cast<int>(i));
    std::vector<int> ids;
    for (std::uint64_t m = family.covers[i]; m != 0; m &= m - 1)
      ids.push_back(std::countr_zero(m));
    family.cover_sets.push_back(std::move(ids));
  }
  family.omega_e.assign(n, {});
  for (int e = 0; e < n; ++e) {
    for (std::uint64_t mask : per_element[e])
      family.omega_e[e].push_back(family.index_of.at(mask));
    std::sort(family.omega_e[e].begin(), family.omega_e[e].end());
  }
  return family;
}

std::vector<int> fully_covered(const Instance& instance, std::uint64_t set_mask) {
  instance.require_valid();
  std::vector<int> covered;
  for (int e = 0; e < instance.num_elements(); ++e) {
    const int hits = std::popcount(instance.derived.elem_sets_mask[e] & set_mask);
    if (hits >= instance.elements[e].requirement) covered.push_back(e);
  }
  return covered;
}

Rational covered_profit(const Instance& instance, std::uint64_t set_mask) {
  Rational total = 0;
  for (int e : fully_covered(instance, set_mask)) total += instance.elements[e].profit;
  return total;
}

std::vector<int> lift_solution(const Instance& instance, const CoverFamily& family,
                               std::uint64_t set_mask) {
  std::set<int> chosen;
  for (int e : fully_covered(instance, set_mask)) {
    const int r = instance.elements[e].requirement;
    std::uint64_t cover = 0;
    int taken = 0;
    for (int s : instance.derived.elem_sets[e]) {
      if (set_mask & (std::uint64_t{1} << s)) {
        cover |= std::uint64_t{1} << s;
        if (++taken == r) break;
      }
    }
    auto it = family.index_of.find(cover);
    if (it == family.index_of.end())
      throw Error(ErrorKind::Internal, "lift_solution: cover missing from family");
    chosen.insert(it->second);
  }
  return {chosen.begin(), chosen.end()};
}

}  // namespace pmc
