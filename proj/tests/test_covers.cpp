#include <doctest.h>

#include "pmcover/covers.hpp"
#include "pmcover/io.hpp"
#include "support/corpus.hpp"

using namespace pmc;
using namespace pmc::test;

namespace {

std::uint64_t mask_of(const Instance& inst, std::initializer_list<const char*> ids) {
  std::uint64_t mask = 0;
  for (const char* id : ids) mask |= std::uint64_t{1} << inst.derived.set_index.at(id);
  return mask;
}

}  // namespace

TEST_CASE("cover family of the four-set fixture matches the published listing") {
  Instance inst = make_example2();
  CoverFamily family = enumerate_covers(inst);

  // Seven distinct covers, lex order on ascending set-id sequences.
  REQUIRE(family.size() == 7);
  CHECK(family.covers[0] == mask_of(inst, {"S1"}));
  CHECK(family.covers[1] == mask_of(inst, {"S1", "S2"}));
  CHECK(family.covers[2] == mask_of(inst, {"S1", "S4"}));
  CHECK(family.covers[3] == mask_of(inst, {"S2"}));
  CHECK(family.covers[4] == mask_of(inst, {"S2", "S4"}));
  CHECK(family.covers[5] == mask_of(inst, {"S3"}));
  CHECK(family.covers[6] == mask_of(inst, {"S4"}));

  CHECK(family.omega_e[0] == std::vector<int>{1, 2, 4});  // pairs from {S1,S2,S4}
  CHECK(family.omega_e[1] == std::vector<int>{0, 3, 5});  // {S1},{S2},{S3}
  CHECK(family.omega_e[2] == std::vector<int>{3, 5, 6});  // {S2},{S3},{S4}

  // {S2} is stored once although it serves both e2 and e3.
  CHECK(family.index_of.size() == 7);
}

TEST_CASE("cover family of the high-gap fixture") {
  Instance inst = make_example1();
  CoverFamily family = enumerate_covers(inst);
  REQUIRE(family.size() == 2);
  CHECK(family.covers[0] == mask_of(inst, {"S1", "S3"}));
  CHECK(family.covers[1] == mask_of(inst, {"S2", "S3"}));
  CHECK(family.omega_e[0] == std::vector<int>{0});
  CHECK(family.omega_e[1] == std::vector<int>{1});
}

TEST_CASE("an element in exactly r_e sets has its whole membership as the cover") {
  Instance inst = make_remark2();
  CoverFamily family = enumerate_covers(inst);
  REQUIRE(family.size() == 3);
  CHECK(family.covers[family.omega_e[2][0]] == mask_of(inst, {"S1", "S2", "S3"}));
  CHECK(family.omega_e[2].size() == 1);
}

TEST_CASE("the cover cap guard trips with a helpful error") {
  Instance inst = make_example2();
  Limits limits;
  limits.omega_cap = 3;
  CHECK_THROWS_AS((void)enumerate_covers(inst, limits), Error);
}

TEST_CASE("induced cost evaluates the base oracle on the union") {
  Instance inst = load_instance(std::string(PMCOVER_DATA_DIR) + "/example3.json");
  CostOracle oracle(inst);
  CoverFamily family = enumerate_covers(inst);
  InducedCost rho(family, oracle);

  const int a_s1 = family.index_of.at(mask_of(inst, {"S1"}));
  const int a_s1s2 = family.index_of.at(mask_of(inst, {"S1", "S2"}));
  std::vector<int> sub = {a_s1, a_s1s2};
  CHECK(rho.eval_exact(sub) == oracle.eval_exact(mask_of(inst, {"S1", "S2"})));
  CHECK(rho.eval_exact(sub) == 2);

  std::vector<int> empty;
  CHECK(rho.eval_exact(empty) == 0);

  const int a_s2 = family.index_of.at(mask_of(inst, {"S2"}));
  std::vector<int> ex3 = {a_s1s2, a_s2};  // the A1, A2 pair
  CHECK(rho.eval_exact(ex3) == oracle.eval_exact(mask_of(inst, {"S1", "S2"})));

  std::vector<int> bad = {42};
  CHECK_THROWS_AS((void)rho.eval_exact(bad), Error);
}

TEST_CASE("full coverage counts memberships against requirements") {
  Instance ex1 = make_example1();
  CHECK(fully_covered(ex1, mask_of(ex1, {"S1", "S3"})) == std::vector<int>{0});
  CHECK(fully_covered(ex1, mask_of(ex1, {"S1", "S2"})).empty());
  CHECK(fully_covered(ex1, 0b111) == std::vector<int>{0, 1});
  CHECK(covered_profit(ex1, mask_of(ex1, {"S1", "S3"})) == 1);

  // {S1,S2} fully covers all three elements of the four-set fixture: the
  // ground truth here is maximal coverage, independent of any particular
  // feasible labeling of the program variables.
  Instance ex2 = make_example2();
  CHECK(fully_covered(ex2, mask_of(ex2, {"S1", "S2"})) == std::vector<int>{0, 1, 2});

  // Whole collection covers every element of a valid instance.
  CHECK(fully_covered(ex2, 0b1111).size() == 3);
}

TEST_CASE("full coverage is monotone in the sub-collection") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Instance inst = random_instance(seed);
    const int m = inst.num_sets();
    SplitMix64 rng(seed);
    for (int rep = 0; rep < 50; ++rep) {
      std::uint64_t small = rng.next() & ((1u << m) - 1);
      std::uint64_t big = small | (rng.next() & ((1u << m) - 1));
      auto cs = fully_covered(inst, small);
      auto cb = fully_covered(inst, big);
      CHECK(std::includes(cb.begin(), cb.end(), cs.begin(), cs.end()));
    }
  }
}

TEST_CASE("lifting a collection picks one lex-smallest cover per element") {
  Instance inst = load_instance(std::string(PMCOVER_DATA_DIR) + "/example3.json");
  CostOracle oracle(inst);
  CoverFamily family = enumerate_covers(inst);
  InducedCost rho(family, oracle);

  std::uint64_t s12 = mask_of(inst, {"S1", "S2"});
  std::vector<int> lifted = lift_solution(inst, family, s12);
  std::vector<int> expected = {
      family.index_of.at(mask_of(inst, {"S1"})),       // e2: lex-first inside {S1,S2}
      family.index_of.at(mask_of(inst, {"S1", "S2"})), // e1's only cover inside
      family.index_of.at(mask_of(inst, {"S2"})),       // e3: only S2 qualifies
  };
  std::sort(expected.begin(), expected.end());
  CHECK(lifted == expected);
  // Same cost as the collection it was lifted from.
  CHECK(rho.eval_exact(lifted) == oracle.eval_exact(s12));

  CHECK(lift_solution(inst, family, 0).empty());

  Instance tiny;
  tiny.elements = {{"e1", 1, 1}};
  tiny.sets = {{"S1", {"e1"}}, {"S2", {"e1"}}};
  tiny.q = Rational(1, 2);
  tiny.cost.kind = CostKind::Linear;
  tiny.cost.weights = {1, 1};
  REQUIRE(validate(tiny).ok());
  CoverFamily tf = enumerate_covers(tiny);
  auto single = lift_solution(tiny, tf, 0b01);
  REQUIRE(single.size() == 1);
  CHECK(tf.covers[single[0]] == 0b01);
}

TEST_CASE("lifted collections never cost more under a monotone oracle") {
  for (std::uint64_t seed = 40; seed < 52; ++seed) {
    Instance inst = random_instance(seed);
    CostOracle oracle(inst);
    if (!oracle.monotone()) continue;
    CoverFamily family = enumerate_covers(inst);
    InducedCost rho(family, oracle);
    SplitMix64 rng(seed);
    for (int rep = 0; rep < 20; ++rep) {
      std::uint64_t mask = rng.next() & ((1u << inst.num_sets()) - 1);
      auto lifted = lift_solution(inst, family, mask);
      CHECK(rho.eval(lifted) <= oracle.eval(mask) + 1e-9);
    }
  }
}

TEST_CASE("induced cost of a monotone oracle stays monotone and submodular") {
  int tested = 0;
  for (std::uint64_t seed = 60; seed < 90 && tested < 8; ++seed) {
    CorpusOptions opts;
    opts.max_sets = 5;
    opts.max_elements = 5;
    Instance inst = random_instance(seed, opts);
    CostOracle oracle(inst);
    if (!oracle.monotone()) continue;
    CoverFamily family = enumerate_covers(inst);
    if (family.size() > 10) continue;
    ++tested;
    InducedCost rho(family, oracle);
    if (oracle.rational()) {
      auto report = check_submodular<Rational>(rho.view_exact());
      CHECK(report.submodular);
      CHECK(report.monotone);
      CHECK(report.nonnegative);
    } else {
      auto report = check_submodular<double>(rho.view());
      CHECK(report.submodular);
      CHECK(report.monotone);
      CHECK(report.nonnegative);
    }
  }
  CHECK(tested >= 4);
}
