#include <doctest.h>

#include "pmcover/exact.hpp"
#include "pmcover/simplex.hpp"
#include "support/corpus.hpp"

using namespace pmc;
using namespace pmc::test;

TEST_CASE("brute force reproduces the high-gap optimum") {
  Instance inst = make_example1(1000);
  ExactResult result = exact_solve(inst);
  CHECK(result.optimum_exact == 1001);
  // Two optimal pairs exist; (cardinality, lex) order keeps {S1,S3}.
  CHECK(result.best_mask == 0b101);
  CHECK(result.enumerated == 8);
}

TEST_CASE("a free covering set drives the optimum to zero") {
  Instance inst;
  inst.elements = {{"e1", 1, 1}, {"e2", 1, 5}};
  inst.sets = {{"S1", {"e1", "e2"}}, {"S2", {"e2"}}};
  inst.q = Rational(1, 6);  // one element's profit suffices
  inst.cost.kind = CostKind::Linear;
  inst.cost.weights = {0, 9};
  REQUIRE(validate(inst).ok());
  ExactResult result = exact_solve(inst);
  CHECK(result.optimum_exact == 0);
}

TEST_CASE("brute force on the four-set fixture finds the unit optimum") {
  Instance inst = make_example2();  // unit costs, unit profits, q = 2/3
  ExactResult result = exact_solve(inst);
  CHECK(result.optimum_exact == 1);
  CHECK(result.best_mask == 0b0010);  // S2 covers e2 and e3 on its own
  CHECK(result.feasible_count == 13); // every mask except {}, {S1}, {S4}
}

TEST_CASE("the enumeration guard trips on oversized instances") {
  Instance inst = make_example2();
  Limits limits;
  limits.exact_max_sets = 2;
  CHECK_THROWS_AS((void)exact_solve(inst, limits), Error);
}

TEST_CASE("natural LP value of the high-gap fixture is exactly 2") {
  Instance inst = make_example1(1000);
  NaturalLpResult lp = natural_lp_value(inst);
  CHECK(lp.value_exact == 2);

  Instance table = make_remark2();
  CHECK_THROWS_AS((void)natural_lp_value(table), Error);
}

TEST_CASE("natural LP is a relaxation of the integer optimum") {
  CorpusOptions opts;
  opts.allow_concave = false;
  opts.allow_table = false;
  for (std::uint64_t seed = 800; seed < 815; ++seed) {
    Instance inst = random_instance(seed, opts);
    NaturalLpResult lp = natural_lp_value(inst);
    ExactResult best = exact_solve(inst);
    CHECK(lp.value_exact <= best.optimum_exact);
  }
}

TEST_CASE("natural LP approaches the plain covering LP as q approaches 1") {
  // r = 1 instance; at q -> 1 the profit constraint forces every y to 1
  // and the program collapses to the classic covering LP.
  Instance inst;
  inst.elements = {{"e1", 1, 1}, {"e2", 1, 1}, {"e3", 1, 1}};
  inst.sets = {{"S1", {"e1", "e2"}}, {"S2", {"e2", "e3"}}, {"S3", {"e1", "e3"}}};
  inst.cost.kind = CostKind::Linear;
  inst.cost.weights = {2, 3, 4};
  inst.q = Rational(999999999, 1000000000);
  REQUIRE(validate(inst).ok());
  NaturalLpResult lp = natural_lp_value(inst);

  // Classic covering LP for the same data, solved directly.
  LpProblem<Rational> classic;
  classic.nvars = 3;
  classic.objective = {2, 3, 4};
  for (int e = 0; e < 3; ++e) {
    auto& row = classic.add_row(Sense::Ge, Rational(1));
    for (int s = 0; s < 3; ++s)
      for (const auto& member : inst.sets[s].members)
        if (member == inst.elements[e].id) row.a[s] = 1;
  }
  auto classic_sol = solve_lp<Rational>(classic);
  REQUIRE(classic_sol.status == LpStatus::Optimal);
  CHECK(lp.value <= to_double(classic_sol.value));
  CHECK(lp.value == doctest::Approx(to_double(classic_sol.value)).epsilon(1e-6));
}

TEST_CASE("gap report shows the natural gap growing while the reformulated stays put") {
  Instance inst = make_example1(1000);
  GapReport gap = gap_report(inst);
  CHECK(gap.natural.value_exact == 2);
  CHECK(gap.integer.optimum_exact == 1001);
  CHECK(gap.reformulated.value == Rational(501));
  CHECK(gap.natural_gap == doctest::Approx(500.5));
  CHECK(gap.reformulated_gap == doctest::Approx(1001.0 / 501.0));
  CHECK(gap.reformulated_gap <= 2.01);

  Instance big = make_example1(100000);
  GapReport gap2 = gap_report(big);
  CHECK(gap2.natural_gap == doctest::Approx(100001.0 / 2.0));
  CHECK(gap2.reformulated_gap == doctest::Approx(100001.0 / 50001.0));
  CHECK(gap2.reformulated_gap <= 2.01);
}

TEST_CASE("with unit requirements the two relaxations coincide in the report") {
  CorpusOptions opts;
  opts.unit_requirements = true;
  opts.allow_concave = false;
  opts.allow_table = false;
  for (std::uint64_t seed = 900; seed < 906; ++seed) {
    Instance inst = random_instance(seed, opts);
    GapReport gap = gap_report(inst);
    CHECK(gap.natural.value == doctest::Approx(gap.reformulated.value_f).epsilon(1e-6));
    CHECK(gap.natural_gap == doctest::Approx(gap.reformulated_gap).epsilon(1e-6));
  }
}

TEST_CASE("exact solver refuses nonlinear gap reports") {
  Instance inst = make_remark2();
  CHECK_THROWS_AS((void)gap_report(inst), Error);
}
