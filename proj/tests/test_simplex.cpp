#include <doctest.h>

#include "pmcover/simplex.hpp"

using namespace pmc;

namespace {

template <typename T>
LpProblem<T> knapsack_like() {
  // min -x0 - 2 x1  s.t. x0 + x1 <= 3, x0 <= 2, x1 <= 2
  LpProblem<T> lp;
  lp.nvars = 2;
  lp.objective = {T(-1), T(-2)};
  lp.add_row(Sense::Le, T(3)).a = {T(1), T(1)};
  lp.add_row(Sense::Le, T(2)).a = {T(1), T(0)};
  lp.add_row(Sense::Le, T(2)).a = {T(0), T(1)};
  return lp;
}

}  // namespace

TEST_CASE("simplex solves a small bounded problem exactly") {
  auto sol = solve_lp<Rational>(knapsack_like<Rational>());
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == Rational(-5));  // x = (1, 2)
  CHECK(sol.x[0] == 1);
  CHECK(sol.x[1] == 2);

  auto solf = solve_lp<double>(knapsack_like<double>());
  REQUIRE(solf.status == LpStatus::Optimal);
  CHECK(solf.value == doctest::Approx(-5.0));
}

TEST_CASE("simplex handles equality and >= rows") {
  // min x0 + x1  s.t. x0 + 2 x1 = 4, x0 + x1 >= 1
  LpProblem<Rational> lp;
  lp.nvars = 2;
  lp.objective = {1, 1};
  lp.add_row(Sense::Eq, Rational(4)).a = {Rational(1), Rational(2)};
  lp.add_row(Sense::Ge, Rational(1)).a = {Rational(1), Rational(1)};
  auto sol = solve_lp<Rational>(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == Rational(2));  // x = (0, 2)
  CHECK(sol.x[1] == 2);
}

TEST_CASE("simplex reports infeasible problems") {
  LpProblem<Rational> lp;
  lp.nvars = 1;
  lp.objective = {1};
  lp.add_row(Sense::Ge, Rational(2)).a = {Rational(1)};
  lp.add_row(Sense::Le, Rational(1)).a = {Rational(1)};
  CHECK(solve_lp<Rational>(lp).status == LpStatus::Infeasible);
}

TEST_CASE("simplex reports unbounded problems") {
  LpProblem<Rational> lp;
  lp.nvars = 2;
  lp.objective = {-1, 0};
  lp.add_row(Sense::Ge, Rational(1)).a = {Rational(1), Rational(0)};
  CHECK(solve_lp<Rational>(lp).status == LpStatus::Unbounded);
}

TEST_CASE("simplex survives a degenerate cycling-prone program") {
  // Beale's classic cycling example; the stall switch to Bland's rule
  // must terminate it.
  LpProblem<double> lp;
  lp.nvars = 4;
  lp.objective = {-0.75, 150.0, -0.02, 6.0};
  lp.add_row(Sense::Le, 0.0).a = {0.25, -60.0, -0.04, 9.0};
  lp.add_row(Sense::Le, 0.0).a = {0.5, -90.0, -0.02, 3.0};
  lp.add_row(Sense::Le, 1.0).a = {0.0, 0.0, 1.0, 0.0};
  auto sol = solve_lp<double>(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(-0.05));
}

TEST_CASE("simplex handles negative right-hand sides") {
  // min x0  s.t. -x0 <= -3  (i.e. x0 >= 3)
  LpProblem<Rational> lp;
  lp.nvars = 1;
  lp.objective = {1};
  lp.add_row(Sense::Le, Rational(-3)).a = {Rational(-1)};
  auto sol = solve_lp<Rational>(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == Rational(3));
}

TEST_CASE("simplex rational mode is exact on fractional optima") {
  // min x0 + x1  s.t. 3 x0 + x1 >= 1, x0 + 3 x1 >= 1
  LpProblem<Rational> lp;
  lp.nvars = 2;
  lp.objective = {1, 1};
  lp.add_row(Sense::Ge, Rational(1)).a = {Rational(3), Rational(1)};
  lp.add_row(Sense::Ge, Rational(1)).a = {Rational(1), Rational(3)};
  auto sol = solve_lp<Rational>(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == Rational(1, 2));
  CHECK(sol.x[0] == Rational(1, 4));
  CHECK(sol.x[1] == Rational(1, 4));
}
