#include "doctest.h"
#include "prefmatch/preferences.hpp"

using namespace prefmatch;

namespace {

MaterialGame bos() { return MaterialGame({"A", "B"}, Matrix::from_ints({{0, 1}, {3, 0}}), true); }
MaterialGame table4() {
  return MaterialGame({"A", "B", "C"}, Matrix::from_ints({{0, 0, 2}, {0, 3, 0}, {8, 0, 0}}), true);
}
MaterialGame table8() {
  return MaterialGame({"A", "B", "C"}, Matrix::from_ints({{0, 8, 7}, {10, 0, 0}, {10, 0, 0}}), true);
}
MixedStrategy pure(std::size_t n, std::size_t i) { return MixedStrategy::pure(n, i); }

}  // namespace

TEST_CASE("family tables") {
  MaterialGame g = bos();
  auto he = build_type(g, Family::homophilic_efficient, rat(1));
  CHECK(he.u_same(0, 1) == 5);
  CHECK(he.u_cross(0, 1) == 4);
  auto ps = build_type(g, Family::parochial_selfish);
  CHECK(ps.u_same == g.payoff());
  CHECK(ps.u_cross == Matrix(2, 2, Rational(0)));
  auto pe = build_type(g, Family::parochial_efficient);
  CHECK(pe.u_same(1, 0) == 4);
  CHECK(pe.u_cross(1, 0) == 0);
  auto hs = build_type(g, Family::homophilic_selfish, rat(9));
  CHECK(hs.u_same(1, 0) == 12);
  CHECK(hs.u_cross(1, 0) == 3);
  CHECK_THROWS_AS(build_type(g, Family::homophilic_selfish), InputError);
  CHECK_THROWS_AS(build_type(g, Family::homophilic_selfish, rat(-1)), InputError);
  CHECK_THROWS_AS(build_type(g, Family::custom), InputError);
}

TEST_CASE("family names round-trip") {
  for (Family f : {Family::selfish, Family::efficient, Family::homophilic_efficient, Family::parochial_efficient,
                   Family::homophilic_selfish, Family::parochial_selfish, Family::adversary, Family::custom})
    CHECK(family_from_name(family_name(f)) == f);
  CHECK_THROWS_AS(family_from_name("spiteful"), InputError);
  CHECK_THROWS_AS(recipe_from_name("nope"), InputError);
}

TEST_CASE("utility of the illustrative types") {
  MaterialGame g({"A", "B"}, Matrix::from_ints({{0, 2}, {3, 0}}), true);
  Matrix th = Matrix::from_ints({{0, 2}, {3, 0}});
  Matrix ta = Matrix::from_ints({{4, 2}, {3, 0}});
  auto theta = custom_type(g, th, th);
  auto tau = custom_type(g, ta, ta);
  MixedStrategy m({rat(2, 5), rat(3, 5)});
  CHECK(utility(theta, m, m, Opponent::same) == rat(6, 5));
  CHECK(utility(tau, pure(2, 0), pure(2, 0), Opponent::same) == 4);
  CHECK(utility(tau, pure(2, 1), pure(2, 0), Opponent::cross) == 3);
  CHECK_THROWS_AS(custom_type(g, Matrix::from_ints({{1}}), th), InputError);
}

TEST_CASE("utility against a label-u opponent") {
  MaterialGame g = bos();
  auto seeker = build_adversary_type(g, Recipe::ex4_coordination_seeker);
  Rational d = rat(1, 100);
  // tau coordinates on A with u: theta opponents give 3, same-type ones 0
  CHECK(utility_vs_u(seeker, Role::tau, pure(2, 0), pure(2, 0), {d, 1 - d}) == d * 3);
  CHECK(utility_vs_u(seeker, Role::tau, pure(2, 1), pure(2, 0), {d, 1 - d}) == 1);
  auto theta = build_type(g, Family::homophilic_efficient, rat(1));
  CHECK(utility_vs_u(theta, Role::theta, pure(2, 0), pure(2, 1), {rat(1), rat(0)}) ==
        utility(theta, pure(2, 0), pure(2, 1), Opponent::same));
  CHECK(utility_vs_u(theta, Role::theta, pure(2, 0), pure(2, 1), {rat(0), rat(1)}) ==
        utility(theta, pure(2, 0), pure(2, 1), Opponent::cross));
  auto ps = build_type(table8(), Family::parochial_selfish);
  CHECK(utility_vs_u(ps, Role::theta, pure(3, 2), pure(3, 0), {rat(4, 5), rat(1, 5)}) == 8);
  CHECK_THROWS_AS(utility_vs_u(ps, Role::theta, pure(3, 2), pure(3, 0), {rat(1, 2), rat(1, 3)}), InputError);
}

TEST_CASE("adversary recipes") {
  auto m3 = build_adversary_type(table4(), Recipe::ex3_mutant);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      bool ac = (i == 0 && j == 2) || (i == 2 && j == 0);
      CHECK(m3.u_same(i, j) == (ac ? 1 : 0));
      CHECK(m3.u_cross(i, j) == 0);
    }
  MaterialGame g8 = table8();
  auto anti = build_adversary_type(g8, Recipe::b4_antiparochial_efficient);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(anti.u_cross(i, j) == g8.payoff()(i, j) + g8.payoff()(j, i) + 1);

  auto ac = build_adversary_type(bos(), Recipe::prop5_anticoordinator, {rat(1), std::nullopt});
  CHECK(ac.u_cross(0, 1) == -1);
  CHECK(ac.u_cross(1, 0) == 0);
  CHECK(ac.u_cross(0, 0) == 3);
  CHECK(ac.u_cross(1, 1) == 3);
  CHECK(*ac.big_m == 49);
  CHECK(ac.u_same(0, 1) == 0);
  CHECK(ac.u_same(0, 0) == -49);
  CHECK(default_anticoordinator_m(bos(), rat(1)) == 49);

  MaterialGame pd({"C", "D"}, Matrix::from_ints({{3, 1}, {4, 2}}));
  CHECK_THROWS_AS(build_adversary_type(pd, Recipe::prop5_anticoordinator, {rat(1), std::nullopt}), InputError);
  CHECK_THROWS_AS(build_adversary_type(pd, Recipe::ex2_mutant), InputError);
  CHECK_THROWS_AS(build_adversary_type(table4(), Recipe::b2_mixed_motive), InputError);
}
