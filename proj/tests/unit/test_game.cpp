#include "doctest.h"
#include "prefmatch/game.hpp"

using namespace prefmatch;

namespace {

MaterialGame bos() { return MaterialGame({"A", "B"}, Matrix::from_ints({{0, 1}, {3, 0}}), true); }
MaterialGame table3() {
  return MaterialGame({"A", "B", "C"}, Matrix::from_ints({{0, 3, 2}, {5, 0, 0}, {8, 0, 0}}), true);
}
MaterialGame constant(long c) { return MaterialGame({"A", "B"}, Matrix::from_ints({{c, c}, {c, c}})); }

}  // namespace

TEST_CASE("rationals parse and print exactly") {
  CHECK(parse_rational("3/6") == rat(1, 2));
  CHECK(parse_rational("-4") == rat(-4));
  CHECK(parse_rational("+2/3") == rat(2, 3));
  CHECK(fraction_string(rat(4, 2)) == "2/1");
  CHECK(compact_string(rat(4, 2)) == "2");
  CHECK(fraction_string(Rational(78, 9)) == "26/3");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("0.5"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("material payoff is the bilinear extension") {
  MaterialGame g = bos();
  auto A = MixedStrategy::pure(2, 0), B = MixedStrategy::pure(2, 1);
  CHECK(material_payoff(g, A, B) == 1);
  CHECK(material_payoff(g, B, A) == 3);
  MixedStrategy half({rat(1, 2), rat(1, 2)});
  // sum of the four pure outcomes weighted by 1/4
  Rational oracle = (rat(0) + 1 + 3 + 0) / 4;
  CHECK(material_payoff(g, half, half) == oracle);
  CHECK(material_payoff(g, half, half) == 1);
}

TEST_CASE("pure entries are recovered from degenerate mixtures") {
  MaterialGame g = table3();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(material_payoff(g, MixedStrategy::pure(3, i), MixedStrategy::pure(3, j)) == g.payoff()(i, j));
}

TEST_CASE("mixed strategies are validated") {
  CHECK_THROWS_AS(MixedStrategy({rat(1, 2), rat(1, 3)}), InputError);
  CHECK_THROWS_AS(MixedStrategy({rat(3, 2), rat(-1, 2)}), InputError);
  CHECK_THROWS_AS(MixedStrategy::pure(2, 2), InputError);
  MixedStrategy m({rat(2, 5), rat(3, 5)});
  CHECK(m.support() == std::vector<std::size_t>{0, 1});
  CHECK_FALSE(m.pure_index());
  CHECK(strategy_text(bos(), m) == "[2/5,3/5]");
}

TEST_CASE("games reject bad shapes and nonpositive payoffs unless allowed") {
  CHECK_THROWS_AS(MaterialGame({"A", "A"}, Matrix::from_ints({{1, 1}, {1, 1}})), InputError);
  CHECK_THROWS_AS(MaterialGame({"A", "B"}, Matrix::from_ints({{1, 1, 1}, {1, 1, 1}})), InputError);
  CHECK_THROWS_AS(MaterialGame({"A", "B"}, Matrix::from_ints({{0, 1}, {3, 0}})), InputError);
  CHECK_NOTHROW(MaterialGame({"A", "B"}, Matrix::from_ints({{0, 1}, {3, 0}}), true));
}

TEST_CASE("efficient pairs") {
  auto e = efficient_pairs(table3());
  CHECK(e.best_total == 10);
  CHECK(e.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {2, 0}});
  auto b = efficient_pairs(bos());
  CHECK(b.best_total == 4);
  CHECK(b.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}});
  auto c = efficient_pairs(constant(3));
  CHECK(c.best_total == 6);
  CHECK(c.pairs.size() == 4);
}

TEST_CASE("strict efficiency against unilateral deviations") {
  CHECK(is_strictly_efficient(bos(), 0, 1));
  CHECK(is_strictly_efficient(table3(), 0, 2));
  CHECK_FALSE(is_strictly_efficient(table3(), 1, 1));
  CHECK_FALSE(is_strictly_efficient(constant(2), 0, 0));
  CHECK_FALSE(is_strictly_efficient(constant(2), 1, 0));
}

TEST_CASE("inefficiency constants") {
  auto k = inefficiency_constants(bos(), {}, rat(1));
  CHECK(k.s_bar == 4);
  CHECK(k.s_hat == 0);
  CHECK(k.s_tilde == 0);
  CHECK(k.delta_bar == rat(4, 5));
  // max{10/12, 10/11, 0}
  auto t = inefficiency_constants(table3(), {}, rat(1));
  CHECK(t.s_hat == 8);
  CHECK(t.delta_bar == rat(10, 11));
  CHECK_THROWS_AS(inefficiency_constants(constant(2), {}, rat(1)), InputError);
  CHECK_THROWS_AS(inefficiency_constants(bos(), {}, rat(0)), InputError);
}
