#include "doctest.h"
#include "prefmatch/evolution.hpp"
#include "prefmatch/matching_incomplete.hpp"

using namespace prefmatch;

namespace {

MaterialGame bos() { return MaterialGame({"A", "B"}, Matrix::from_ints({{0, 1}, {3, 0}}), true); }

Population ex4() {
  MaterialGame g = bos();
  return {g, build_type(g, Family::homophilic_efficient, rat(1)), build_adversary_type(g, Recipe::ex4_coordination_seeker)};
}

MaterialGame table8() {
  return MaterialGame({"A", "B", "C"}, Matrix::from_ints({{0, 8, 7}, {10, 0, 0}, {10, 0, 0}}), true);
}

MatchingProfileI b4_profile() {
  MatchingProfileI mp;
  mp.epsilon = rat(1, 2);
  mp.info = make_info(mp.epsilon, rat(5, 18), rat(4, 9), rat(5, 18));
  for (auto& r : mp.mu) r.fill(0);
  mp.mu[0][2] = mp.mu[2][0] = mp.mu[1][1] = 1;
  mp.sigma[static_cast<int>(ClassI::theta_u)] = pure_pair(3, 2, 0);
  mp.sigma[static_cast<int>(ClassI::tau_tau)] = pure_pair(3, 1, 0);
  return mp;
}

MatchingProfileI b2_profile() {
  MatchingProfileI mp;
  mp.epsilon = rat(1, 2);
  mp.info = make_info(mp.epsilon, 0, 0, 1);
  for (auto& r : mp.mu) r.fill(0);
  mp.mu[2][2] = 1;
  mp.sigma[static_cast<int>(ClassI::u_u)] = pure_pair(2, 1, 1);
  return mp;
}

Population b2_pop() {
  MaterialGame g({"A", "B"}, Matrix::from_ints({{3, 0}, {0, 0}}), true);
  return {g, build_type(g, Family::parochial_efficient), build_adversary_type(g, Recipe::b2_mixed_motive)};
}

}  // namespace

TEST_CASE("information structure") {
  auto info = make_info(rat(1, 2), rat(5, 18), rat(4, 9), rat(5, 18));
  CHECK(info.q.q_theta == rat(4, 5));
  CHECK(info.q.q_tau == rat(1, 5));
  CHECK(info.q.q_theta + info.q.q_tau == 1);
  CHECK(info.q.q_theta * info.mass(Label::u) == rat(1, 2) - info.mass(Label::theta));
  CHECK_THROWS_AS(make_info(rat(1, 2), rat(3, 4), rat(0), rat(1, 4)), InputError);
  CHECK_THROWS_AS(make_info(rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)), InputError);
  auto none = make_info(rat(1, 3), rat(2, 3), rat(1, 3), rat(0));
  CHECK(none.q.q_theta == 0);
}

TEST_CASE("classes and labels") {
  for (ClassI c : kClassesI) {
    auto [a, b] = class_labels(c);
    CHECK(class_of(a, b) == c);
    CHECK(class_of(b, a) == c);
  }
  CHECK(class_name(ClassI::theta_u) == "theta-u");
  for (BlockCase c : {BlockCase::I, BlockCase::II, BlockCase::III, BlockCase::IIIstar})
    CHECK(case_from_name(case_name(c)) == c);
  CHECK_THROWS_AS(case_from_name("IV"), InputError);
}

TEST_CASE("profile validation") {
  Population pop{table8(), build_type(table8(), Family::parochial_selfish),
                 build_adversary_type(table8(), Recipe::b4_antiparochial_efficient)};
  CHECK_NOTHROW(validate_profile(pop, b4_profile()));
  auto bad = b4_profile();
  bad.mu[0][0] = 1;
  CHECK_THROWS_AS(validate_profile(pop, bad), InputError);
  auto unbalanced = b4_profile();
  unbalanced.info = make_info(rat(1, 2), rat(1, 4), rat(4, 9), rat(11, 36));
  CHECK_THROWS_AS(validate_profile(pop, unbalanced), InputError);
  auto missing = b4_profile();
  missing.sigma[static_cast<int>(ClassI::tau_tau)].reset();
  CHECK_THROWS_AS(validate_profile(pop, missing), InputError);
}

TEST_CASE("Bayes-Nash equilibrium check on the coordination example") {
  Population pop = ex4();
  auto ok = s1_profile(rat(1, 4), rat(1, 100), pure_pair(2, 0, 1), pure_pair(2, 0, 1));
  CHECK_FALSE(check_bayes_nash(pop, ok));
  auto loose = s1_profile(rat(1, 4), rat(1, 2), pure_pair(2, 0, 1), pure_pair(2, 0, 1));
  auto v = check_bayes_nash(pop, loose);
  REQUIRE(v);
  CHECK(v->cls == ClassI::tau_u);
  CHECK(v->type == TypeId::tau);
  CHECK(v->better_response == 0);
}

TEST_CASE("stability and fitness of the coordination example") {
  Population pop = ex4();
  auto mp = s1_profile(rat(1, 4), rat(1, 100), pure_pair(2, 0, 1), pure_pair(2, 0, 1));
  CHECK(is_bayes_nash_stable(pop, mp).stable);
  Fitness f = average_fitness_ii(pop, mp);
  // observable theta earn 2 on (A,B); every u agent plays A against tau and earns 1, tau earns 3
  Rational pu = rat(1, 4) / (2 - rat(1, 100));
  Rational pth = 1 - 2 * pu;
  Rational g_theta = (pth * 2 + (pu * rat(1, 100)) * 1) / (1 - rat(1, 4));
  Rational g_tau = (pu * 3 + (pu * (1 - rat(1, 100))) * 1) / rat(1, 4);
  CHECK(f.theta == g_theta);
  CHECK(f.tau == g_tau);
  CHECK(f.theta == rat(1193, 597));
  CHECK(f.tau == rat(399, 199));
}

TEST_CASE("b4 profile with anti-parochial mutants") {
  MaterialGame g = table8();
  Population pop{g, build_type(g, Family::parochial_selfish),
                 build_adversary_type(g, Recipe::b4_antiparochial_efficient)};
  auto mp = b4_profile();
  CHECK_FALSE(check_bayes_nash(pop, mp));
  CHECK(is_bayes_nash_stable(pop, mp).stable);
  Fitness f = average_fitness_ii(pop, mp);
  CHECK(f.theta == rat(78, 9));
  CHECK(f.tau == rat(79, 9));

  Population pe{g, build_type(g, Family::parochial_efficient), pop.tau};
  auto s = is_bayes_nash_stable(pe, mp);
  CHECK_FALSE(s.stable);
  REQUIRE(s.internal);
  CHECK(s.internal->cls == ClassI::theta_u);
  CHECK(s.internal->type == TypeId::theta);
}

TEST_CASE("strong incentives without conditional ones") {
  Population pop = b2_pop();
  auto mp = b2_profile();
  CHECK_FALSE(check_bayes_nash(pop, mp));
  auto w = find_blocking_ii(pop, mp);
  REQUIRE(w);
  CHECK(w->kind == BlockCase::IIIstar);
  CHECK(w->first.label == Label::u);
  CHECK(w->second.label == Label::u);
  REQUIRE(w->first_plan.of(TypeId::theta));
  CHECK(*w->first_plan.of(TypeId::theta) == MixedStrategy::pure(2, 0));
  CHECK(*w->second_plan.of(TypeId::theta) == MixedStrategy::pure(2, 0));
  std::vector<MixedStrategy> mixes{MixedStrategy({rat(1, 3), rat(2, 3)}), MixedStrategy({rat(5, 7), rat(2, 7)})};
  CHECK(verify_witness_ii(pop, mp, *w, mixes));

  BlockingSearchOptions conditional;
  conditional.cases = {BlockCase::I, BlockCase::II, BlockCase::III};
  CHECK_FALSE(find_blocking_ii(pop, mp, conditional));
}

TEST_CASE("no hidden types reduces to complete information") {
  MaterialGame g({"A", "B"}, Matrix::from_ints({{0, 2}, {3, 0}}), true);
  Matrix th = Matrix::from_ints({{0, 2}, {3, 0}});
  Matrix ta = Matrix::from_ints({{4, 2}, {3, 0}});
  Population pop{g, custom_type(g, th, th), custom_type(g, ta, ta)};
  MixedStrategy m({rat(2, 5), rat(3, 5)});
  std::vector<MatchingProfileC> profiles{
      make_profile_c(rat(1, 4), 0, pure_pair(2, 0, 1), std::nullopt, pure_pair(2, 0, 0)),
      make_profile_c(rat(1, 4), 0, StrategyPair{m, m}, std::nullopt, pure_pair(2, 0, 0)),
      make_profile_c(rat(1, 4), rat(1, 6), pure_pair(2, 0, 1), pure_pair(2, 1, 0), pure_pair(2, 0, 0)),
      make_profile_c(rat(1, 4), 0, pure_pair(2, 0, 1), std::nullopt, pure_pair(2, 1, 1))};
  for (const auto& c : profiles) {
    MatchingProfileI i = from_complete(c);
    CHECK(to_complete(i) == c);
    CHECK(is_bayes_nash_stable(pop, i).stable == is_nash_stable(pop, c).stable);
    CHECK(bool(check_bayes_nash(pop, i)) == bool(check_internal(pop, c)));
    if (!check_internal(pop, c)) {
      CHECK(average_fitness_ii(pop, i).theta == average_fitness(pop, c).theta);
      CHECK(average_fitness_ii(pop, i).tau == average_fitness(pop, c).tau);
    }
  }
}

TEST_CASE("witnesses always re-verify") {
  Population pop = ex4();
  for (long d : {1, 10, 30}) {
    for (const auto& c : family_s1(pop.game, rat(1, 4), rat(d, 100))) {
      auto s = is_bayes_nash_stable(pop, c.profile);
      if (s.blocking) CHECK(verify_witness_ii(pop, c.profile, *s.blocking, {MixedStrategy({rat(1, 3), rat(2, 3)})}));
    }
  }
}

TEST_CASE("search refuses oversized games with hidden types") {
  MaterialGame g({"A", "B", "C", "D", "E"}, Matrix(5, 5, rat(1)));
  Population pop{g, build_type(g, Family::selfish), build_type(g, Family::efficient)};
  MatchingProfileI mp;
  mp.epsilon = rat(1, 2);
  mp.info = make_info(mp.epsilon, 0, 0, 1);
  for (auto& r : mp.mu) r.fill(0);
  mp.mu[2][2] = 1;
  mp.sigma[static_cast<int>(ClassI::u_u)] = pure_pair(5, 0, 0);
  CHECK_THROWS_AS(find_blocking_ii(pop, mp), InputError);
}
