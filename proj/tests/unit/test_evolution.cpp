#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "prefmatch/evolution.hpp"

using namespace prefmatch;

namespace {

MaterialGame pd() { return MaterialGame({"C", "D"}, Matrix::from_ints({{3, 1}, {4, 2}})); }
MaterialGame bos() { return MaterialGame({"A", "B"}, Matrix::from_ints({{0, 1}, {3, 0}}), true); }
MaterialGame table3() {
  return MaterialGame({"A", "B", "C"}, Matrix::from_ints({{0, 3, 2}, {5, 0, 0}, {8, 0, 0}}), true);
}
MaterialGame table4() {
  return MaterialGame({"A", "B", "C"}, Matrix::from_ints({{0, 0, 2}, {0, 3, 0}, {8, 0, 0}}), true);
}

VerdictRecord rec(long a, long b) { return {Mode::complete, rat(1, 2), "r", rat(a), rat(b), compare(rat(a), rat(b))}; }

}  // namespace

TEST_CASE("aggregate follows the definitions") {
  CHECK(aggregate_of({}) == Aggregate::inconclusive);
  CHECK(aggregate_of({rec(3, 3), rec(4, 3)}) == Aggregate::theta_es);
  CHECK(aggregate_of({rec(3, 3), rec(2, 3)}) == Aggregate::tau_es);
  CHECK(aggregate_of({rec(3, 3), rec(1, 1)}) == Aggregate::neutral_tie);
  CHECK(aggregate_of({rec(4, 3), rec(2, 3)}) == Aggregate::mixed);
  std::vector<VerdictRecord> rs{rec(1, 1), rec(5, 2), rec(2, 2), rec(7, 6)};
  Aggregate first = aggregate_of(rs);
  std::sort(rs.begin(), rs.end(), [](const auto& a, const auto& b) { return a.g_theta < b.g_theta; });
  do {
    CHECK(aggregate_of(rs) == first);
  } while (std::next_permutation(rs.begin(), rs.end(),
                                 [](const auto& a, const auto& b) { return a.g_theta < b.g_theta; }));
}

TEST_CASE("same-type inefficiency") {
  for (const auto& g : {pd(), bos(), table3(), table4()})
    CHECK_FALSE(same_type_inefficiency(build_type(g, Family::parochial_efficient), g).inefficient);
  CHECK(same_type_inefficiency(build_type(table4(), Family::selfish), table4()).inefficient);
  CHECK(same_type_inefficiency(build_type(pd(), Family::selfish), pd()).inefficient);
}

TEST_CASE("fitness comparison over enumerated stable profiles") {
  MaterialGame g = table4();
  Population ex3{g, build_type(g, Family::homophilic_selfish, rat(1)), build_adversary_type(g, Recipe::ex3_mutant)};
  auto r = compare_over_stable(ex3, Mode::complete, {rat(1, 4), rat(1, 2), rat(3, 4)});
  REQUIRE(r.records.size() == 3);
  for (const auto& x : r.records) {
    CHECK(x.g_theta == 3);
    CHECK(x.g_tau == 5);
    CHECK(x.comparison == Comparison::lt);
  }
  CHECK(r.aggregate == Aggregate::tau_es);

  Population p{pd(), build_type(pd(), Family::parochial_efficient), build_type(pd(), Family::selfish)};
  CHECK(compare_over_stable(p, Mode::complete, default_epsilon_grid()).aggregate == Aggregate::theta_es);

  MaterialGame t3 = table3();
  Population strong{t3, build_type(t3, Family::homophilic_selfish, rat(9)), build_adversary_type(t3, Recipe::ex2_mutant)};
  CHECK(compare_over_stable(strong, Mode::complete, default_epsilon_grid()).aggregate == Aggregate::neutral_tie);
}

TEST_CASE("assortative records do not depend on epsilon") {
  MaterialGame g = table3();
  Population pop{g, build_type(g, Family::homophilic_selfish, rat(1)), build_adversary_type(g, Recipe::ex2_mutant)};
  auto r = compare_over_stable(pop, Mode::complete, default_epsilon_grid());
  std::optional<std::pair<Rational, Rational>> seen;
  for (const auto& x : r.records) {
    if (x.profile_id.find("mu_theta_tau=0/1") == std::string::npos) continue;
    if (!seen) seen = std::pair{x.g_theta, x.g_tau};
    CHECK(seen->first == x.g_theta);
    CHECK(seen->second == x.g_tau);
  }
  CHECK(seen);
}

TEST_CASE("verdict in both directions") {
  MaterialGame g = table3();
  Population pop{g, build_type(g, Family::homophilic_selfish, rat(1)), build_adversary_type(g, Recipe::ex2_mutant)};
  auto v = evo_verdict(pop, Mode::complete, default_epsilon_grid());
  CHECK(v.forward.aggregate == Aggregate::tau_es);
  CHECK(v.reversed.aggregate == Aggregate::theta_es);
  CHECK(v.direction == "tau_ES_against_theta");

  auto s = build_type(pd(), Family::selfish);
  Population same{pd(), s, s};
  auto t = evo_verdict(same, Mode::complete, default_epsilon_grid());
  CHECK(t.forward.aggregate == Aggregate::neutral_tie);
  CHECK(t.reversed.aggregate == Aggregate::neutral_tie);
  CHECK(t.direction == "none");
}

TEST_CASE("incomplete mode needs candidates and reports coverage") {
  MaterialGame g = bos();
  Population pop{g, build_type(g, Family::homophilic_efficient, rat(1)), build_adversary_type(g, Recipe::ex4_coordination_seeker)};
  CHECK_THROWS_AS(compare_over_stable(pop, Mode::incomplete, default_epsilon_grid()), InputError);
  std::vector<Candidate> cands;
  for (const auto& e : default_epsilon_grid())
    cands.push_back({"eps=" + fraction_string(e), s1_profile(e, rat(1, 100), pure_pair(2, 0, 1), pure_pair(2, 0, 1))});
  auto r = compare_over_stable(pop, Mode::incomplete, {}, cands);
  CHECK(r.records.size() == cands.size());
  for (const auto& x : r.records) CHECK(x.comparison == Comparison::lt);
  CHECK(r.aggregate == Aggregate::tau_es);
  REQUIRE_FALSE(r.warnings.empty());
  CHECK(r.warnings.back().find("supplied candidates") != std::string::npos);
}

TEST_CASE("candidate families are valid profiles") {
  MaterialGame g = bos();
  Population pop{g, build_type(g, Family::selfish), build_type(g, Family::efficient)};
  for (const auto& e : {rat(1, 10), rat(1, 4), rat(1, 2), rat(9, 10)})
    for (const auto& d : {rat(1, 100), rat(1, 2)}) {
      for (const auto& c : family_s1(g, e, d)) {
        CHECK_NOTHROW(validate_profile(pop, c.profile));
        CHECK(c.profile.info.q.q_theta == d);
      }
      for (const auto& c : family_s2(g, e, d)) {
        CHECK_NOTHROW(validate_profile(pop, c.profile));
        CHECK(c.profile.info.q.q_theta == d);
      }
    }
  for (const auto& c : family_s3(g, rat(1, 4))) {
    CHECK_NOTHROW(validate_profile(pop, c.profile));
    CHECK(c.profile.info.q.q_theta == rat(3, 4));
  }
  CHECK_THROWS_AS(family_s1(g, rat(1, 2), rat(0)), InputError);
}

TEST_CASE("exchanging roles") {
  MaterialGame g({"A", "B", "C"}, Matrix::from_ints({{0, 8, 7}, {10, 0, 0}, {10, 0, 0}}), true);
  Population pop{g, build_type(g, Family::parochial_selfish), build_adversary_type(g, Recipe::b4_antiparochial_efficient)};
  Population rev{g, pop.tau, pop.theta};
  for (const auto& c : family_s2(g, rat(1, 3), rat(1, 2))) {
    MatchingProfileI s = swap_roles(c.profile);
    CHECK(swap_roles(s) == c.profile);
    CHECK_NOTHROW(validate_profile(rev, s));
    Fitness a = average_fitness_ii(pop, c.profile), b = average_fitness_ii(rev, s);
    CHECK(a.theta == b.tau);
    CHECK(a.tau == b.theta);
  }
}

TEST_CASE("replication cases all match") {
  for (const auto& id : replication_cases()) {
    Replication r = replicate(id);
    for (const auto& row : r.rows) {
      INFO(id << ": " << row.quantity << " expected " << row.expected << " computed " << row.computed);
      CHECK(row.match);
    }
  }
  CHECK_THROWS_AS(replicate("ex9"), InputError);
}

TEST_CASE("efficient incumbents beat mutants with same-type inefficiency") {
  std::mt19937 rng(4242);
  int tested = 0;
  for (int k = 0; k < 200 && tested < 40; ++k) {
    MaterialGame g({"A", "B"}, oracle::random_matrix(rng, 2, 1, 6));
    PreferenceType tau =
        custom_type(g, oracle::random_matrix(rng, 2, 0, 4), oracle::random_matrix(rng, 2, 0, 4), "tau");
    auto ineff = same_type_inefficiency(tau, g);
    if (!ineff.inefficient || ineff.degenerate) continue;
    for (auto theta : {build_type(g, Family::parochial_efficient), build_type(g, Family::homophilic_efficient, rat(1))}) {
      Population pop{g, theta, tau};
      if (analyze(pop).degenerate()) continue;
      ++tested;
      auto r = compare_over_stable(pop, Mode::complete, {rat(1, 10), rat(1, 2), rat(9, 10)});
      INFO("scenario " << k << " theta " << theta.name);
      CHECK(r.aggregate == Aggregate::theta_es);
    }
  }
  CHECK(tested >= 20);
}
