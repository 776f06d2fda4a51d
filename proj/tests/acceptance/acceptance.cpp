// One PASS/FAIL line per acceptance criterion. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "prefmatch/evolution.hpp"

using namespace prefmatch;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", s);
  return buf;
}

Outcome replication(const std::string& id, double limit_s) {
  auto start = std::chrono::steady_clock::now();
  Replication r = replicate(id);
  double t = elapsed_s(start);
  std::size_t matched = 0;
  std::string first_miss;
  for (const auto& row : r.rows) {
    if (row.match) ++matched;
    else if (first_miss.empty()) first_miss = row.quantity + " expected " + row.expected + " got " + row.computed;
  }
  std::ostringstream d;
  d << id << ": " << matched << "/" << r.rows.size() << " rows match in " << seconds(t) << " (limit "
    << seconds(limit_s) << ")";
  if (!first_miss.empty()) d << "; " << first_miss;
  return {r.ok() && t < limit_s, d.str()};
}

Matrix random_matrix(std::mt19937& rng, std::size_t n, int lo, int hi) { return oracle::random_matrix(rng, n, lo, hi); }

Outcome oracle_equivalence() {
  auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(20240607);
  std::size_t mismatches = 0;
  const std::size_t n = 1000;
  for (std::size_t k = 0; k < n; ++k) {
    TypedGame g{random_matrix(rng, 2, 0, 4), random_matrix(rng, 2, 0, 4)};
    std::vector<StrategyPair> got;
    for (const auto& e : enumerate_nash(g).equilibria) got.push_back(e.pair);
    std::sort(got.begin(), got.end());
    if (got != oracle::nash_2x2(g)) ++mismatches;
  }
  double t = elapsed_s(start);
  std::ostringstream d;
  d << n << " games, " << mismatches << " mismatches, " << seconds(t);
  return {mismatches == 0 && t < 30, d.str()};
}

MaterialGame random_game(std::mt19937& rng, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('A' + i)));
  return MaterialGame(labels, random_matrix(rng, n, 1, 1000));
}

// Wide integer ranges keep payoff ties, and with them non-isolated equilibria, rare.
Population random_population(std::mt19937& rng) {
  std::size_t n = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
  MaterialGame g = random_game(rng, n);
  auto type = [&](const std::string& name) {
    return custom_type(g, random_matrix(rng, n, 0, 1000), random_matrix(rng, n, 0, 1000), name);
  };
  return Population{g, type("theta"), type("tau")};
}

Rational random_epsilon(std::mt19937& rng) {
  static const std::vector<Rational> grid{rat(1, 10), rat(1, 4), rat(1, 2), rat(2, 3), rat(9, 10)};
  return grid[std::uniform_int_distribution<std::size_t>(0, grid.size() - 1)(rng)];
}

bool in_set(const LoserBest& lb, const StrategyPair& p) {
  return std::any_of(lb.members.begin(), lb.members.end(),
                     [&](const Equilibrium& e) { return e.pair == p || e.pair.swapped() == p; });
}

Outcome loser_best_property() {
  std::mt19937 rng(7);
  std::size_t scenarios = 0, skipped = 0, profiles = 0, violations = 0, substitutions = 0;
  std::string first;
  while (scenarios < 200) {
    Population pop = random_population(rng);
    PopulationAnalysis a = analyze(pop);
    if (a.degenerate()) {
      ++skipped;
      continue;
    }
    ++scenarios;
    Rational eps = random_epsilon(rng);
    EnumerateOptions all;
    all.loser_best_only = false;
    StableEnumeration en = enumerate_stable(pop, eps, all, &a);
    for (const auto& cls : en.classes) {
      ++profiles;
      const MatchingProfileC& mp = cls.profile;
      for (auto [c, lb] : {std::pair{ClassC::theta_theta, &a.lb_theta}, std::pair{ClassC::tau_tau, &a.lb_tau}}) {
        std::size_t i = static_cast<std::size_t>(c);
        if (!mp.active(c)) continue;
        if (!in_set(*lb, *mp.sigma[i])) {
          ++violations;
          if (first.empty()) first = class_name(c) + " entry outside the loser-best set";
          continue;
        }
        for (const auto& m : lb->members)
          for (const auto& pair : {m.pair, m.pair.swapped()}) {
            MatchingProfileC sub = mp;
            sub.sigma[i] = pair;
            ++substitutions;
            if (!is_nash_stable(pop, sub, &a).stable) {
              ++violations;
              if (first.empty()) first = "substitution in " + class_name(c) + " breaks stability";
            }
          }
      }
    }
  }
  std::ostringstream d;
  d << scenarios << " scenarios (" << skipped << " degenerate redrawn), " << profiles << " stable classes, "
    << substitutions << " substitutions, " << violations << " violations";
  if (!first.empty()) d << "; " << first;
  return {violations == 0 && profiles > 0, d.str()};
}

Outcome construction_suite() {
  std::mt19937 rng(11);
  const std::size_t n = 250;
  std::size_t degenerate = 0, checked = 0, violations = 0;
  std::string first;
  for (std::size_t k = 0; k < n; ++k) {
    Population pop = random_population(rng);
    Rational eps = random_epsilon(rng);
    try {
      Construction c = construct_stable(pop, eps);
      if (c.degenerate) {
        ++degenerate;
        continue;
      }
      ++checked;
      if (!is_nash_stable(pop, c.profile).stable) {
        ++violations;
        if (first.empty()) first = "case " + std::to_string(c.case_number) + " output not stable";
      }
    } catch (const std::exception& e) {
      ++checked;
      ++violations;
      if (first.empty()) first = e.what();
    }
  }
  std::ostringstream d;
  d << n << " scenarios, " << degenerate << " degenerate excluded (" << (100 * degenerate / n) << "%), " << checked
    << " checked, " << violations << " violations";
  if (!first.empty()) d << "; " << first;
  return {violations == 0 && checked >= 200 && degenerate * 5 < n, d.str()};
}

MaterialGame table4_game() {
  return MaterialGame({"A", "B", "C"}, Matrix::from_ints({{0, 0, 2}, {0, 3, 0}, {8, 0, 0}}), true);
}
MaterialGame pd_game() { return MaterialGame({"C", "D"}, Matrix::from_ints({{3, 1}, {4, 2}})); }

// Material games of the worked examples.
std::vector<MaterialGame> shipped_games() {
  return {pd_game(),
          MaterialGame({"A", "B"}, Matrix::from_ints({{0, 2}, {3, 0}}), true),
          MaterialGame({"A", "B"}, Matrix::from_ints({{0, 1}, {3, 0}}), true),
          MaterialGame({"A", "B", "C"}, Matrix::from_ints({{0, 3, 2}, {5, 0, 0}, {8, 0, 0}}), true),
          table4_game(),
          MaterialGame({"A", "B"}, Matrix::from_ints({{3, 0}, {0, 0}}), true),
          MaterialGame({"A", "B", "C"}, Matrix::from_ints({{0, 8, 7}, {10, 0, 0}, {10, 0, 0}}), true)};
}

std::string record_summary(const StabilityReport& r) {
  std::ostringstream s;
  s << aggregate_name(r.aggregate);
  if (!r.records.empty())
    s << " (G_theta=" << fraction_string(r.records.front().g_theta)
      << ", G_tau=" << fraction_string(r.records.front().g_tau) << " in the first of " << r.records.size() << ")";
  return s.str();
}

Outcome stability_claims_suite() {
  std::vector<std::string> failures, notes;
  auto check = [&](const std::string& what, bool ok, const std::string& detail) {
    notes.push_back(what + ": " + detail);
    if (!ok) failures.push_back(what);
  };
  const auto grid = default_epsilon_grid();

  {
    MaterialGame g = table4_game();
    PreferenceType mutant = build_adversary_type(g, Recipe::ex3_mutant, {}, "tau");
    Population pop{g, build_type(g, Family::parochial_efficient, std::nullopt, "theta"), mutant};
    StabilityReport r = compare_over_stable(pop, Mode::complete, grid);
    std::string detail = record_summary(r) + ", mutant same-type inefficiency " +
                         (same_type_inefficiency(mutant, g).inefficient ? "yes" : "no");
    check("parochial efficient vs ex3 mutant", r.aggregate == Aggregate::theta_es, detail);
  }

  {
    MaterialGame g = pd_game();
    PreferenceType selfish = build_type(g, Family::selfish, std::nullopt, "tau");
    // The selfish self-game is the material game itself.
    const std::string lb_material = same_type_inefficiency(selfish, g).inefficient ? "no" : "yes";
    for (auto [name, fam, lambda] :
         {std::tuple{"homophilic selfish (lambda=1)", Family::homophilic_selfish, std::optional<Rational>(1)},
          std::tuple{"parochial selfish", Family::parochial_selfish, std::optional<Rational>()}}) {
      Population pop{g, build_type(g, fam, lambda, "theta"), selfish};
      StabilityReport r = compare_over_stable(pop, Mode::complete, grid);
      check(name + std::string(" vs selfish (PD)"), r.aggregate == Aggregate::theta_es,
            record_summary(r) + ", loser-best equilibria of the material game efficient " + lb_material);
    }
  }

  {
    // Parochial efficient incumbent against every shipped recipe that fits the game,
    // plus the selfish and efficient families, over the default candidate families.
    const std::vector<Rational> deltas{rat(1, 100), rat(1, 2)};
    const std::vector<Recipe> recipes{
        Recipe::prop2_advantage_efficient, Recipe::prop5_anticoordinator, Recipe::prop6_advantage_only_efficient,
        Recipe::ex2_mutant,                Recipe::ex3_mutant,            Recipe::ex4_coordination_seeker,
        Recipe::b2_mixed_motive,           Recipe::b4_antiparochial_efficient};
    std::size_t records = 0, dominated = 0, pairs = 0;
    std::string first;
    for (const MaterialGame& g : shipped_games()) {
      std::vector<PreferenceType> mutants{build_type(g, Family::selfish, std::nullopt, "selfish"),
                                          build_type(g, Family::efficient, std::nullopt, "efficient")};
      for (Recipe r : recipes) {
        try {
          mutants.push_back(build_adversary_type(g, r, {}, recipe_name(r)));
        } catch (const InputError&) {
        }
      }
      std::vector<Candidate> candidates = default_candidates(g, grid, deltas);
      PreferenceType pe = build_type(g, Family::parochial_efficient, std::nullopt, "theta");
      for (const auto& m : mutants) {
        ++pairs;
        StabilityReport r = compare_over_stable(Population{g, pe, m}, Mode::incomplete, grid, candidates);
        for (const auto& rec : r.records) {
          ++records;
          if (rec.comparison == Comparison::lt) {
            ++dominated;
            if (first.empty()) first = m.name + " " + rec.profile_id;
          }
        }
      }
    }
    std::string detail = std::to_string(pairs) + " game/mutant pairs, " + std::to_string(records) +
                         " Bayes-Nash stable candidate records, " + std::to_string(dominated) +
                         " with G_theta < G_tau" + (first.empty() ? "" : "; first: " + first);
    check("parochial efficient never dominated (incomplete)", dominated == 0 && records > 0, detail);
  }

  std::ostringstream d;
  for (std::size_t i = 0; i < notes.size(); ++i) d << (i ? "; " : "") << notes[i];
  if (!failures.empty()) {
    d << " | failing:";
    for (const auto& f : failures) d << " [" << f << "]";
  }
  return {failures.empty(), d.str()};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"replicate ex1", [] { return replication("ex1", 1); }},
      {"replicate ex3", [] { return replication("ex3", 1); }},
      {"replicate ex2", [] { return replication("ex2", 1); }},
      {"replicate ex4", [] { return replication("ex4", 5); }},
      {"replicate b2", [] { return replication("b2", 5); }},
      {"replicate b4", [] { return replication("b4", 10); }},
      {"2x2 oracle equivalence", oracle_equivalence},
      {"loser-best property suite", loser_best_property},
      {"construction suite", construction_suite},
      {"stability claims spot-suite", stability_claims_suite},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " -- " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
