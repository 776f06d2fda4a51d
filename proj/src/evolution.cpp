#include "prefmatch/evolution.hpp"

#include <algorithm>
#include <functional>

namespace prefmatch {

std::string mode_name(Mode m) { return m == Mode::complete ? "complete" : "incomplete"; }

Mode mode_from_name(const std::string& name) {
  if (name == "complete") return Mode::complete;
  if (name == "incomplete") return Mode::incomplete;
  throw InputError("unknown mode '" + name + "' (expected complete or incomplete)");
}

std::string comparison_name(Comparison c) {
  switch (c) {
    case Comparison::gt: return "gt";
    case Comparison::eq: return "eq";
    case Comparison::lt: return "lt";
  }
  return "";
}

std::string aggregate_name(Aggregate a) {
  switch (a) {
    case Aggregate::theta_es: return "theta_ES_against_tau";
    case Aggregate::tau_es: return "tau_ES_against_theta";
    case Aggregate::neutral_tie: return "neutral_tie";
    case Aggregate::mixed: return "mixed";
    case Aggregate::inconclusive: return "inconclusive";
  }
  return "";
}

SameTypeInefficiency same_type_inefficiency(const PreferenceType& t, const MaterialGame& game,
                                            std::size_t support_cap) {
  LoserBest lb = loser_best_set(t, support_cap);
  const Rational best = efficient_pairs(game).best_total;
  SameTypeInefficiency out;
  out.degenerate = lb.degenerate;
  for (const auto& e : lb.members)
    if (material_total(game, e.pair.first, e.pair.second) < best) out.inefficient = true;
  return out;
}

Comparison compare(const Rational& g_theta, const Rational& g_tau) {
  if (g_theta > g_tau) return Comparison::gt;
  if (g_theta < g_tau) return Comparison::lt;
  return Comparison::eq;
}

Aggregate aggregate_of(const std::vector<VerdictRecord>& records) {
  if (records.empty()) return Aggregate::inconclusive;
  bool gt = false, lt = false;
  for (const auto& r : records) {
    gt = gt || r.comparison == Comparison::gt;
    lt = lt || r.comparison == Comparison::lt;
  }
  if (gt && lt) return Aggregate::mixed;
  if (gt) return Aggregate::theta_es;
  if (lt) return Aggregate::tau_es;
  return Aggregate::neutral_tie;
}

std::vector<Rational> default_epsilon_grid() {
  std::vector<Rational> out;
  for (long k = 1; k <= 9; ++k) out.push_back(rat(k, 10));
  return out;
}

namespace {

std::string complete_profile_text(const MaterialGame& g, const MatchingProfileC& mp) {
  static const char* names[] = {"theta-theta", "theta-tau", "tau-tau"};
  std::string out;
  for (int c = 0; c < 3; ++c) {
    if (!mp.sigma[c]) continue;
    if (!out.empty()) out += "; ";
    out += std::string(names[c]) + "=" + pair_text(g, *mp.sigma[c]);
  }
  return out;
}

VerdictRecord make_record(Mode mode, const Rational& eps, std::string id, const Fitness& f) {
  return {mode, eps, std::move(id), f.theta, f.tau, compare(f.theta, f.tau)};
}

}  // namespace

StabilityReport compare_over_stable(const Population& pop, Mode mode, const std::vector<Rational>& epsilons,
                                    const std::vector<Candidate>& candidates,
                                    const BlockingSearchOptions& opts) {
  StabilityReport report;
  report.mode = mode;
  const PopulationAnalysis analysis = analyze(pop);
  if (analysis.degenerate())
    report.warnings.push_back("an equilibrium set has non-singleton components; extreme points are used");
  if (mode == Mode::complete) {
    if (epsilons.empty()) throw InputError("complete mode needs at least one epsilon");
    for (const auto& eps : epsilons) {
      StableEnumeration en = enumerate_stable(pop, eps, {}, &analysis);
      if (en.classes.empty())
        report.warnings.push_back("no stable profile found at eps=" + fraction_string(eps));
      for (std::size_t i = 0; i < en.classes.size(); ++i) {
        const StableClass& sc = en.classes[i];
        ++report.examined;
        for (const auto& v : sc.vertices) {
          std::string id = "eps=" + fraction_string(eps) + " " + pattern_name(sc.pattern) + " {" +
                           complete_profile_text(pop.game, sc.profile) +
                           "} mu_theta_tau=" + fraction_string(v.mu_theta_tau);
          report.records.push_back(make_record(mode, eps, std::move(id), v.fitness));
        }
      }
    }
  } else {
    if (candidates.empty()) throw InputError("incomplete mode needs a nonempty candidate family");
    std::size_t stable = 0;
    for (const auto& c : candidates) {
      ++report.examined;
      if (!is_bayes_nash_stable(pop, c.profile, opts, &analysis).stable) continue;
      ++stable;
      report.records.push_back(
          make_record(mode, c.profile.epsilon, c.id, average_fitness_ii(pop, c.profile)));
    }
    report.warnings.push_back("aggregate over supplied candidates: " + std::to_string(stable) + " of " +
                              std::to_string(candidates.size()) + " are Bayes-Nash stable");
  }
  report.aggregate = aggregate_of(report.records);
  return report;
}

MatchingProfileI swap_roles(const MatchingProfileI& mp) {
  auto flip = [](int l) { return l == 2 ? 2 : 1 - l; };
  MatchingProfileI out;
  out.epsilon = 1 - mp.epsilon;
  out.info.p = {mp.info.p[1], mp.info.p[0], mp.info.p[2]};
  out.info.q = {mp.info.q.q_tau, mp.info.q.q_theta};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out.mu[flip(a)][flip(b)] = mp.mu[a][b];
  for (ClassI c : kClassesI) {
    const auto& s = mp.sigma[static_cast<int>(c)];
    if (!s) continue;
    auto [a, b] = class_labels(c);
    Label fa = static_cast<Label>(flip(static_cast<int>(a)));
    Label fb = static_cast<Label>(flip(static_cast<int>(b)));
    ClassI target = class_of(fa, fb);
    bool keeps_order = class_labels(target).first == fa;
    out.sigma[static_cast<int>(target)] = keeps_order ? *s : s->swapped();
  }
  return out;
}

EvoVerdict evo_verdict(const Population& pop, Mode mode, const std::vector<Rational>& epsilons,
                       const std::vector<Candidate>& candidates, const BlockingSearchOptions& opts) {
  EvoVerdict v;
  v.forward = compare_over_stable(pop, mode, epsilons, candidates, opts);
  Population rev{pop.game, pop.tau, pop.theta, pop.support_cap};
  std::vector<Candidate> rev_candidates;
  for (const auto& c : candidates) rev_candidates.push_back({c.id + " (roles exchanged)", swap_roles(c.profile)});
  v.reversed = compare_over_stable(rev, mode, epsilons, rev_candidates, opts);
  bool theta_wins = v.forward.aggregate == Aggregate::theta_es;
  bool tau_wins = v.reversed.aggregate == Aggregate::theta_es;
  v.direction = theta_wins && tau_wins ? "both"
                : theta_wins           ? "theta_ES_against_tau"
                : tau_wins             ? "tau_ES_against_theta"
                                       : "none";
  return v;
}

namespace {

MatchingProfileI empty_profile(const Rational& eps, const Rational& p_theta, const Rational& p_tau,
                               const Rational& p_u) {
  MatchingProfileI mp;
  mp.epsilon = eps;
  mp.info = make_info(eps, p_theta, p_tau, p_u);
  for (auto& row : mp.mu) row.fill(0);
  return mp;
}

std::vector<StrategyPair> unordered_pure_pairs(std::size_t n) {
  std::vector<StrategyPair> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out.push_back(pure_pair(n, i, j));
  return out;
}

std::vector<StrategyPair> ordered_pure_pairs(std::size_t n) {
  std::vector<StrategyPair> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.push_back(pure_pair(n, i, j));
  return out;
}

std::string family_id(const std::string& family, const Rational& eps, const std::optional<Rational>& delta) {
  std::string id = family + " eps=" + fraction_string(eps);
  if (delta) id += " delta=" + fraction_string(*delta);
  return id;
}

void check_delta(const Rational& delta) {
  if (delta <= 0 || delta >= 1) throw InputError("delta must lie strictly between 0 and 1");
}

}  // namespace

MatchingProfileI s1_profile(const Rational& eps, const Rational& delta, const StrategyPair& theta_theta,
                            const StrategyPair& u_tau) {
  check_delta(delta);
  const Rational pu = eps / (2 - delta);
  MatchingProfileI mp = empty_profile(eps, 1 - 2 * pu, pu, pu);
  mp.mu[1][2] = 1;
  mp.mu[2][1] = 1;
  if (mp.info.p[0] > 0) {
    mp.mu[0][0] = 1;
    mp.sigma[static_cast<int>(ClassI::theta_theta)] = theta_theta;
  }
  mp.sigma[static_cast<int>(ClassI::tau_u)] = u_tau.swapped();
  return mp;
}

std::vector<Candidate> family_s1(const MaterialGame& game, const Rational& eps, const Rational& delta) {
  check_delta(delta);
  std::vector<Candidate> out;
  if (eps / (2 - delta) > rat(1, 2)) return out;
  const std::size_t n = game.size();
  for (const auto& tt : unordered_pure_pairs(n))
    for (const auto& ut : ordered_pure_pairs(n))
      out.push_back({family_id("S1", eps, delta) + " theta-theta=" + pair_text(game, tt) +
                         " u-tau=" + pair_text(game, ut),
                     s1_profile(eps, delta, tt, ut)});
  return out;
}

std::vector<Candidate> family_s2(const MaterialGame& game, const Rational& eps, const Rational& delta) {
  check_delta(delta);
  std::vector<Candidate> out;
  const Rational pu = (1 - eps) / (1 + delta);
  const Rational p_tau = 1 - 2 * pu;
  if (p_tau < 0 || p_tau > eps) return out;
  const std::size_t n = game.size();
  std::vector<std::optional<StrategyPair>> tau_pairs;
  if (p_tau > 0)
    for (const auto& p : unordered_pure_pairs(n)) tau_pairs.emplace_back(p);
  else
    tau_pairs.emplace_back(std::nullopt);
  for (const auto& tu : ordered_pure_pairs(n))
    for (const auto& xx : tau_pairs) {
      MatchingProfileI mp = empty_profile(eps, pu, p_tau, pu);
      mp.mu[0][2] = 1;
      mp.mu[2][0] = 1;
      mp.sigma[static_cast<int>(ClassI::theta_u)] = tu;
      std::string id = family_id("S2", eps, delta) + " theta-u=" + pair_text(game, tu);
      if (xx) {
        mp.mu[1][1] = 1;
        mp.sigma[static_cast<int>(ClassI::tau_tau)] = *xx;
        id += " tau-tau=" + pair_text(game, *xx);
      }
      out.push_back({std::move(id), std::move(mp)});
    }
  return out;
}

std::vector<Candidate> family_s3(const MaterialGame& game, const Rational& eps) {
  std::vector<Candidate> out;
  for (const auto& uu : unordered_pure_pairs(game.size())) {
    MatchingProfileI mp = empty_profile(eps, 0, 0, 1);
    mp.mu[2][2] = 1;
    mp.sigma[static_cast<int>(ClassI::u_u)] = uu;
    out.push_back({family_id("S3", eps, std::nullopt) + " u-u=" + pair_text(game, uu), std::move(mp)});
  }
  return out;
}

std::vector<Candidate> default_candidates(const MaterialGame& game, const std::vector<Rational>& epsilons,
                                          const std::vector<Rational>& deltas) {
  std::vector<Candidate> out;
  for (const auto& eps : epsilons) {
    for (const auto& d : deltas) {
      for (auto& c : family_s1(game, eps, d)) out.push_back(std::move(c));
      for (auto& c : family_s2(game, eps, d)) out.push_back(std::move(c));
    }
    for (auto& c : family_s3(game, eps)) out.push_back(std::move(c));
  }
  return out;
}

bool Replication::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReplicationRow& r) { return r.match; });
}

namespace {

std::string yes(bool b) { return b ? "true" : "false"; }
std::string fr(const Rational& r) { return fraction_string(r); }

struct Builder {
  Replication rep;

  void add(std::string quantity, std::string expected, std::string computed) {
    bool match = expected == computed;
    rep.rows.push_back({std::move(quantity), std::move(expected), std::move(computed), match});
  }
};

MaterialGame table1_game() {
  return MaterialGame({"A", "B"}, Matrix::from_ints({{0, 2}, {3, 0}}), true);
}
MaterialGame pd_game() { return MaterialGame({"C", "D"}, Matrix::from_ints({{3, 1}, {4, 2}})); }
MaterialGame table3_game() {
  return MaterialGame({"A", "B", "C"}, Matrix::from_ints({{0, 3, 2}, {5, 0, 0}, {8, 0, 0}}), true);
}
MaterialGame table4_game() {
  return MaterialGame({"A", "B", "C"}, Matrix::from_ints({{0, 0, 2}, {0, 3, 0}, {8, 0, 0}}), true);
}
MaterialGame bos_game() { return MaterialGame({"A", "B"}, Matrix::from_ints({{0, 1}, {3, 0}}), true); }
MaterialGame table6_game() { return MaterialGame({"A", "B"}, Matrix::from_ints({{3, 0}, {0, 0}}), true); }
MaterialGame table8_game() {
  return MaterialGame({"A", "B", "C"}, Matrix::from_ints({{0, 8, 7}, {10, 0, 0}, {10, 0, 0}}), true);
}

std::string eq_list(const MaterialGame& g, const EquilibriumSet& s) {
  std::string out;
  for (const auto& e : s.equilibria) out += (out.empty() ? "" : " ") + pair_text(g, e.pair);
  return out;
}

std::string classes_text(const MaterialGame& g, const StableEnumeration& en) {
  std::string out;
  for (const auto& c : en.classes) {
    if (!out.empty()) out += " | ";
    out += pattern_name(c.pattern) + " {" + complete_profile_text(g, c.profile) + "}";
  }
  return out.empty() ? "none" : out;
}

std::string witness_text(const MaterialGame& g, const BlockingWitnessI& w) {
  std::string out = case_name(w.kind) + " " + class_name(w.first.origin) + "/" + class_name(w.second.origin);
  for (const DeviationPlan* p : {&w.first_plan, &w.second_plan}) {
    out += " [";
    for (std::size_t i = 0; i < p->members.size(); ++i)
      out += (i ? "," : "") + type_name(p->members[i]) + ":" + strategy_text(g, p->strategy[i]);
    out += "]";
  }
  return out;
}

void ex1(Builder& b) {
  b.rep.title = "Nash stability with two fixed types";
  MaterialGame g = table1_game();
  Matrix th = Matrix::from_ints({{0, 2}, {3, 0}});
  Matrix ta = Matrix::from_ints({{4, 2}, {3, 0}});
  Population pop{g, custom_type(g, th, th, "theta"), custom_type(g, ta, ta, "tau")};
  PopulationAnalysis a = analyze(pop);
  b.add("theta-theta extreme equilibria", "(A,B) ([2/5,3/5],[2/5,3/5]) (B,A)", eq_list(g, a.theta_self));
  std::string mixed_value = "missing";
  for (const auto& e : a.theta_self.equilibria)
    if (!e.pair.first.pure_index()) mixed_value = fr(e.row_value);
  b.add("theta utility at the mixed equilibrium", fr(rat(6, 5)), mixed_value);
  b.add("theta-tau equilibria", "(B,A)", eq_list(g, a.cross));
  b.add("tau-tau equilibria", "(A,A)", eq_list(g, a.tau_self));
  for (const auto& eps : default_epsilon_grid()) {
    StableEnumeration en = enumerate_stable(pop, eps, {}, &a);
    b.add("stable classes at eps=" + fr(eps), "theta-theta+tau-tau {theta-theta=(A,B); tau-tau=(A,A)}",
          classes_text(g, en));
  }
  const Rational eps(1, 4);
  MixedStrategy m({rat(2, 5), rat(3, 5)});
  MatchingProfileC mixed = make_profile_c(eps, 0, StrategyPair{m, m}, std::nullopt, pure_pair(2, 0, 0));
  StabilityC s = is_nash_stable(pop, mixed, &a);
  b.add("mixed profile stable", "false", yes(s.stable));
  if (s.blocking) {
    const auto& w = *s.blocking;
    b.add("mixed profile blocking status", fr(rat(6, 5)), fr(w.row.status));
    b.add("blocking witness loser utility", fr(Rational(2)), fr(std::min(w.row_value, w.col_value)));
    b.add("blocking witness re-verified", "true", yes(verify_blocking(pop, mixed, w)));
  } else {
    b.add("mixed profile blocking witness", "present", "none");
  }
  MatchingProfileC cross =
      make_profile_c(eps, rat(1, 6), pure_pair(2, 0, 1), pure_pair(2, 1, 0), pure_pair(2, 0, 0));
  b.add("profile with a theta-tau class stable", "false", yes(is_nash_stable(pop, cross, &a).stable));
}

void ex2(Builder& b) {
  b.rep.title = "homophilic selfish type against a mutant exploiting cross matches";
  MaterialGame g = table3_game();
  Population pop{g, build_type(g, Family::homophilic_selfish, Rational(1), "theta"),
                 build_adversary_type(g, Recipe::ex2_mutant, {}, "tau")};
  PopulationAnalysis a = analyze(pop);
  const std::size_t A = 0, B = 1, C = 2;
  for (const auto& eps : default_epsilon_grid()) {
    StableEnumeration en = enumerate_stable(pop, eps, {}, &a);
    bool cross_present = false, tau_ahead = true, tau_five = true;
    for (const auto& c : en.classes)
      for (const auto& v : c.vertices) {
        if (v.mu_theta_tau == 0) continue;
        cross_present = true;
        tau_ahead = tau_ahead && v.fitness.tau > v.fitness.theta;
        tau_five = tau_five && v.fitness.tau == 5;
      }
    b.add("stable cross vertex exists at eps=" + fr(eps), "true", yes(cross_present));
    b.add("G_tau=5 > G_theta at every cross vertex, eps=" + fr(eps), "true", yes(tau_ahead && tau_five));
  }
  const Rational eps(1, 4);
  const Rational m = eps / (1 - eps);
  MatchingProfileC cross = make_profile_c(eps, m, pure_pair(3, A, C), pure_pair(3, A, B), std::nullopt);
  b.add("cross profile with (A,B) theta-tau stable (lambda=1)", "true", yes(is_nash_stable(pop, cross, &a).stable));
  MatchingProfileC full = make_profile_c(rat(1, 2), 1, std::nullopt, pure_pair(3, A, B), std::nullopt);
  Fitness f = average_fitness(pop, full);
  b.add("G_theta at mu_theta_tau=1, eps=1/2", fr(Rational(3)), fr(f.theta));
  b.add("G_tau at mu_theta_tau=1, eps=1/2", fr(Rational(5)), fr(f.tau));
  StabilityReport r = compare_over_stable(pop, Mode::complete, default_epsilon_grid());
  b.add("aggregate (lambda=1)", aggregate_name(Aggregate::tau_es), aggregate_name(r.aggregate));

  Population strong{g, build_type(g, Family::homophilic_selfish, Rational(9), "theta"), pop.tau};
  StabilityC s = is_nash_stable(strong, cross);
  b.add("cross profile stable (lambda=9)", "false", yes(s.stable));
  if (s.blocking) {
    b.add("blocking status (lambda=9)", fr(Rational(3)), fr(s.blocking->row.status));
    b.add("blocking witness loser utility (lambda=9)", fr(Rational(11)),
          fr(std::min(s.blocking->row_value, s.blocking->col_value)));
  }
}

void ex3(Builder& b) {
  b.rep.title = "selfish types when the efficient equilibrium is not loser-best";
  MaterialGame g = table4_game();
  PreferenceType mutant = build_adversary_type(g, Recipe::ex3_mutant, {}, "tau");
  const std::vector<std::pair<std::string, PreferenceType>> incumbents{
      {"1-homophilic selfish", build_type(g, Family::homophilic_selfish, Rational(1), "theta")},
      {"parochial selfish", build_type(g, Family::parochial_selfish, std::nullopt, "theta")}};
  const std::vector<Rational> grid{rat(1, 4), rat(1, 2), rat(3, 4)};
  for (const auto& [name, theta] : incumbents) {
    Population pop{g, theta, mutant};
    PopulationAnalysis a = analyze(pop);
    for (const auto& eps : grid) {
      StableEnumeration en = enumerate_stable(pop, eps, {}, &a);
      b.add(name + ": stable classes at eps=" + fr(eps),
            "theta-theta+tau-tau {theta-theta=(B,B); tau-tau=(A,C)}", classes_text(g, en));
      if (en.classes.size() == 1) {
        const Fitness& f = en.classes[0].vertices.front().fitness;
        b.add(name + ": G_theta at eps=" + fr(eps), fr(Rational(3)), fr(f.theta));
        b.add(name + ": G_tau at eps=" + fr(eps), fr(Rational(5)), fr(f.tau));
      }
    }
    StabilityReport r = compare_over_stable(pop, Mode::complete, grid);
    b.add(name + ": aggregate", aggregate_name(Aggregate::tau_es), aggregate_name(r.aggregate));
  }
}

void ex4(Builder& b) {
  b.rep.title = "homophilic efficient type under incomplete information";
  MaterialGame g = bos_game();
  Population pop{g, build_type(g, Family::homophilic_efficient, Rational(1), "theta"),
                 build_adversary_type(g, Recipe::ex4_coordination_seeker, {}, "tau")};
  const Rational eps(1, 4);
  MatchingProfileI mp = s1_profile(eps, rat(1, 100), pure_pair(2, 0, 1), pure_pair(2, 0, 1));
  b.add("q_utheta (delta=1/100)", fr(rat(1, 100)), fr(mp.info.q.q_theta));
  b.add("Bayes-Nash equilibrium profile (delta=1/100)", "true", yes(!check_bayes_nash(pop, mp)));
  StabilityI s = is_bayes_nash_stable(pop, mp);
  b.add("Bayes-Nash stable (delta=1/100)", "true", yes(s.stable));
  Fitness f = average_fitness_ii(pop, mp);
  b.add("G_theta (delta=1/100)", fr(rat(1193, 597)), fr(f.theta));
  b.add("G_tau (delta=1/100)", fr(rat(399, 199)), fr(f.tau));
  b.add("G_theta < 2 < G_tau", "true", yes(f.theta < 2 && 2 < f.tau));
  MatchingProfileI loose = s1_profile(eps, rat(1, 2), pure_pair(2, 0, 1), pure_pair(2, 0, 1));
  auto v = check_bayes_nash(pop, loose);
  b.add("Bayes-Nash equilibrium profile (delta=1/2)", "false", yes(!v));
  if (v) {
    b.add("violating class (delta=1/2)", "tau-u", class_name(v->cls));
    b.add("violating type (delta=1/2)", "tau", type_name(v->type));
  }
}

void b2(Builder& b) {
  b.rep.title = "strong incentives block where conditional incentives do not";
  MaterialGame g = table6_game();
  Population pop{g, build_type(g, Family::parochial_efficient, std::nullopt, "theta"),
                 build_adversary_type(g, Recipe::b2_mixed_motive, {}, "tau")};
  MatchingProfileI mp;
  mp.epsilon = rat(1, 2);
  mp.info = make_info(mp.epsilon, 0, 0, 1);
  for (auto& row : mp.mu) row.fill(0);
  mp.mu[2][2] = 1;
  mp.sigma[static_cast<int>(ClassI::u_u)] = pure_pair(2, 1, 1);
  b.add("Bayes-Nash equilibrium profile", "true", yes(!check_bayes_nash(pop, mp)));
  auto w = find_blocking_ii(pop, mp);
  b.add("first witness", "IIIstar u-u/u-u [theta:A] [theta:A]", w ? witness_text(g, *w) : "none");
  b.add("witness re-verified", "true", yes(w && verify_witness_ii(pop, mp, *w)));
  BlockingSearchOptions restricted;
  restricted.cases = {BlockCase::I, BlockCase::II, BlockCase::III};
  auto none = find_blocking_ii(pop, mp, restricted);
  b.add("witness among cases I-III", "none", none ? witness_text(g, *none) : "none");
}

MatchingProfileI b4_profile() {
  MatchingProfileI mp;
  mp.epsilon = rat(1, 2);
  mp.info = make_info(mp.epsilon, rat(5, 18), rat(4, 9), rat(5, 18));
  for (auto& row : mp.mu) row.fill(0);
  mp.mu[0][2] = 1;
  mp.mu[2][0] = 1;
  mp.mu[1][1] = 1;
  mp.sigma[static_cast<int>(ClassI::theta_u)] = pure_pair(3, 2, 0);
  mp.sigma[static_cast<int>(ClassI::tau_tau)] = pure_pair(3, 1, 0);
  return mp;
}

void b4(Builder& b) {
  b.rep.title = "parochial selfish type is not neutrally stable";
  MaterialGame g = table8_game();
  PreferenceType anti = build_adversary_type(g, Recipe::b4_antiparochial_efficient, {}, "tau");
  Population pop{g, build_type(g, Family::parochial_selfish, std::nullopt, "theta"), anti};
  MatchingProfileI mp = b4_profile();
  b.add("q_utheta", fr(rat(4, 5)), fr(mp.info.q.q_theta));
  b.add("Bayes-Nash equilibrium profile", "true", yes(!check_bayes_nash(pop, mp)));
  b.add("Bayes-Nash stable", "true", yes(is_bayes_nash_stable(pop, mp).stable));
  Fitness f = average_fitness_ii(pop, mp);
  b.add("G_theta", fr(rat(78, 9)), fr(f.theta));
  b.add("G_tau", fr(rat(79, 9)), fr(f.tau));
  Population variant{g, build_type(g, Family::parochial_efficient, std::nullopt, "theta"), anti};
  StabilityI sv = is_bayes_nash_stable(variant, mp);
  b.add("same profile with a parochial efficient theta stable", "false", yes(sv.stable));
  b.add("reason it fails", "internal", sv.internal ? "internal" : sv.blocking ? "blocking" : "none");
}

void pd_table2(Builder& b) {
  b.rep.title = "prisoner's dilemma";
  MaterialGame g = pd_game();
  PreferenceType selfish = build_type(g, Family::selfish, std::nullopt, "tau");
  b.add("selfish same-type inefficiency", "true", yes(same_type_inefficiency(selfish, g).inefficient));
  PreferenceType pe = build_type(g, Family::parochial_efficient, std::nullopt, "theta");
  b.add("parochial efficient same-type inefficiency", "false", yes(same_type_inefficiency(pe, g).inefficient));
  Population pop{g, pe, selfish};
  StabilityReport r = compare_over_stable(pop, Mode::complete, default_epsilon_grid());
  bool all = !r.records.empty();
  for (const auto& rec : r.records) all = all && rec.g_theta == 3 && rec.g_tau == 2;
  b.add("every record has G_theta=3, G_tau=2", "true", yes(all));
  b.add("parochial efficient against selfish", aggregate_name(Aggregate::theta_es), aggregate_name(r.aggregate));
}

void prop2_demo(Builder& b) {
  b.rep.title = "instability of types with same-type inefficiency or type-blind utility";
  {
    MaterialGame g = pd_game();
    Population pop{g, build_type(g, Family::selfish, std::nullopt, "theta"),
                   build_type(g, Family::parochial_efficient, std::nullopt, "tau")};
    StabilityReport r = compare_over_stable(pop, Mode::complete, default_epsilon_grid());
    b.add("selfish against parochial efficient (PD)", aggregate_name(Aggregate::tau_es), aggregate_name(r.aggregate));
  }
  {
    MaterialGame g = bos_game();
    Population pop{g, build_type(g, Family::selfish, std::nullopt, "theta"),
                   build_adversary_type(g, Recipe::prop2_advantage_efficient, {}, "tau")};
    StabilityReport r = compare_over_stable(pop, Mode::complete, default_epsilon_grid());
    b.add("selfish against advantage-seeking efficient type (BoS)", aggregate_name(Aggregate::tau_es),
          aggregate_name(r.aggregate));
  }
}

void prop5_demo(Builder& b) {
  b.rep.title = "anticoordinator against the homophilic efficient type";
  MaterialGame g = bos_game();
  PreferenceType theta = build_type(g, Family::homophilic_efficient, Rational(1), "theta");
  PreferenceType tau = build_adversary_type(g, Recipe::prop5_anticoordinator, {Rational(1), std::nullopt}, "tau");
  std::vector<Rational> inefficient_totals;
  const Rational best = efficient_pairs(g).best_total;
  for (const auto& e : enumerate_nash(self_game(theta)).equilibria) {
    Rational t = material_total(g, e.pair.first, e.pair.second);
    if (t < best) inefficient_totals.push_back(t);
  }
  InefficiencyConstants k = inefficiency_constants(g, inefficient_totals, Rational(1));
  b.add("delta_bar", fr(rat(4, 5)), fr(k.delta_bar));
  b.add("M", fr(Rational(49)), fr(*tau.big_m));
  b.add("u_cross (A,A) (A,B) (B,A) (B,B)", "3/1 -1/1 0/1 3/1",
        fr(tau.u_cross(0, 0)) + " " + fr(tau.u_cross(0, 1)) + " " + fr(tau.u_cross(1, 0)) + " " +
            fr(tau.u_cross(1, 1)));
  Population pop{g, theta, tau};
  MatchingProfileI mp = s1_profile(rat(1, 4), rat(1, 100), pure_pair(2, 1, 0), pure_pair(2, 0, 1));
  b.add("constructed profile Bayes-Nash stable", "true", yes(is_bayes_nash_stable(pop, mp).stable));
  Fitness f = average_fitness_ii(pop, mp);
  b.add("G_tau > G_theta on the constructed profile", "true", yes(f.tau > f.theta));
}

void b3_demo(Builder& b) {
  b.rep.title = "advantage-only efficient type against a type-blind selfish type";
  MaterialGame g = bos_game();
  Population pop{g, build_type(g, Family::selfish, std::nullopt, "theta"),
                 build_adversary_type(g, Recipe::prop6_advantage_only_efficient, {}, "tau")};
  StabilityReport r = compare_over_stable(pop, Mode::complete, default_epsilon_grid());
  b.add("complete information aggregate", aggregate_name(Aggregate::tau_es), aggregate_name(r.aggregate));
  MatchingProfileI mp = s1_profile(rat(1, 4), rat(1, 100), pure_pair(2, 0, 1), pure_pair(2, 0, 1));
  b.add("profile with u playing A against tau Bayes-Nash stable", "true", yes(is_bayes_nash_stable(pop, mp).stable));
  Fitness f = average_fitness_ii(pop, mp);
  b.add("G_theta", fr(rat(1193, 597)), fr(f.theta));
  b.add("G_tau", fr(rat(399, 199)), fr(f.tau));
}

void b1_construct(Builder& b) {
  b.rep.title = "constructive existence of a Nash stable profile";
  {
    MaterialGame g = table3_game();
    Population pop{g, build_type(g, Family::homophilic_selfish, Rational(1), "theta"),
                   build_adversary_type(g, Recipe::ex2_mutant, {}, "tau")};
    for (const auto& eps : {rat(1, 4), rat(3, 4)}) {
      Construction c = construct_stable(pop, eps);
      std::string at = " (3x3 game, eps=" + fr(eps) + ")";
      b.add("case" + at, "2", std::to_string(c.case_number));
      b.add("verified" + at, "true", yes(c.verified));
    }
    Construction c = construct_stable(pop, rat(1, 4));
    b.add("L_theta_theta (3x3 game)", fr(Rational(3)), fr(c.l_theta_theta));
    b.add("L_tau_theta (3x3 game)", fr(Rational(1)), c.l_tau_theta ? fr(*c.l_tau_theta) : "none");
    b.add("L_tau_tau (3x3 game)", fr(Rational(1)), fr(c.l_tau_tau));
  }
  {
    MaterialGame g = table1_game();
    Matrix th = Matrix::from_ints({{0, 2}, {3, 0}});
    Matrix ta = Matrix::from_ints({{4, 2}, {3, 0}});
    Population pop{g, custom_type(g, th, th, "theta"), custom_type(g, ta, ta, "tau")};
    Construction c = construct_stable(pop, rat(1, 4));
    b.add("case (2x2 game)", "1", std::to_string(c.case_number));
    b.add("L_theta_theta (2x2 game)", fr(Rational(2)), fr(c.l_theta_theta));
    b.add("L_tau_theta (2x2 game)", fr(Rational(2)), c.l_tau_theta ? fr(*c.l_tau_theta) : "none");
    b.add("L_tau_tau (2x2 game)", fr(Rational(4)), fr(c.l_tau_tau));
    b.add("verified (2x2 game)", "true", yes(c.verified));
  }
}

using CaseFn = void (*)(Builder&);

const std::vector<std::pair<std::string, CaseFn>>& case_table() {
  static const std::vector<std::pair<std::string, CaseFn>> table{
      {"ex1", ex1},         {"ex2", ex2},
      {"ex3", ex3},         {"ex4", ex4},
      {"b2", b2},           {"b4", b4},
      {"pd_table2", pd_table2}, {"prop2_demo", prop2_demo},
      {"prop5_demo", prop5_demo}, {"b3_demo", b3_demo},
      {"b1_construct", b1_construct}};
  return table;
}

}  // namespace

std::vector<std::string> replication_cases() {
  std::vector<std::string> out;
  for (const auto& [id, fn] : case_table()) out.push_back(id);
  return out;
}

Replication replicate(const std::string& case_id) {
  for (const auto& [id, fn] : case_table())
    if (id == case_id) {
      Builder b;
      b.rep.case_id = id;
      fn(b);
      return b.rep;
    }
  throw InputError("unknown replication case '" + case_id + "'");
}

}  // namespace prefmatch
