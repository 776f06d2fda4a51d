#include "prefmatch/matching_complete.hpp"

#include <algorithm>

namespace prefmatch {

std::string type_name(TypeId t) { return t == TypeId::theta ? "theta" : "tau"; }

std::string class_name(ClassC c) {
  switch (c) {
    case ClassC::theta_theta: return "theta-theta";
    case ClassC::theta_tau: return "theta-tau";
    case ClassC::tau_tau: return "tau-tau";
  }
  return "";
}

std::string pattern_name(Pattern p) {
  switch (p) {
    case Pattern::assortative: return "theta-theta+tau-tau";
    case Pattern::theta_side_mixed: return "theta-theta+theta-tau";
    case Pattern::tau_side_mixed: return "theta-tau+tau-tau";
    case Pattern::all_three: return "theta-theta+theta-tau+tau-tau";
    case Pattern::cross_only: return "theta-tau";
  }
  return "";
}

namespace {

constexpr std::array<ClassC, 3> kClasses{ClassC::theta_theta, ClassC::theta_tau, ClassC::tau_tau};

std::pair<TypeId, TypeId> members(ClassC c) {
  switch (c) {
    case ClassC::theta_theta: return {TypeId::theta, TypeId::theta};
    case ClassC::theta_tau: return {TypeId::theta, TypeId::tau};
    case ClassC::tau_tau: return {TypeId::tau, TypeId::tau};
  }
  return {TypeId::theta, TypeId::theta};
}

const Rational& class_mass(const MatchingProfileC& mp, ClassC c) {
  auto [a, b] = members(c);
  return mp.mu[static_cast<int>(a)][static_cast<int>(b)];
}

}  // namespace

void validate_population(const Population& pop) {
  const std::size_t n = pop.game.size();
  for (const PreferenceType* t : {&pop.theta, &pop.tau})
    if (t->u_same.rows() != n || t->u_same.cols() != n || t->u_cross.rows() != n ||
        t->u_cross.cols() != n)
      throw InputError("type '" + t->name + "' does not match the game's strategy set");
}

bool MatchingProfileC::active(ClassC c) const { return class_mass(*this, c) > 0; }

MatchingProfileC make_profile_c(const Rational& epsilon, const Rational& mu_theta_tau,
                                std::optional<StrategyPair> theta_theta,
                                std::optional<StrategyPair> theta_tau,
                                std::optional<StrategyPair> tau_tau) {
  if (epsilon <= 0 || epsilon >= 1) throw InputError("epsilon must lie strictly between 0 and 1");
  MatchingProfileC mp;
  mp.epsilon = epsilon;
  mp.mu[0][1] = mu_theta_tau;
  mp.mu[0][0] = 1 - mu_theta_tau;
  mp.mu[1][0] = (1 - epsilon) * mu_theta_tau / epsilon;
  mp.mu[1][1] = 1 - mp.mu[1][0];
  for (const auto& row : mp.mu)
    for (const auto& v : row)
      if (v < 0 || v > 1) throw InputError("matching proportions must lie in [0,1]");
  mp.sigma = {std::move(theta_theta), std::move(theta_tau), std::move(tau_tau)};
  return mp;
}

void validate_profile(const Population& pop, const MatchingProfileC& mp) {
  validate_population(pop);
  if (mp.epsilon <= 0 || mp.epsilon >= 1) throw InputError("epsilon must lie strictly between 0 and 1");
  for (const auto& row : mp.mu)
    for (const auto& v : row)
      if (v < 0 || v > 1) throw InputError("matching proportions must lie in [0,1]");
  if (mp.mu[0][0] + mp.mu[0][1] != 1)
    throw InputError("Eq. (1) row-sum violated: mu(theta,theta) + mu(theta,tau) must equal 1");
  if (mp.mu[1][0] + mp.mu[1][1] != 1)
    throw InputError("Eq. (1) row-sum violated: mu(tau,theta) + mu(tau,tau) must equal 1");
  if ((1 - mp.epsilon) * mp.mu[0][1] != mp.epsilon * mp.mu[1][0])
    throw InputError("mass balance violated: (1-eps) mu(theta,tau) must equal eps mu(tau,theta)");
  for (ClassC c : kClasses) {
    const auto& s = mp.sigma[static_cast<int>(c)];
    if (mp.active(c) && !s) throw InputError("missing strategy pair for active class " + class_name(c));
    if (!mp.active(c) && s) throw InputError("strategy pair given for empty class " + class_name(c));
    if (s && (s->first.size() != pop.game.size() || s->second.size() != pop.game.size()))
      throw InputError("strategy pair for " + class_name(c) + " has the wrong dimension");
  }
}

PopulationAnalysis analyze(const Population& pop) {
  validate_population(pop);
  PopulationAnalysis a;
  a.theta_self = enumerate_nash(self_game(pop.theta), pop.support_cap);
  a.cross = enumerate_nash(cross_game(pop.theta, pop.tau), pop.support_cap);
  a.tau_self = enumerate_nash(self_game(pop.tau), pop.support_cap);
  a.lb_theta = loser_best_set(a.theta_self);
  a.lb_tau = loser_best_set(a.tau_self);
  return a;
}

std::vector<AgentPosition> agent_positions(const Population& pop, const MatchingProfileC& mp) {
  std::vector<AgentPosition> out;
  for (ClassC c : kClasses) {
    if (!mp.active(c)) continue;
    const StrategyPair& s = *mp.sigma[static_cast<int>(c)];
    auto [a, b] = members(c);
    out.push_back({a, c, 0, bilinear(pop.table(a, b), s.first, s.second)});
    if (a == b && s.first == s.second) continue;  // both sides coincide
    out.push_back({b, c, 1, bilinear(pop.table(b, a), s.second, s.first)});
  }
  return out;
}

std::optional<InternalViolation> check_internal(const Population& pop, const MatchingProfileC& mp) {
  for (ClassC c : kClasses) {
    if (!mp.active(c)) continue;
    const StrategyPair& s = *mp.sigma[static_cast<int>(c)];
    auto [a, b] = members(c);
    for (int side = 0; side < 2; ++side) {
      TypeId self = side == 0 ? a : b;
      TypeId opp = side == 0 ? b : a;
      const MixedStrategy& own = side == 0 ? s.first : s.second;
      const MixedStrategy& vs = side == 0 ? s.second : s.first;
      const Matrix& t = pop.table(self, opp);
      BestResponse br = best_responses(t, vs);
      Rational current = bilinear(t, own, vs);
      if (current < br.value)
        return InternalViolation{c, side, self, br.pure.front(), current, br.value};
    }
  }
  return std::nullopt;
}

namespace {

const AgentPosition* lowest(const std::vector<AgentPosition>& pos, TypeId t) {
  const AgentPosition* best = nullptr;
  for (const auto& p : pos)
    if (p.type == t && (!best || p.status < best->status)) best = &p;
  return best;
}

}  // namespace

std::optional<BlockingWitnessC> find_blocking(const Population& pop, const MatchingProfileC& mp,
                                              const PopulationAnalysis* analysis) {
  std::optional<PopulationAnalysis> local;
  if (!analysis) {
    local = analyze(pop);
    analysis = &*local;
  }
  const auto positions = agent_positions(pop, mp);
  struct GameScan {
    TypeId row, col;
    const EquilibriumSet* eqs;
  };
  const GameScan scans[] = {{TypeId::theta, TypeId::theta, &analysis->theta_self},
                            {TypeId::theta, TypeId::tau, &analysis->cross},
                            {TypeId::tau, TypeId::tau, &analysis->tau_self}};
  std::optional<BlockingWitnessC> first;
  std::size_t count = 0;
  for (const auto& scan : scans) {
    // A blocking pair needs a willing agent of each type; the least satisfied suffices.
    const AgentPosition* r = lowest(positions, scan.row);
    const AgentPosition* c = lowest(positions, scan.col);
    if (!r || !c) continue;
    for (const auto& e : scan.eqs->equilibria) {
      if (e.row_value > r->status && e.col_value > c->status) {
        ++count;
        if (!first) first = BlockingWitnessC{*r, *c, e.pair, e.row_value, e.col_value, 0};
      }
    }
  }
  if (first) first->count = count;
  return first;
}

bool verify_blocking(const Population& pop, const MatchingProfileC& mp, const BlockingWitnessC& w) {
  auto holds_position = [&](const AgentPosition& p) {
    if (!mp.active(p.origin)) return false;
    const StrategyPair& s = *mp.sigma[static_cast<int>(p.origin)];
    auto [a, b] = members(p.origin);
    TypeId self = p.side == 0 ? a : b;
    TypeId opp = p.side == 0 ? b : a;
    if (self != p.type) return false;
    const MixedStrategy& own = p.side == 0 ? s.first : s.second;
    const MixedStrategy& vs = p.side == 0 ? s.second : s.first;
    return bilinear(pop.table(self, opp), own, vs) == p.status;
  };
  if (!holds_position(w.row) || !holds_position(w.col)) return false;
  const Matrix& rt = pop.table(w.row.type, w.col.type);
  const Matrix& ct = pop.table(w.col.type, w.row.type);
  if (!is_best_response(rt, w.agreed.first, w.agreed.second)) return false;
  if (!is_best_response(ct, w.agreed.second, w.agreed.first)) return false;
  return bilinear(rt, w.agreed.first, w.agreed.second) > w.row.status &&
         bilinear(ct, w.agreed.second, w.agreed.first) > w.col.status;
}

StabilityC is_nash_stable(const Population& pop, const MatchingProfileC& mp,
                          const PopulationAnalysis* analysis) {
  validate_profile(pop, mp);
  StabilityC out;
  std::optional<PopulationAnalysis> local;
  if (!analysis) {
    local = analyze(pop);
    analysis = &*local;
  }
  out.degenerate = analysis->degenerate();
  out.internal = check_internal(pop, mp);
  if (out.internal) return out;
  out.blocking = find_blocking(pop, mp, analysis);
  out.stable = !out.blocking;
  return out;
}

namespace {

Fitness fitness_at(const Population& pop, const MatchingProfileC& mp) {
  const MaterialGame& g = pop.game;
  Fitness f{0, 0};
  if (mp.mu[0][0] > 0) {
    const auto& s = *mp.sigma[0];
    f.theta += mp.mu[0][0] * material_total(g, s.first, s.second) / 2;
  }
  if (mp.mu[0][1] > 0 || mp.mu[1][0] > 0) {
    const auto& s = *mp.sigma[1];
    f.theta += mp.mu[0][1] * material_payoff(g, s.first, s.second);
    f.tau += mp.mu[1][0] * material_payoff(g, s.second, s.first);
  }
  if (mp.mu[1][1] > 0) {
    const auto& s = *mp.sigma[2];
    f.tau += mp.mu[1][1] * material_total(g, s.first, s.second) / 2;
  }
  return f;
}

}  // namespace

Fitness average_fitness(const Population& pop, const MatchingProfileC& mp) {
  validate_profile(pop, mp);
  return fitness_at(pop, mp);
}

namespace {

std::vector<StrategyPair> same_type_candidates(const EquilibriumSet& eqs, const LoserBest& lb,
                                               bool loser_best_only) {
  const auto& source = loser_best_only ? lb.members : eqs.equilibria;
  std::vector<StrategyPair> out;
  for (const auto& e : source) {
    bool seen = false;
    for (const auto& p : out)
      if (p == e.pair.swapped()) seen = true;
    if (!seen) out.push_back(e.pair);
  }
  return out;
}

}  // namespace

StableEnumeration enumerate_stable(const Population& pop, const Rational& epsilon,
                                   const EnumerateOptions& opts, const PopulationAnalysis* analysis) {
  if (epsilon <= 0 || epsilon >= 1) throw InputError("epsilon must lie strictly between 0 and 1");
  std::optional<PopulationAnalysis> local;
  if (!analysis) {
    local = analyze(pop);
    analysis = &*local;
  }
  StableEnumeration out;
  out.degenerate = analysis->degenerate();
  const auto tt = same_type_candidates(analysis->theta_self, analysis->lb_theta, opts.loser_best_only);
  const auto xx = same_type_candidates(analysis->tau_self, analysis->lb_tau, opts.loser_best_only);
  std::vector<StrategyPair> cross;
  for (const auto& e : analysis->cross.equilibria) cross.push_back(e.pair);

  const Rational ratio = epsilon / (1 - epsilon);
  const Rational m_max = ratio < 1 ? ratio : Rational(1);
  const Rational half = Rational(1, 2);

  struct PatternSpec {
    Pattern pattern;
    bool tt, tx, xx;
    Rational lo, hi;
    bool open;
  };
  std::vector<PatternSpec> specs;
  specs.push_back({Pattern::assortative, true, false, true, 0, 0, false});
  if (epsilon < half) specs.push_back({Pattern::theta_side_mixed, true, true, false, ratio, ratio, false});
  if (epsilon > half) specs.push_back({Pattern::tau_side_mixed, false, true, true, 1, 1, false});
  specs.push_back({Pattern::all_three, true, true, true, 0, m_max, true});
  if (epsilon == half) specs.push_back({Pattern::cross_only, false, true, false, 1, 1, false});

  const std::vector<StrategyPair> none{StrategyPair{}};
  for (const auto& spec : specs) {
    const auto& c0 = spec.tt ? tt : none;
    const auto& c1 = spec.tx ? cross : none;
    const auto& c2 = spec.xx ? xx : none;
    const Rational rep = spec.open ? Rational((spec.lo + spec.hi) / 2) : spec.lo;
    for (const auto& a : c0)
      for (const auto& b : c1)
        for (const auto& c : c2) {
          MatchingProfileC mp = make_profile_c(
              epsilon, rep, spec.tt ? std::optional<StrategyPair>(a) : std::nullopt,
              spec.tx ? std::optional<StrategyPair>(b) : std::nullopt,
              spec.xx ? std::optional<StrategyPair>(c) : std::nullopt);
          ++out.candidates;
          if (!is_nash_stable(pop, mp, analysis).stable) continue;
          StableClass sc;
          sc.pattern = spec.pattern;
          sc.profile = mp;
          sc.mu_lo = spec.lo;
          sc.mu_hi = spec.hi;
          sc.open_interval = spec.open;
          // Fitness is affine in mu, so the interval is decided by its endpoints.
          std::vector<Rational> points{spec.lo};
          if (spec.hi != spec.lo) points.push_back(spec.hi);
          for (const auto& m : points) {
            MatchingProfileC at = make_profile_c(epsilon, m, mp.sigma[0], mp.sigma[1], mp.sigma[2]);
            sc.vertices.push_back({m, fitness_at(pop, at)});
          }
          out.classes.push_back(std::move(sc));
        }
  }
  return out;
}

namespace {

MatchingProfileC swap_roles(const MatchingProfileC& mp) {
  MatchingProfileC out;
  out.epsilon = 1 - mp.epsilon;
  out.mu[0][0] = mp.mu[1][1];
  out.mu[0][1] = mp.mu[1][0];
  out.mu[1][0] = mp.mu[0][1];
  out.mu[1][1] = mp.mu[0][0];
  out.sigma[0] = mp.sigma[2];
  out.sigma[2] = mp.sigma[0];
  if (mp.sigma[1]) out.sigma[1] = mp.sigma[1]->swapped();
  return out;
}

}  // namespace

Construction construct_stable(const Population& pop, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon >= 1) throw InputError("epsilon must lie strictly between 0 and 1");
  if (epsilon > Rational(1, 2)) {
    Population swapped{pop.game, pop.tau, pop.theta, pop.support_cap};
    Construction c = construct_stable(swapped, 1 - epsilon);
    c.swapped = true;
    c.profile = swap_roles(c.profile);
    c.verified = is_nash_stable(pop, c.profile).stable;
    return c;
  }
  PopulationAnalysis a = analyze(pop);
  Construction c;
  c.degenerate = a.degenerate();
  if (a.lb_theta.members.empty() || a.lb_tau.members.empty())
    throw InputError("a self-game has no equilibrium within the enumeration");
  c.l_theta_theta = a.lb_theta.value;
  c.l_tau_tau = a.lb_tau.value;
  Frontier f = ne_frontier(a.cross, c.l_theta_theta);
  c.l_tau_theta = f.l_tau_theta;
  const StrategyPair& tt = a.lb_theta.members.front().pair;
  const StrategyPair& xx = a.lb_tau.members.front().pair;
  if (!f.l_tau_theta || *f.l_tau_theta < c.l_tau_tau) {
    c.case_number = 1;
    c.profile = make_profile_c(epsilon, 0, tt, std::nullopt, xx);
  } else {
    c.case_number = 2;
    const Rational m = epsilon / (1 - epsilon);  // all tau agents meet theta agents
    std::optional<StrategyPair> cross_pair;
    for (const auto& e : f.efficient_star)
      if (e.col_value == *f.l_tau_theta) {
        cross_pair = e.pair;
        break;
      }
    c.profile = make_profile_c(epsilon, m, m < 1 ? std::optional<StrategyPair>(tt) : std::nullopt,
                               cross_pair, std::nullopt);
  }
  c.verified = is_nash_stable(pop, c.profile, &a).stable;
  return c;
}

}  // namespace prefmatch
