#include "prefmatch/matching_incomplete.hpp"

#include <algorithm>
#include <functional>

#include "prefmatch/lp.hpp"

namespace prefmatch {

std::string label_name(Label l) {
  switch (l) {
    case Label::theta: return "theta";
    case Label::tau: return "tau";
    case Label::u: return "u";
  }
  return "";
}

std::string class_name(ClassI c) {
  auto [a, b] = class_labels(c);
  return label_name(a) + "-" + label_name(b);
}

std::pair<Label, Label> class_labels(ClassI c) {
  switch (c) {
    case ClassI::theta_theta: return {Label::theta, Label::theta};
    case ClassI::theta_tau: return {Label::theta, Label::tau};
    case ClassI::theta_u: return {Label::theta, Label::u};
    case ClassI::tau_tau: return {Label::tau, Label::tau};
    case ClassI::tau_u: return {Label::tau, Label::u};
    case ClassI::u_u: return {Label::u, Label::u};
  }
  return {Label::theta, Label::theta};
}

ClassI class_of(Label a, Label b) {
  if (static_cast<int>(b) < static_cast<int>(a)) std::swap(a, b);
  for (ClassI c : kClassesI)
    if (class_labels(c) == std::pair{a, b}) return c;
  return ClassI::u_u;
}

std::string case_name(BlockCase c) {
  switch (c) {
    case BlockCase::I: return "I";
    case BlockCase::II: return "II";
    case BlockCase::III: return "III";
    case BlockCase::IIIstar: return "IIIstar";
  }
  return "";
}

BlockCase case_from_name(const std::string& name) {
  for (BlockCase c : {BlockCase::I, BlockCase::II, BlockCase::III, BlockCase::IIIstar})
    if (case_name(c) == name) return c;
  throw InputError("unknown blocking case '" + name + "' (expected I, II, III or IIIstar)");
}

const MixedStrategy* DeviationPlan::of(TypeId t) const {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i] == t) return &strategy[i];
  return nullptr;
}

InfoStructure make_info(const Rational& epsilon, const Rational& p_theta, const Rational& p_tau,
                        const Rational& p_u) {
  if (epsilon <= 0 || epsilon >= 1) throw InputError("epsilon must lie strictly between 0 and 1");
  if (p_theta + p_tau + p_u != 1) throw InputError("p_theta + p_tau + p_u must equal 1");
  if (p_theta < 0 || p_theta > 1 - epsilon) throw InputError("p_theta must lie in [0, 1-eps]");
  if (p_tau < 0 || p_tau > epsilon) throw InputError("p_tau must lie in [0, eps]");
  if (p_u < 0) throw InputError("p_u must be nonnegative");
  InfoStructure info;
  info.p = {p_theta, p_tau, p_u};
  info.q = {0, 0};
  if (p_u > 0) {
    info.q.q_theta = (1 - epsilon - p_theta) / p_u;
    info.q.q_tau = (epsilon - p_tau) / p_u;
    if (info.q.q_theta <= 0 || info.q.q_tau <= 0)
      throw InputError("label u must pool both hidden types: q_utheta and q_utau must be positive");
  }
  return info;
}

bool MatchingProfileI::active(ClassI c) const {
  auto [a, b] = class_labels(c);
  return info.mass(a) * m(a, b) > 0;
}

bool MatchingProfileI::operator==(const MatchingProfileI& o) const {
  return epsilon == o.epsilon && info.p == o.info.p && info.q.q_theta == o.info.q.q_theta &&
         info.q.q_tau == o.info.q.q_tau && mu == o.mu && sigma == o.sigma;
}

void validate_profile(const Population& pop, const MatchingProfileI& mp) {
  validate_population(pop);
  InfoStructure info = make_info(mp.epsilon, mp.info.p[0], mp.info.p[1], mp.info.p[2]);
  if (info.q.q_theta != mp.info.q.q_theta || info.q.q_tau != mp.info.q.q_tau)
    throw InputError("belief q disagrees with the observability masses");
  const Label labels[] = {Label::theta, Label::tau, Label::u};
  for (Label a : labels) {
    Rational sum = 0;
    for (Label b : labels) {
      const Rational& v = mp.m(a, b);
      if (v < 0 || v > 1) throw InputError("matching proportions must lie in [0,1]");
      sum += v;
    }
    if (mp.info.mass(a) > 0 && sum != 1)
      throw InputError("row-sum violated: proportions of label " + label_name(a) + " must sum to 1");
    if (mp.info.mass(a) == 0 && sum != 0)
      throw InputError("label " + label_name(a) + " has no mass but carries matching proportions");
    for (Label b : labels)
      if (mp.info.mass(a) * mp.m(a, b) != mp.info.mass(b) * mp.m(b, a))
        throw InputError("mass balance violated: p_a mu(a,b) must equal p_b mu(b,a) for a=" +
                         label_name(a) + ", b=" + label_name(b));
  }
  for (ClassI c : kClassesI) {
    const auto& s = mp.sigma[static_cast<int>(c)];
    if (mp.active(c) && !s) throw InputError("missing strategy pair for active class " + class_name(c));
    if (!mp.active(c) && s) throw InputError("strategy pair given for empty class " + class_name(c));
    if (s && (s->first.size() != pop.game.size() || s->second.size() != pop.game.size()))
      throw InputError("strategy pair for " + class_name(c) + " has the wrong dimension");
  }
}

std::optional<MatchingProfileC> to_complete(const MatchingProfileI& mp) {
  if (mp.info.p[2] != 0) return std::nullopt;
  MatchingProfileC c;
  c.epsilon = mp.epsilon;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) c.mu[a][b] = mp.mu[a][b];
  c.sigma = {mp.sigma[static_cast<int>(ClassI::theta_theta)],
             mp.sigma[static_cast<int>(ClassI::theta_tau)],
             mp.sigma[static_cast<int>(ClassI::tau_tau)]};
  return c;
}

MatchingProfileI from_complete(const MatchingProfileC& c) {
  MatchingProfileI mp;
  mp.epsilon = c.epsilon;
  mp.info = make_info(c.epsilon, 1 - c.epsilon, c.epsilon, 0);
  for (auto& row : mp.mu) row.fill(0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) mp.mu[a][b] = c.mu[a][b];
  mp.sigma[static_cast<int>(ClassI::theta_theta)] = c.sigma[0];
  mp.sigma[static_cast<int>(ClassI::theta_tau)] = c.sigma[1];
  mp.sigma[static_cast<int>(ClassI::tau_tau)] = c.sigma[2];
  return mp;
}

namespace {

constexpr TypeId kTypes[] = {TypeId::theta, TypeId::tau};

int idx(TypeId t) { return static_cast<int>(t); }
int idx(Label l) { return static_cast<int>(l); }

// util[t][l]: utility table of type t facing label l, with label u averaged under q.
struct Utilities {
  std::array<std::array<Matrix, 3>, 2> m;
  BeliefQ q;

  Utilities(const Population& pop, const BeliefQ& belief) : q(belief) {
    const std::size_t n = pop.game.size();
    for (TypeId t : kTypes) {
      m[idx(t)][0] = pop.table(t, TypeId::theta);
      m[idx(t)][1] = pop.table(t, TypeId::tau);
      Matrix avg(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          avg(i, j) = q.q_theta * m[idx(t)][0](i, j) + q.q_tau * m[idx(t)][1](i, j);
      m[idx(t)][2] = std::move(avg);
    }
  }

  const Matrix& operator()(TypeId t, Label l) const { return m[idx(t)][idx(l)]; }
  const Matrix& operator()(TypeId t, TypeId o) const { return m[idx(t)][idx(o)]; }
  Rational weight(TypeId t) const { return t == TypeId::theta ? q.q_theta : q.q_tau; }
  // q conditioned on the participation set.
  Rational weight(TypeId t, const std::vector<TypeId>& d) const {
    Rational total = 0;
    for (TypeId s : d) total += weight(s);
    return weight(t) / total;
  }
};

Rational max_entry(const Matrix& m) {
  Rational best = m(0, 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) > best) best = m(i, j);
  return best;
}

}  // namespace

std::optional<BayesNashViolation> check_bayes_nash(const Population& pop, const MatchingProfileI& mp) {
  Utilities util(pop, mp.info.q);
  for (ClassI c : kClassesI) {
    if (!mp.active(c)) continue;
    const StrategyPair& s = *mp.sigma[static_cast<int>(c)];
    auto [l1, l2] = class_labels(c);
    for (int side = 0; side < 2; ++side) {
      Label own_label = side == 0 ? l1 : l2;
      Label opp_label = side == 0 ? l2 : l1;
      const MixedStrategy& own = side == 0 ? s.first : s.second;
      const MixedStrategy& opp = side == 0 ? s.second : s.first;
      for (TypeId t : kTypes) {
        if (own_label != Label::u && label_of(t) != own_label) continue;
        const Matrix& table = util(t, opp_label);
        BestResponse br = best_responses(table, opp);
        Rational current = bilinear(table, own, opp);
        if (current < br.value) return BayesNashViolation{c, side, t, br.pure.front(), current, br.value};
      }
    }
  }
  return std::nullopt;
}

std::vector<PositionI> positions_ii(const Population& pop, const MatchingProfileI& mp) {
  Utilities util(pop, mp.info.q);
  std::vector<PositionI> out;
  for (ClassI c : kClassesI) {
    if (!mp.active(c)) continue;
    const StrategyPair& s = *mp.sigma[static_cast<int>(c)];
    auto [l1, l2] = class_labels(c);
    for (int side = 0; side < 2; ++side) {
      if (side == 1 && l1 == l2 && s.first == s.second) break;
      Label own_label = side == 0 ? l1 : l2;
      Label opp_label = side == 0 ? l2 : l1;
      const MixedStrategy& own = side == 0 ? s.first : s.second;
      const MixedStrategy& opp = side == 0 ? s.second : s.first;
      PositionI p{own_label, c, side, {Rational(0), Rational(0)}};
      for (TypeId t : kTypes) p.status[idx(t)] = bilinear(util(t, opp_label), own, opp);
      if (own_label != Label::u) {
        TypeId t = own_label == Label::theta ? TypeId::theta : TypeId::tau;
        p.status[idx(other(t))] = p.status[idx(t)];
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

namespace {

using Vec = std::vector<Rational>;

struct Affine {
  Vec c;
  Rational k;
};

// Strategies of several agents packed into one LP; each block only carries
// variables on its allowed support.
struct Program {
  std::size_t n;
  std::vector<std::vector<std::size_t>> support;
  std::vector<std::size_t> offset;
  lp::StrictSystem sys;

  Program(std::size_t n_strategies, const std::vector<std::vector<std::size_t>>& supports)
      : n(n_strategies), support(supports) {
    for (const auto& s : support) {
      offset.push_back(sys.nvars);
      sys.nvars += s.size();
    }
    for (std::size_t b = 0; b < support.size(); ++b) {
      lp::Constraint sum{Vec(sys.nvars, Rational(0)), lp::Relation::eq, Rational(1)};
      for (std::size_t i = 0; i < support[b].size(); ++i) sum.coeffs[offset[b] + i] = 1;
      sys.closed.push_back(std::move(sum));
    }
  }

  Affine zero() const { return {Vec(sys.nvars, Rational(0)), Rational(0)}; }

  // f += w * sum_j m(k, j) * block_j
  void add_row(Affine& f, std::size_t block, const Matrix& m, std::size_t k, const Rational& w) const {
    for (std::size_t i = 0; i < support[block].size(); ++i)
      f.c[offset[block] + i] += w * m(k, support[block][i]);
  }

  // The pure strategies in s are maximizers among rows, with value above status.
  void argmax(const std::vector<Affine>& rows, const std::vector<std::size_t>& s, const Rational& status) {
    const std::size_t k0 = s.front();
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == k0) continue;
      lp::Constraint con{Vec(sys.nvars), lp::Relation::le, rows[k0].k - rows[k].k};
      for (std::size_t v = 0; v < sys.nvars; ++v) con.coeffs[v] = rows[k].c[v] - rows[k0].c[v];
      if (std::binary_search(s.begin(), s.end(), k)) con.rel = lp::Relation::eq;
      sys.closed.push_back(std::move(con));
    }
    sys.strict.emplace_back(rows[k0].c, status - rows[k0].k);
  }

  // No pure strategy beats the status.
  void capped(const std::vector<Affine>& rows, const Rational& status) {
    for (const auto& r : rows) sys.closed.push_back({r.c, lp::Relation::le, status - r.k});
  }

  std::optional<std::vector<MixedStrategy>> solve() const {
    auto sol = lp::find_point(sys);
    if (!sol) return std::nullopt;
    std::vector<MixedStrategy> out;
    for (std::size_t b = 0; b < support.size(); ++b) {
      Vec w(n, Rational(0));
      for (std::size_t i = 0; i < support[b].size(); ++i) w[support[b][i]] = (*sol)[offset[b] + i];
      out.emplace_back(std::move(w));
    }
    return out;
  }
};

std::vector<std::vector<std::size_t>> nonempty_subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

using Supports = std::vector<std::vector<std::size_t>>;

// All assignments of a support to each of k agents.
std::vector<Supports> support_profiles(const std::vector<std::vector<std::size_t>>& subsets, std::size_t k) {
  std::vector<Supports> out{Supports{}};
  for (std::size_t a = 0; a < k; ++a) {
    std::vector<Supports> next;
    for (const auto& prefix : out)
      for (const auto& s : subsets) {
        Supports p = prefix;
        p.push_back(s);
        next.push_back(std::move(p));
      }
    out = std::move(next);
  }
  return out;
}

const std::vector<std::vector<TypeId>> kParticipation{
    {TypeId::theta}, {TypeId::tau}, {TypeId::theta, TypeId::tau}};

class Search {
 public:
  Search(const Population& pop, const MatchingProfileI& mp, const PopulationAnalysis& analysis)
      : analysis_(analysis),
        util_(pop, mp.info.q),
        n_(pop.game.size()),
        subsets_(nonempty_subsets(n_)),
        positions_(positions_ii(pop, mp)) {
    full_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) full_[i] = i;
    for (const auto& p : positions_)
      if (p.label == Label::u) u_positions_.push_back(p);
  }

  std::optional<BlockingWitnessI> run(BlockCase c) {
    switch (c) {
      case BlockCase::I: return case_one();
      case BlockCase::II: return case_two();
      case BlockCase::III: return case_three();
      case BlockCase::IIIstar: return case_three_star();
    }
    return std::nullopt;
  }

 private:
  const PositionI* lowest(TypeId t) const {
    const PositionI* best = nullptr;
    for (const auto& p : positions_)
      if (p.label == label_of(t) && (!best || p.status[idx(t)] < best->status[idx(t)])) best = &p;
    return best;
  }

  std::optional<BlockingWitnessI> case_one() const {
    for (TypeId a : kTypes)
      for (TypeId b : kTypes) {
        if (a == TypeId::tau && b == TypeId::theta) continue;
        const PositionI* pa = lowest(a);
        const PositionI* pb = lowest(b);
        if (!pa || !pb) continue;
        const EquilibriumSet& eqs = a != b ? analysis_.cross
                                    : a == TypeId::theta ? analysis_.theta_self
                                                         : analysis_.tau_self;
        for (const auto& e : eqs.equilibria)
          if (e.row_value > pa->status[idx(a)] && e.col_value > pb->status[idx(b)])
            return BlockingWitnessI{BlockCase::I, *pa, *pb, {{a}, {e.pair.first}}, {{b}, {e.pair.second}}};
      }
    return std::nullopt;
  }

  // Side constraints for one deviator facing a mixture of opponent blocks:
  // rows[k] = sum over blocks of weight * table(k, block).
  std::vector<Affine> mixture_rows(const Program& prog, const std::vector<const Matrix*>& tables,
                                   const std::vector<Rational>& weights) const {
    std::vector<Affine> rows(n_, prog.zero());
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t b = 0; b < tables.size(); ++b) prog.add_row(rows[k], b, *tables[b], k, weights[b]);
    return rows;
  }

  // Hidden types of a u-seat respond to the blocks in `prog`. Types in d must
  // best-respond on their support and gain; the rest must not gain.
  void participation(Program& prog, const PositionI& seat, const std::vector<TypeId>& d,
                     const Supports& responder_support, const std::vector<TypeId>& opp_types,
                     const std::vector<Rational>& opp_weights) const {
    for (TypeId t : kTypes) {
      std::vector<const Matrix*> tables;
      for (TypeId o : opp_types) tables.push_back(&util_(t, o));
      auto rows = mixture_rows(prog, tables, opp_weights);
      const Rational& s = seat.status[idx(t)];
      auto it = std::find(d.begin(), d.end(), t);
      if (it != d.end())
        prog.argmax(rows, responder_support[it - d.begin()], s);
      else
        prog.capped(rows, s);
    }
  }

  std::vector<Rational> conditional(const std::vector<TypeId>& d) const {
    std::vector<Rational> w;
    for (TypeId t : d) w.push_back(util_.weight(t, d));
    return w;
  }

  std::optional<BlockingWitnessI> case_two() const {
    for (TypeId a : kTypes) {
      const PositionI* pa = lowest(a);
      if (!pa) continue;
      const Rational& sa = pa->status[idx(a)];
      for (const auto& seat : u_positions_)
        for (const auto& d : kParticipation) {
          bool reachable = true;
          for (TypeId t : d)
            if (max_entry(util_(t, a)) <= seat.status[idx(t)]) reachable = false;
          if (!reachable) continue;
          const auto wd = conditional(d);
          // y-side: the observable agent best-responds to the plan on sx and gains.
          auto y_side = [&](const std::vector<std::size_t>& sx, const Supports& sy) {
            Program prog(n_, sy);
            std::vector<const Matrix*> tables;
            for (TypeId t : d) tables.push_back(&util_(a, t));
            prog.argmax(mixture_rows(prog, tables, wd), sx, sa);
            return prog.solve();
          };
          // x-side: exactly the types in d gain by responding to x-hat.
          auto x_side = [&](const std::vector<std::size_t>& sx, const Supports& sy) {
            Program prog(n_, {sx});
            participation(prog, seat, d, sy, {a}, {Rational(1)});
            return prog.solve();
          };
          const Supports all(d.size(), full_);
          for (const auto& sx : subsets_) {
            if (!y_side(sx, all)) continue;
            for (const auto& sy : support_profiles(subsets_, d.size())) {
              auto x = x_side(sx, sy);
              if (!x) continue;
              auto y = y_side(sx, sy);
              if (!y) continue;
              return BlockingWitnessI{BlockCase::II, *pa, seat, {{a}, {x->front()}}, {d, *y}};
            }
          }
        }
    }
    return std::nullopt;
  }

  std::optional<BlockingWitnessI> case_three() const {
    for (std::size_t i = 0; i < u_positions_.size(); ++i)
      for (std::size_t j = i; j < u_positions_.size(); ++j) {
        const PositionI& p1 = u_positions_[i];
        const PositionI& p2 = u_positions_[j];
        for (const auto& d1 : kParticipation)
          for (const auto& d2 : kParticipation) {
            if (!reachable(p1, d1, d2) || !reachable(p2, d2, d1)) continue;
            const auto w1 = conditional(d1);
            const auto w2 = conditional(d2);
            // Program over the plan of side `resp_d` given side `own_d` supports.
            auto side = [&](const PositionI& seat, const std::vector<TypeId>& own_d,
                            const Supports& own_s, const std::vector<TypeId>& opp_d,
                            const std::vector<Rational>& opp_w, const Supports& opp_s) {
              Program prog(n_, opp_s);
              participation(prog, seat, own_d, own_s, opp_d, opp_w);
              return prog.solve();
            };
            const Supports all1(d1.size(), full_), all2(d2.size(), full_);
            const auto profiles1 = support_profiles(subsets_, d1.size());
            const auto profiles2 = support_profiles(subsets_, d2.size());
            std::vector<bool> ok2(profiles2.size());
            for (std::size_t b = 0; b < profiles2.size(); ++b)
              ok2[b] = side(p2, d2, profiles2[b], d1, w1, all1).has_value();
            for (const auto& s1 : profiles1) {
              if (!side(p1, d1, s1, d2, w2, all2)) continue;
              for (std::size_t b = 0; b < profiles2.size(); ++b) {
                if (!ok2[b]) continue;
                auto y = side(p1, d1, s1, d2, w2, profiles2[b]);
                if (!y) continue;
                auto x = side(p2, d2, profiles2[b], d1, w1, s1);
                if (!x) continue;
                return BlockingWitnessI{BlockCase::III, p1, p2, {d1, *x}, {d2, *y}};
              }
            }
          }
      }
    return std::nullopt;
  }

  bool reachable(const PositionI& seat, const std::vector<TypeId>& d,
                 const std::vector<TypeId>& opp) const {
    for (TypeId t : d) {
      bool any = false;
      for (TypeId o : opp)
        if (max_entry(util_(t, o)) > seat.status[idx(t)]) any = true;
      if (!any) return false;
    }
    return true;
  }

  std::optional<BlockingWitnessI> case_three_star() const {
    for (std::size_t i = 0; i < u_positions_.size(); ++i)
      for (std::size_t j = i; j < u_positions_.size(); ++j) {
        const PositionI& p1 = u_positions_[i];
        const PositionI& p2 = u_positions_[j];
        for (TypeId a : kTypes)
          for (TypeId b : kTypes) {
            if (max_entry(util_(a, b)) <= p1.status[idx(a)]) continue;
            if (max_entry(util_(b, a)) <= p2.status[idx(b)]) continue;
            // Robust incentives of `self` at `seat` when the partner of type
            // `partner` plays the block, whatever the other hidden type does.
            auto robust = [&](const PositionI& seat, TypeId self, TypeId partner,
                              const std::vector<std::size_t>& own_s, const std::vector<std::size_t>& opp_s) {
              Program prog(n_, {opp_s});
              const Rational& s = seat.status[idx(self)];
              prog.argmax(mixture_rows(prog, {&util_(self, partner)}, {Rational(1)}), own_s, s);
              const TypeId rest = other(partner);
              const Matrix& rest_table = util_(self, rest);
              for (std::size_t z = 0; z < n_; ++z) {
                auto rows = mixture_rows(prog, {&util_(self, partner)}, {util_.weight(partner)});
                for (std::size_t k = 0; k < n_; ++k) rows[k].k += util_.weight(rest) * rest_table(k, z);
                prog.argmax(rows, own_s, s);
              }
              return prog.solve();
            };
            std::vector<bool> ok_t(subsets_.size());
            for (std::size_t t = 0; t < subsets_.size(); ++t)
              ok_t[t] = robust(p2, b, a, subsets_[t], full_).has_value();
            for (const auto& sx : subsets_) {
              if (!robust(p1, a, b, sx, full_)) continue;
              for (std::size_t t = 0; t < subsets_.size(); ++t) {
                if (!ok_t[t]) continue;
                auto y = robust(p1, a, b, sx, subsets_[t]);
                if (!y) continue;
                auto x = robust(p2, b, a, subsets_[t], sx);
                if (!x) continue;
                return BlockingWitnessI{BlockCase::IIIstar, p1, p2, {{a}, {x->front()}},
                                        {{b}, {y->front()}}};
              }
            }
          }
      }
    return std::nullopt;
  }

  const PopulationAnalysis& analysis_;
  Utilities util_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> subsets_;
  std::vector<std::size_t> full_;
  std::vector<PositionI> positions_;
  std::vector<PositionI> u_positions_;
};

inline constexpr std::size_t kMaxAgentFormStrategies = 4;

}  // namespace

std::optional<BlockingWitnessI> find_blocking_ii(const Population& pop, const MatchingProfileI& mp,
                                                 const BlockingSearchOptions& opts,
                                                 const PopulationAnalysis* analysis) {
  validate_profile(pop, mp);
  if (mp.info.p[2] > 0 && pop.game.size() > kMaxAgentFormStrategies)
    throw InputError("incomplete-information blocking search supports at most " +
                     std::to_string(kMaxAgentFormStrategies) + " strategies");
  std::optional<PopulationAnalysis> local;
  if (!analysis) {
    local = analyze(pop);
    analysis = &*local;
  }
  Search search(pop, mp, *analysis);
  for (BlockCase c : opts.cases)
    if (auto w = search.run(c)) return w;
  return std::nullopt;
}

namespace {

struct Term {
  Rational weight;
  const Matrix* table;
  MixedStrategy opp;
};

Vec pure_values(const std::vector<Term>& terms, std::size_t n) {
  Vec v(n, Rational(0));
  for (const auto& term : terms)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        if (term.opp[j] != 0) v[k] += term.weight * term.opp[j] * (*term.table)(k, j);
  return v;
}

Rational best_value(const Vec& v) { return *std::max_element(v.begin(), v.end()); }

bool responds(const Vec& v, const MixedStrategy& x) {
  Rational top = best_value(v);
  for (std::size_t k : x.support())
    if (v[k] != top) return false;
  return true;
}

bool responds_and_gains(const Vec& v, const MixedStrategy& x, const Rational& status) {
  return responds(v, x) && best_value(v) > status;
}

bool same_position(const PositionI& a, const PositionI& b) {
  return a.label == b.label && a.origin == b.origin && a.side == b.side && a.status == b.status;
}

bool valid_plan(const DeviationPlan& p, std::size_t n) {
  if (p.members.empty() || p.members.size() != p.strategy.size()) return false;
  for (const auto& s : p.strategy)
    if (s.size() != n) return false;
  return p.members.size() == 1 || p.members[0] != p.members[1];
}

}  // namespace

bool verify_witness_ii(const Population& pop, const MatchingProfileI& mp, const BlockingWitnessI& w,
                       const std::vector<MixedStrategy>& extra_opponent) {
  const std::size_t n = pop.game.size();
  const auto seats = positions_ii(pop, mp);
  auto seated = [&](const PositionI& p) {
    return std::any_of(seats.begin(), seats.end(), [&](const PositionI& s) { return same_position(s, p); });
  };
  if (!seated(w.first) || !seated(w.second)) return false;
  if (!valid_plan(w.first_plan, n) || !valid_plan(w.second_plan, n)) return false;
  Utilities util(pop, mp.info.q);

  // Expected payoffs of type t against a plan, conditioned on its members.
  auto against_plan = [&](TypeId t, const DeviationPlan& plan) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < plan.members.size(); ++i)
      terms.push_back({util.weight(plan.members[i], plan.members), &util(t, plan.members[i]),
                       plan.strategy[i]});
    return pure_values(terms, n);
  };
  // Exactly the types in `plan` gain by responding to `opp_values`.
  auto exact_participation = [&](const PositionI& seat, const DeviationPlan& plan, auto&& values_of) {
    for (TypeId t : kTypes) {
      Vec v = values_of(t);
      const MixedStrategy* x = plan.of(t);
      bool gains = best_value(v) > seat.status[idx(t)];
      if (gains != (x != nullptr)) return false;
      if (x && !responds(v, *x)) return false;
    }
    return true;
  };

  switch (w.kind) {
    case BlockCase::I: {
      if (w.first.label == Label::u || w.second.label == Label::u) return false;
      if (w.first_plan.members.size() != 1 || w.second_plan.members.size() != 1) return false;
      TypeId a = w.first_plan.members[0], b = w.second_plan.members[0];
      if (label_of(a) != w.first.label || label_of(b) != w.second.label) return false;
      const MixedStrategy& x = w.first_plan.strategy[0];
      const MixedStrategy& y = w.second_plan.strategy[0];
      return responds_and_gains(pure_values({{1, &util(a, b), y}}, n), x, w.first.status[idx(a)]) &&
             responds_and_gains(pure_values({{1, &util(b, a), x}}, n), y, w.second.status[idx(b)]);
    }
    case BlockCase::II: {
      if (w.first.label == Label::u || w.second.label != Label::u) return false;
      if (w.first_plan.members.size() != 1) return false;
      TypeId a = w.first_plan.members[0];
      if (label_of(a) != w.first.label) return false;
      const MixedStrategy& x = w.first_plan.strategy[0];
      if (!responds_and_gains(against_plan(a, w.second_plan), x, w.first.status[idx(a)])) return false;
      return exact_participation(w.second, w.second_plan, [&](TypeId t) {
        return pure_values({{1, &util(t, a), x}}, n);
      });
    }
    case BlockCase::III: {
      if (w.first.label != Label::u || w.second.label != Label::u) return false;
      return exact_participation(w.first, w.first_plan,
                                 [&](TypeId t) { return against_plan(t, w.second_plan); }) &&
             exact_participation(w.second, w.second_plan,
                                 [&](TypeId t) { return against_plan(t, w.first_plan); });
    }
    case BlockCase::IIIstar: {
      if (w.first.label != Label::u || w.second.label != Label::u) return false;
      if (w.first_plan.members.size() != 1 || w.second_plan.members.size() != 1) return false;
      TypeId a = w.first_plan.members[0], b = w.second_plan.members[0];
      const MixedStrategy& x = w.first_plan.strategy[0];
      const MixedStrategy& y = w.second_plan.strategy[0];
      auto robust = [&](TypeId self, TypeId partner, const MixedStrategy& own, const MixedStrategy& opp,
                        const Rational& status) {
        if (!responds_and_gains(pure_values({{1, &util(self, partner), opp}}, n), own, status)) return false;
        std::vector<MixedStrategy> others;
        for (std::size_t z = 0; z < n; ++z) others.push_back(MixedStrategy::pure(n, z));
        others.insert(others.end(), extra_opponent.begin(), extra_opponent.end());
        for (const auto& z : others) {
          Vec v = pure_values({{util.weight(partner), &util(self, partner), opp},
                               {util.weight(other(partner)), &util(self, other(partner)), z}},
                              n);
          if (!responds_and_gains(v, own, status)) return false;
        }
        return true;
      };
      return robust(a, b, x, y, w.first.status[idx(a)]) && robust(b, a, y, x, w.second.status[idx(b)]);
    }
  }
  return false;
}

StabilityI is_bayes_nash_stable(const Population& pop, const MatchingProfileI& mp,
                                const BlockingSearchOptions& opts, const PopulationAnalysis* analysis) {
  validate_profile(pop, mp);
  std::optional<PopulationAnalysis> local;
  if (!analysis) {
    local = analyze(pop);
    analysis = &*local;
  }
  StabilityI out;
  out.degenerate = analysis->degenerate();
  out.internal = check_bayes_nash(pop, mp);
  if (out.internal) return out;
  out.blocking = find_blocking_ii(pop, mp, opts, analysis);
  out.stable = !out.blocking;
  return out;
}

Fitness average_fitness_ii(const Population& pop, const MatchingProfileI& mp) {
  validate_profile(pop, mp);
  const MaterialGame& g = pop.game;
  auto entry = [&](ClassI c) -> const StrategyPair& { return *mp.sigma[static_cast<int>(c)]; };
  // Material payoff of the label playing `side` in class c, weighted by its proportion.
  auto term = [&](Label self, Label opp) -> Rational {
    const Rational& share = mp.m(self, opp);
    if (share == 0) return 0;
    ClassI c = class_of(self, opp);
    const StrategyPair& s = entry(c);
    if (self == opp) return share * material_total(g, s.first, s.second) / 2;
    bool first = class_labels(c).first == self;
    return share * (first ? material_payoff(g, s.first, s.second) : material_payoff(g, s.second, s.first));
  };
  auto group = [&](Label self) {
    if (mp.info.mass(self) == 0) return Rational(0);
    return Rational(term(self, Label::theta) + term(self, Label::tau) + term(self, Label::u));
  };
  const Rational g_u = group(Label::u);
  const Rational share_theta = mp.info.p[0] / (1 - mp.epsilon);
  const Rational share_tau = mp.info.p[1] / mp.epsilon;
  Fitness f;
  f.theta = share_theta * group(Label::theta) + (1 - share_theta) * g_u;
  f.tau = share_tau * group(Label::tau) + (1 - share_tau) * g_u;
  return f;
}

}  // namespace prefmatch
