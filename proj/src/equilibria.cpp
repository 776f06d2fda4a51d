#include "prefmatch/equilibria.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

#include "prefmatch/lp.hpp"

namespace prefmatch {

TypedGame self_game(const PreferenceType& t) { return {t.u_same, t.u_same}; }

TypedGame cross_game(const PreferenceType& row, const PreferenceType& col) {
  return {row.u_cross, col.u_cross};
}

BestResponse best_responses(const Matrix& table, const MixedStrategy& opp) {
  if (opp.size() != table.cols()) throw InputError("strategy dimension mismatch");
  BestResponse br;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    Rational v = 0;
    for (std::size_t j = 0; j < opp.size(); ++j)
      if (opp[j] != 0) v += opp[j] * table(i, j);
    if (i == 0 || v > br.value) {
      br.value = v;
      br.pure.clear();
    }
    if (v == br.value) br.pure.push_back(i);
  }
  return br;
}

bool is_best_response(const Matrix& table, const MixedStrategy& own, const MixedStrategy& opp) {
  BestResponse br = best_responses(table, opp);
  for (std::size_t i : own.support())
    if (!std::binary_search(br.pure.begin(), br.pure.end(), i)) return false;
  return true;
}

bool is_equilibrium(const TypedGame& g, const StrategyPair& p) {
  return is_best_response(g.row_utility, p.first, p.second) &&
         is_best_response(g.col_utility, p.second, p.first);
}

namespace {

struct Vertex {
  std::vector<Rational> point;
  std::uint32_t labels = 0;
};

// Vertices of {v : a_k . v <= b_k}; constraint k carries label k.
std::vector<Vertex> vertices(const std::vector<std::vector<Rational>>& a,
                             const std::vector<Rational>& b, std::size_t dim) {
  const std::size_t k = a.size();
  std::map<std::vector<Rational>, std::uint32_t> found;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != dim) continue;
    std::vector<std::vector<Rational>> m;
    std::vector<Rational> rhs;
    for (std::size_t c = 0; c < k; ++c)
      if (mask & (1u << c)) {
        m.push_back(a[c]);
        rhs.push_back(b[c]);
      }
    auto sol = lp::solve_square(std::move(m), std::move(rhs));
    if (!sol) continue;
    std::uint32_t tight = 0;
    bool feasible = true;
    for (std::size_t c = 0; c < k && feasible; ++c) {
      Rational lhs = 0;
      for (std::size_t d = 0; d < dim; ++d)
        if (a[c][d] != 0) lhs += a[c][d] * (*sol)[d];
      if (lhs > b[c]) feasible = false;
      if (lhs == b[c]) tight |= 1u << c;
    }
    if (feasible) found.emplace(std::move(*sol), tight);
  }
  std::vector<Vertex> out;
  for (auto& [p, l] : found) out.push_back({p, l});
  return out;
}

MixedStrategy normalized(const std::vector<Rational>& v) {
  Rational s = 0;
  for (const auto& w : v) s += w;
  std::vector<Rational> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] / s;
  return MixedStrategy(std::move(w));
}

bool is_zero(const std::vector<Rational>& v) {
  for (const auto& w : v)
    if (w != 0) return false;
  return true;
}

}  // namespace

// Extreme equilibria are the completely labeled vertex pairs of the best-response
// polytopes P = {x >= 0 : B^T x <= 1} and Q = {y >= 0 : A y <= 1}, with payoffs
// shifted to be positive. Degenerate games need no special handling here.
EquilibriumSet enumerate_nash(const TypedGame& g, std::size_t support_cap) {
  const std::size_t m = g.row_utility.rows();
  const std::size_t n = g.row_utility.cols();
  if (g.col_utility.rows() != n || g.col_utility.cols() != m)
    throw InputError("typed game tables disagree on dimensions");
  if (m > support_cap || n > support_cap)
    throw InputError("strategy set exceeds the enumeration cap of " + std::to_string(support_cap));
  if (m + n > 30) throw InputError("strategy set too large");

  Rational amin = g.row_utility(0, 0), bmin = g.col_utility(0, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (g.row_utility(i, j) < amin) amin = g.row_utility(i, j);
      if (g.col_utility(j, i) < bmin) bmin = g.col_utility(j, i);
    }
  auto a_shift = [&](std::size_t i, std::size_t j) { return Rational(g.row_utility(i, j) - amin + 1); };
  auto b_shift = [&](std::size_t i, std::size_t j) { return Rational(g.col_utility(j, i) - bmin + 1); };

  // P: labels 0..m-1 are x_i >= 0, labels m..m+n-1 are column payoff bounds.
  std::vector<std::vector<Rational>> pa;
  std::vector<Rational> pb;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Rational> row(m, Rational(0));
    row[i] = -1;
    pa.push_back(row);
    pb.emplace_back(0);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> row(m);
    for (std::size_t i = 0; i < m; ++i) row[i] = b_shift(i, j);
    pa.push_back(row);
    pb.emplace_back(1);
  }
  // Q: labels 0..m-1 are row payoff bounds, labels m..m+n-1 are y_j >= 0.
  std::vector<std::vector<Rational>> qa;
  std::vector<Rational> qb;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Rational> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = a_shift(i, j);
    qa.push_back(row);
    qb.emplace_back(1);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> row(n, Rational(0));
    row[j] = -1;
    qa.push_back(row);
    qb.emplace_back(0);
  }

  const std::uint32_t full = (1u << (m + n)) - 1;
  std::vector<Vertex> vp = vertices(pa, pb, m);
  std::vector<Vertex> vq = vertices(qa, qb, n);

  EquilibriumSet out;
  for (const auto& x : vp) {
    if (is_zero(x.point)) continue;
    for (const auto& y : vq) {
      if (is_zero(y.point) || (x.labels | y.labels) != full) continue;
      Equilibrium e;
      e.pair = {normalized(x.point), normalized(y.point)};
      e.row_value = bilinear(g.row_utility, e.pair.first, e.pair.second);
      e.col_value = bilinear(g.col_utility, e.pair.second, e.pair.first);
      out.equilibria.push_back(std::move(e));
    }
  }
  std::sort(out.equilibria.begin(), out.equilibria.end(),
            [](const Equilibrium& l, const Equilibrium& r) { return l.pair < r.pair; });
  out.equilibria.erase(std::unique(out.equilibria.begin(), out.equilibria.end(),
                                   [](const Equilibrium& l, const Equilibrium& r) {
                                     return l.pair == r.pair;
                                   }),
                       out.equilibria.end());
  for (std::size_t i = 0; i < out.equilibria.size() && !out.degenerate; ++i)
    for (std::size_t j = i + 1; j < out.equilibria.size(); ++j) {
      const auto& p = out.equilibria[i].pair;
      const auto& q = out.equilibria[j].pair;
      if (p.first == q.first || p.second == q.second) {
        out.degenerate = true;
        break;
      }
    }
  return out;
}

LoserBest loser_best_set(const EquilibriumSet& eqs) {
  LoserBest lb;
  lb.degenerate = eqs.degenerate;
  bool first = true;
  for (const auto& e : eqs.equilibria) {
    Rational loser = e.row_value < e.col_value ? e.row_value : e.col_value;
    if (first || loser > lb.value) {
      lb.value = loser;
      lb.members.clear();
      first = false;
    }
    if (loser == lb.value) lb.members.push_back(e);
  }
  return lb;
}

LoserBest loser_best_set(const PreferenceType& t, std::size_t support_cap) {
  return loser_best_set(enumerate_nash(self_game(t), support_cap));
}

Frontier ne_frontier(const EquilibriumSet& cross, const Rational& l_theta_theta) {
  Frontier f;
  f.degenerate = cross.degenerate;
  f.shift_theta = 0;
  f.shift_tau = 0;
  for (const auto& e : cross.equilibria) {
    if (-e.row_value > f.shift_theta) f.shift_theta = -e.row_value;
    if (-e.col_value > f.shift_tau) f.shift_tau = -e.col_value;
  }
  // Dominance is invariant under the shifts, so compare the raw utilities.
  for (const auto& e : cross.equilibria) {
    bool dominated = false;
    for (const auto& o : cross.equilibria)
      if (o.row_value > e.row_value && o.col_value > e.col_value) {
        dominated = true;
        break;
      }
    if (!dominated) f.efficient.push_back(e);
  }
  for (const auto& e : f.efficient)
    if (e.row_value >= l_theta_theta) {
      f.efficient_star.push_back(e);
      if (!f.l_tau_theta || e.col_value > *f.l_tau_theta) f.l_tau_theta = e.col_value;
    }
  return f;
}

}  // namespace prefmatch
