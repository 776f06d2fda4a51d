#include "prefmatch/lp.hpp"

#include <utility>

namespace prefmatch::lp {

namespace {

struct Tableau {
  // rows_[0] is the objective row (z - c.x = value), rows_[1..] the constraints;
  // the last column holds the right-hand side.
  std::vector<std::vector<Rational>> rows;
  std::vector<std::size_t> basis;  // basic column for each constraint row

  std::size_t cols() const { return rows.front().size() - 1; }

  void pivot(std::size_t r, std::size_t c) {
    auto& pr = rows[r];
    Rational inv = 1 / pr[c];
    for (auto& v : pr) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = 0; j < pr.size(); ++j)
        if (pr[j] != 0) rows[i][j] -= f * pr[j];
    }
    basis[r - 1] = c;
  }

  // Returns false when unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = cols();
      for (std::size_t j = 0; j < cols(); ++j)
        if (allowed[j] && rows[0][j] < 0) {
          enter = j;
          break;
        }
      if (enter == cols()) return true;
      std::size_t leave = 0;
      Rational best;
      for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][enter] <= 0) continue;
        Rational ratio = rows[i].back() / rows[i][enter];
        if (leave == 0 || ratio < best || (ratio == best && basis[i - 1] < basis[leave - 1])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

Result maximize(const std::vector<Rational>& c, const std::vector<Constraint>& constraints,
                std::size_t nvars) {
  const std::size_t m = constraints.size();
  std::size_t n_slack = 0, n_art = 0;
  for (const auto& con : constraints) {
    Relation rel = con.rel;
    if (con.rhs < 0 && rel != Relation::eq) rel = rel == Relation::le ? Relation::ge : Relation::le;
    if (rel != Relation::eq) ++n_slack;
    if (rel != Relation::le) ++n_art;
  }
  const std::size_t total = nvars + n_slack + n_art;
  Tableau t;
  t.rows.assign(m + 1, std::vector<Rational>(total + 1, Rational(0)));
  t.basis.assign(m, 0);
  std::vector<bool> artificial(total, false);

  std::size_t slack = nvars, art = nvars + n_slack;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& con = constraints[i];
    Rational sign = con.rhs < 0 ? -1 : 1;
    Relation rel = con.rel;
    if (sign < 0 && rel != Relation::eq) rel = rel == Relation::le ? Relation::ge : Relation::le;
    auto& row = t.rows[i + 1];
    for (std::size_t j = 0; j < nvars && j < con.coeffs.size(); ++j) row[j] = sign * con.coeffs[j];
    row.back() = sign * con.rhs;
    if (rel == Relation::le) {
      row[slack] = 1;
      t.basis[i] = slack++;
    } else {
      if (rel == Relation::ge) row[slack++] = -1;
      row[art] = 1;
      artificial[art] = true;
      t.basis[i] = art++;
    }
  }

  std::vector<bool> allowed(total, true);
  if (n_art > 0) {
    // Phase 1: maximize -sum(artificials).
    auto& z = t.rows[0];
    for (std::size_t j = 0; j < total; ++j) z[j] = artificial[j] ? 1 : 0;
    z.back() = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (artificial[t.basis[i]])
        for (std::size_t j = 0; j <= total; ++j) z[j] -= t.rows[i + 1][j];
    t.optimize(allowed);
    if (t.rows[0].back() != 0) return {};
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.basis.size();) {
      if (!artificial[t.basis[i]]) {
        ++i;
        continue;
      }
      std::size_t col = total;
      for (std::size_t j = 0; j < total; ++j)
        if (!artificial[j] && t.rows[i + 1][j] != 0) {
          col = j;
          break;
        }
      if (col == total) {
        t.rows.erase(t.rows.begin() + static_cast<long>(i) + 1);
        t.basis.erase(t.basis.begin() + static_cast<long>(i));
      } else {
        t.pivot(i + 1, col);
        ++i;
      }
    }
    for (std::size_t j = 0; j < total; ++j)
      if (artificial[j]) allowed[j] = false;
  }

  // Phase 2.
  auto& z = t.rows[0];
  for (std::size_t j = 0; j <= total; ++j) z[j] = 0;
  for (std::size_t j = 0; j < nvars && j < c.size(); ++j) z[j] = -c[j];
  for (std::size_t i = 0; i < t.basis.size(); ++i) {
    std::size_t b = t.basis[i];
    if (z[b] == 0) continue;
    Rational f = z[b];
    for (std::size_t j = 0; j <= total; ++j) z[j] -= f * t.rows[i + 1][j];
  }
  Result res;
  if (!t.optimize(allowed)) {
    res.status = Status::unbounded;
    return res;
  }
  res.status = Status::optimal;
  res.x.assign(nvars, Rational(0));
  for (std::size_t i = 0; i < t.basis.size(); ++i)
    if (t.basis[i] < nvars) res.x[t.basis[i]] = t.rows[i + 1].back();
  res.objective = t.rows[0].back();
  return res;
}

std::optional<std::vector<Rational>> find_point(const StrictSystem& sys) {
  if (sys.strict.empty()) {
    Result r = maximize({}, sys.closed, sys.nvars);
    if (r.status == Status::infeasible) return std::nullopt;
    return r.x;
  }
  // Maximize a common margin t, capped at 1; a positive optimum certifies the strict system.
  const std::size_t n = sys.nvars + 1;
  std::vector<Constraint> cons;
  cons.reserve(sys.closed.size() + sys.strict.size() + 1);
  for (const auto& c : sys.closed) {
    Constraint e{c.coeffs, c.rel, c.rhs};
    e.coeffs.resize(n, Rational(0));
    cons.push_back(std::move(e));
  }
  for (const auto& [coeffs, rhs] : sys.strict) {
    Constraint e{coeffs, Relation::ge, rhs};
    e.coeffs.resize(n, Rational(0));
    e.coeffs[sys.nvars] = -1;
    cons.push_back(std::move(e));
  }
  Constraint cap{std::vector<Rational>(n, Rational(0)), Relation::le, Rational(1)};
  cap.coeffs[sys.nvars] = 1;
  cons.push_back(std::move(cap));
  std::vector<Rational> obj(n, Rational(0));
  obj[sys.nvars] = 1;
  Result r = maximize(obj, cons, n);
  if (r.status != Status::optimal || r.objective <= 0) return std::nullopt;
  r.x.resize(sys.nvars);
  return r.x;
}

std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> m,
                                                  std::vector<Rational> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
  return rhs;
}

}  // namespace prefmatch::lp
