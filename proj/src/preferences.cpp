#include "prefmatch/preferences.hpp"

#include <array>
#include <utility>

#include "prefmatch/equilibria.hpp"

namespace prefmatch {

namespace {

constexpr std::array<std::pair<Family, const char*>, 8> kFamilies{{
    {Family::selfish, "selfish"},
    {Family::efficient, "efficient"},
    {Family::homophilic_efficient, "homophilic_efficient"},
    {Family::parochial_efficient, "parochial_efficient"},
    {Family::homophilic_selfish, "homophilic_selfish"},
    {Family::parochial_selfish, "parochial_selfish"},
    {Family::adversary, "adversary"},
    {Family::custom, "custom"},
}};

constexpr std::array<std::pair<Recipe, const char*>, 8> kRecipes{{
    {Recipe::prop2_advantage_efficient, "prop2_advantage_efficient"},
    {Recipe::prop5_anticoordinator, "prop5_anticoordinator"},
    {Recipe::prop6_advantage_only_efficient, "prop6_advantage_only_efficient"},
    {Recipe::ex2_mutant, "ex2_mutant"},
    {Recipe::ex3_mutant, "ex3_mutant"},
    {Recipe::ex4_coordination_seeker, "ex4_coordination_seeker"},
    {Recipe::b2_mixed_motive, "b2_mixed_motive"},
    {Recipe::b4_antiparochial_efficient, "b4_antiparochial_efficient"},
}};

Rational total(const MaterialGame& g, std::size_t x, std::size_t y) {
  return g.payoff()(x, y) + g.payoff()(y, x);
}

template <class F>
Matrix tabulate(std::size_t n, F f) {
  Matrix m(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) m(x, y) = f(x, y);
  return m;
}

const Rational& require_lambda(const std::optional<Rational>& lambda) {
  if (!lambda) throw InputError("this preference family needs lambda");
  if (*lambda <= 0) throw InputError("lambda must be positive");
  return *lambda;
}

void check_table(const MaterialGame& game, const Matrix& m, const char* which) {
  if (m.rows() != game.size() || m.cols() != game.size())
    throw InputError(std::string(which) + " table must be " + std::to_string(game.size()) + "x" +
                     std::to_string(game.size()));
}

}  // namespace

std::string family_name(Family f) {
  for (const auto& [k, v] : kFamilies)
    if (k == f) return v;
  return "custom";
}

Family family_from_name(const std::string& name) {
  for (const auto& [k, v] : kFamilies)
    if (name == v) return k;
  throw InputError("unknown preference family '" + name + "'");
}

std::string recipe_name(Recipe r) {
  for (const auto& [k, v] : kRecipes)
    if (k == r) return v;
  return "";
}

Recipe recipe_from_name(const std::string& name) {
  for (const auto& [k, v] : kRecipes)
    if (name == v) return k;
  throw InputError("unknown adversary recipe '" + name + "'");
}

bool PreferenceType::operator==(const PreferenceType& other) const {
  return name == other.name && family == other.family && recipe == other.recipe &&
         lambda == other.lambda && big_m == other.big_m && u_same == other.u_same &&
         u_cross == other.u_cross;
}

PreferenceType build_type(const MaterialGame& game, Family family,
                          const std::optional<Rational>& lambda, const std::string& name) {
  const std::size_t n = game.size();
  const Matrix& pi = game.payoff();
  auto tot = [&](std::size_t x, std::size_t y) { return total(game, x, y); };
  auto zero = [](std::size_t, std::size_t) { return Rational(0); };

  PreferenceType t;
  t.name = name.empty() ? family_name(family) : name;
  t.family = family;
  switch (family) {
    case Family::selfish:
      t.u_same = pi;
      t.u_cross = pi;
      break;
    case Family::efficient:
      t.u_same = tabulate(n, tot);
      t.u_cross = t.u_same;
      break;
    case Family::homophilic_efficient: {
      Rational l = require_lambda(lambda);
      t.lambda = l;
      t.u_cross = tabulate(n, tot);
      t.u_same = tabulate(n, [&](std::size_t x, std::size_t y) { return Rational(tot(x, y) + l); });
      break;
    }
    case Family::parochial_efficient:
      t.u_same = tabulate(n, tot);
      t.u_cross = tabulate(n, zero);
      break;
    case Family::homophilic_selfish: {
      Rational l = require_lambda(lambda);
      t.lambda = l;
      t.u_cross = pi;
      t.u_same = tabulate(n, [&](std::size_t x, std::size_t y) { return Rational(pi(x, y) + l); });
      break;
    }
    case Family::parochial_selfish:
      t.u_same = pi;
      t.u_cross = tabulate(n, zero);
      break;
    case Family::adversary:
      throw InputError("adversary types are built from a recipe");
    case Family::custom:
      throw InputError("custom types need explicit tables");
  }
  return t;
}

PreferenceType custom_type(const MaterialGame& game, Matrix u_same, Matrix u_cross,
                           const std::string& name) {
  check_table(game, u_same, "same");
  check_table(game, u_cross, "cross");
  PreferenceType t;
  t.name = name.empty() ? "custom" : name;
  t.family = Family::custom;
  t.u_same = std::move(u_same);
  t.u_cross = std::move(u_cross);
  return t;
}

Rational default_anticoordinator_m(const MaterialGame& game, const Rational& lambda) {
  PreferenceType theta = build_type(game, Family::homophilic_efficient, lambda);
  const Rational s_bar = efficient_pairs(game).best_total;
  std::vector<Rational> inefficient;
  for (const auto& eq : enumerate_nash(self_game(theta)).equilibria) {
    Rational t = material_total(game, eq.pair.first, eq.pair.second);
    if (t < s_bar) inefficient.push_back(t);
  }
  InefficiencyConstants c = inefficiency_constants(game, inefficient, lambda);
  if (c.delta_bar >= 1) throw InputError("delta_bar must be below 1 to bound M");
  Rational bound = 6 * c.delta_bar * static_cast<long>(game.size()) / (1 - c.delta_bar);
  // floor(bound) + 1 is the smallest integer strictly above bound.
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  return Rational(fl + 1);
}

PreferenceType build_adversary_type(const MaterialGame& game, Recipe recipe,
                                    const AdversaryParams& params, const std::string& name) {
  const std::size_t n = game.size();
  const Matrix& pi = game.payoff();
  const Rational s_bar = efficient_pairs(game).best_total;
  auto tot = [&](std::size_t x, std::size_t y) { return total(game, x, y); };
  auto efficient = [&](std::size_t x, std::size_t y) { return tot(x, y) == s_bar; };
  auto has_label = [&](const std::string& l) {
    for (const auto& s : game.labels())
      if (s == l) return true;
    return false;
  };

  PreferenceType t;
  t.name = name.empty() ? recipe_name(recipe) : name;
  t.family = Family::adversary;
  t.recipe = recipe;

  switch (recipe) {
    case Recipe::prop2_advantage_efficient:
      t.u_same = tabulate(n, tot);
      t.u_cross = tabulate(n, [&](std::size_t x, std::size_t y) {
        return pi(x, y) >= pi(y, x) ? tot(x, y) : Rational(0);
      });
      break;
    case Recipe::prop6_advantage_only_efficient:
      t.u_same = tabulate(n, tot);
      t.u_cross = tabulate(n, [&](std::size_t x, std::size_t y) {
        return pi(x, y) >= pi(y, x) && efficient(x, y) ? tot(x, y) : Rational(0);
      });
      break;
    case Recipe::prop5_anticoordinator: {
      bool has_pair = false;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (pi(x, y) > pi(y, x) && is_strictly_efficient(game, x, y)) has_pair = true;
      if (!has_pair)
        throw InputError("prop5_anticoordinator needs a strictly efficient pair with unequal payoffs");
      Rational m;
      if (params.big_m) {
        m = *params.big_m;
      } else {
        m = default_anticoordinator_m(game, require_lambda(params.lambda));
      }
      if (params.lambda) t.lambda = *params.lambda;
      t.big_m = m;
      const Rational two_n = Rational(2 * static_cast<long>(n));
      t.u_same = tabulate(n, [&](std::size_t x, std::size_t y) {
        return efficient(x, y) ? Rational(0) : Rational(-m);
      });
      t.u_cross = tabulate(n, [&](std::size_t x, std::size_t y) {
        bool ahead = pi(x, y) > pi(y, x);
        if (efficient(x, y)) return ahead ? Rational(0) : Rational(-1);
        return ahead ? two_n : Rational(two_n - 1);
      });
      break;
    }
    case Recipe::ex2_mutant: {
      if (!has_label("A") || !has_label("B") || !has_label("C"))
        throw InputError("ex2_mutant needs strategies A, B and C");
      std::size_t a = game.index_of("A"), b = game.index_of("B"), c = game.index_of("C");
      t.u_same = tabulate(n, [&](std::size_t x, std::size_t y) {
        return Rational((x == a && y == c) || (x == c && y == a) ? 1 : 0);
      });
      t.u_cross = tabulate(n, [&](std::size_t x, std::size_t) { return Rational(x == b ? 1 : 0); });
      break;
    }
    case Recipe::ex3_mutant: {
      if (!has_label("A") || !has_label("C")) throw InputError("ex3_mutant needs strategies A and C");
      std::size_t a = game.index_of("A"), c = game.index_of("C");
      t.u_same = tabulate(n, [&](std::size_t x, std::size_t y) {
        return Rational((x == a && y == c) || (x == c && y == a) ? 1 : 0);
      });
      t.u_cross = Matrix(n, n, Rational(0));
      break;
    }
    case Recipe::ex4_coordination_seeker:
      t.u_same = tabulate(n, [&](std::size_t x, std::size_t y) { return Rational(x == y ? 0 : 1); });
      t.u_cross = tabulate(n, [&](std::size_t x, std::size_t y) { return Rational(x == y ? 3 : 1); });
      break;
    case Recipe::b2_mixed_motive:
      if (n != 2) throw InputError("b2_mixed_motive is defined for 2x2 games");
      t.u_same = Matrix::from_ints({{0, -6}, {6, 1}});
      t.u_cross = Matrix::from_ints({{2, 0}, {0, 1}});
      break;
    case Recipe::b4_antiparochial_efficient:
      t.u_same = tabulate(n, tot);
      t.u_cross = tabulate(n, [&](std::size_t x, std::size_t y) { return Rational(tot(x, y) + 1); });
      break;
  }
  return t;
}

Rational utility(const PreferenceType& t, const MixedStrategy& x, const MixedStrategy& y,
                 Opponent opp) {
  return bilinear(t.table(opp), x, y);
}

Rational utility_vs_u(const PreferenceType& t, Role role, const MixedStrategy& x,
                      const MixedStrategy& y, const BeliefQ& q) {
  if (q.q_theta < 0 || q.q_tau < 0 || q.q_theta + q.q_tau != 1)
    throw InputError("belief weights must be nonnegative and sum to 1");
  const Rational& w_same = role == Role::theta ? q.q_theta : q.q_tau;
  const Rational& w_cross = role == Role::theta ? q.q_tau : q.q_theta;
  return w_same * utility(t, x, y, Opponent::same) + w_cross * utility(t, x, y, Opponent::cross);
}

}  // namespace prefmatch
