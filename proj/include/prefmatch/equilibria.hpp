#pragma once

#include <optional>
#include <vector>

#include "prefmatch/game.hpp"
#include "prefmatch/preferences.hpp"

namespace prefmatch {

// row_utility(i, j): row plays i against column j.
// col_utility(j, i): column plays j against row i.
struct TypedGame {
  Matrix row_utility;
  Matrix col_utility;
};

TypedGame self_game(const PreferenceType& t);
TypedGame cross_game(const PreferenceType& row, const PreferenceType& col);

struct Equilibrium {
  StrategyPair pair;
  Rational row_value;
  Rational col_value;
};

struct EquilibriumSet {
  std::vector<Equilibrium> equilibria;  // extreme equilibria, sorted
  // Set when two extreme equilibria share a coordinate, i.e. some
  // equilibrium component is not a single point.
  bool degenerate = false;
};

struct BestResponse {
  Rational value;
  std::vector<std::size_t> pure;
};

// table(own, opp)
BestResponse best_responses(const Matrix& table, const MixedStrategy& opp);
bool is_best_response(const Matrix& table, const MixedStrategy& own, const MixedStrategy& opp);
bool is_equilibrium(const TypedGame& g, const StrategyPair& p);

inline constexpr std::size_t kDefaultSupportCap = 6;

EquilibriumSet enumerate_nash(const TypedGame& g, std::size_t support_cap = kDefaultSupportCap);

struct LoserBest {
  Rational value;
  std::vector<Equilibrium> members;
  bool degenerate = false;
};

LoserBest loser_best_set(const EquilibriumSet& self_equilibria);
LoserBest loser_best_set(const PreferenceType& t, std::size_t support_cap = kDefaultSupportCap);

struct Frontier {
  std::vector<Equilibrium> efficient;       // not strictly Pareto dominated
  std::vector<Equilibrium> efficient_star;  // members with row utility >= L_theta_theta
  std::optional<Rational> l_tau_theta;
  Rational shift_theta;  // affine shifts making both utilities >= 0 on the equilibria
  Rational shift_tau;
  bool degenerate = false;
};

Frontier ne_frontier(const EquilibriumSet& cross_equilibria, const Rational& l_theta_theta);

}  // namespace prefmatch
