#pragma once

#include <optional>
#include <string>

#include "prefmatch/game.hpp"

namespace prefmatch {

enum class Family {
  selfish,
  efficient,
  homophilic_efficient,
  parochial_efficient,
  homophilic_selfish,
  parochial_selfish,
  adversary,
  custom,
};

enum class Recipe {
  prop2_advantage_efficient,
  prop5_anticoordinator,
  prop6_advantage_only_efficient,
  ex2_mutant,
  ex3_mutant,
  ex4_coordination_seeker,
  b2_mixed_motive,
  b4_antiparochial_efficient,
};

enum class Opponent { same, cross };

// Which co-resident slot a type occupies; decides how q weights map to same/cross.
enum class Role { theta, tau };

std::string family_name(Family f);
Family family_from_name(const std::string& name);
std::string recipe_name(Recipe r);
Recipe recipe_from_name(const std::string& name);

struct PreferenceType {
  std::string name;
  Family family = Family::custom;
  std::optional<Recipe> recipe;
  std::optional<Rational> lambda;
  std::optional<Rational> big_m;
  Matrix u_same;
  Matrix u_cross;

  const Matrix& table(Opponent opp) const { return opp == Opponent::same ? u_same : u_cross; }
  std::size_t size() const { return u_same.rows(); }

  bool operator==(const PreferenceType& other) const;
};

struct BeliefQ {
  Rational q_theta;
  Rational q_tau;
};

PreferenceType build_type(const MaterialGame& game, Family family,
                          const std::optional<Rational>& lambda = std::nullopt,
                          const std::string& name = "");

PreferenceType custom_type(const MaterialGame& game, Matrix u_same, Matrix u_cross,
                           const std::string& name = "");

struct AdversaryParams {
  std::optional<Rational> lambda;
  std::optional<Rational> big_m;
};

PreferenceType build_adversary_type(const MaterialGame& game, Recipe recipe,
                                    const AdversaryParams& params = {},
                                    const std::string& name = "");

// Smallest integer M with M > 6 * delta_bar * |X| / (1 - delta_bar), where delta_bar
// comes from the lambda-homophilic efficient self-game.
Rational default_anticoordinator_m(const MaterialGame& game, const Rational& lambda);

Rational utility(const PreferenceType& t, const MixedStrategy& x, const MixedStrategy& y,
                 Opponent opp);

Rational utility_vs_u(const PreferenceType& t, Role role, const MixedStrategy& x,
                      const MixedStrategy& y, const BeliefQ& q);

}  // namespace prefmatch
