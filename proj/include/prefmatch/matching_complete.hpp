#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "prefmatch/equilibria.hpp"
#include "prefmatch/game.hpp"
#include "prefmatch/preferences.hpp"

namespace prefmatch {

enum class TypeId { theta = 0, tau = 1 };

inline TypeId other(TypeId t) { return t == TypeId::theta ? TypeId::tau : TypeId::theta; }
std::string type_name(TypeId t);

struct Population {
  MaterialGame game;
  PreferenceType theta;
  PreferenceType tau;
  std::size_t support_cap = kDefaultSupportCap;

  const PreferenceType& type(TypeId t) const { return t == TypeId::theta ? theta : tau; }
  // Utility table of `self` when facing `opp`.
  const Matrix& table(TypeId self, TypeId opp) const {
    return type(self).table(self == opp ? Opponent::same : Opponent::cross);
  }
};

void validate_population(const Population& pop);

// Canonical class order for complete information.
enum class ClassC { theta_theta = 0, theta_tau = 1, tau_tau = 2 };
std::string class_name(ClassC c);

struct MatchingProfileC {
  Rational epsilon;
  std::array<std::array<Rational, 2>, 2> mu;        // mu[a][b]
  std::array<std::optional<StrategyPair>, 3> sigma;  // theta-tau entry stored theta first

  bool active(ClassC c) const;
  bool operator==(const MatchingProfileC& other) const = default;
};

// Fills mu from mu_theta_tau using the mass balance (1-eps) mu_theta_tau = eps mu_tau_theta.
MatchingProfileC make_profile_c(const Rational& epsilon, const Rational& mu_theta_tau,
                                std::optional<StrategyPair> theta_theta,
                                std::optional<StrategyPair> theta_tau,
                                std::optional<StrategyPair> tau_tau);

void validate_profile(const Population& pop, const MatchingProfileC& mp);

struct PopulationAnalysis {
  EquilibriumSet theta_self;
  EquilibriumSet cross;  // theta row, tau column
  EquilibriumSet tau_self;
  LoserBest lb_theta;
  LoserBest lb_tau;

  bool degenerate() const { return theta_self.degenerate || cross.degenerate || tau_self.degenerate; }
};

PopulationAnalysis analyze(const Population& pop);

struct InternalViolation {
  ClassC cls;
  int side;  // 0: first coordinate, 1: second
  TypeId type;
  std::size_t better_response;
  Rational current;
  Rational improved;
};

struct AgentPosition {
  TypeId type;
  ClassC origin;
  int side;
  Rational status;
};

struct BlockingWitnessC {
  AgentPosition row;
  AgentPosition col;
  StrategyPair agreed;
  Rational row_value;
  Rational col_value;
  std::size_t count = 0;  // witnesses found in the full scan
};

std::vector<AgentPosition> agent_positions(const Population& pop, const MatchingProfileC& mp);

std::optional<InternalViolation> check_internal(const Population& pop, const MatchingProfileC& mp);

std::optional<BlockingWitnessC> find_blocking(const Population& pop, const MatchingProfileC& mp,
                                              const PopulationAnalysis* analysis = nullptr);

// Independent re-check of the blocking-pair conditions for a witness.
bool verify_blocking(const Population& pop, const MatchingProfileC& mp, const BlockingWitnessC& w);

struct StabilityC {
  bool stable = false;
  std::optional<InternalViolation> internal;
  std::optional<BlockingWitnessC> blocking;
  bool degenerate = false;
};

StabilityC is_nash_stable(const Population& pop, const MatchingProfileC& mp,
                          const PopulationAnalysis* analysis = nullptr);

struct Fitness {
  Rational theta;
  Rational tau;
};

Fitness average_fitness(const Population& pop, const MatchingProfileC& mp);

enum class Pattern { assortative, theta_side_mixed, tau_side_mixed, all_three, cross_only };
std::string pattern_name(Pattern p);

struct MuVertex {
  Rational mu_theta_tau;
  Fitness fitness;
};

struct StableClass {
  Pattern pattern;
  MatchingProfileC profile;  // representative mu inside the feasible set
  Rational mu_lo;            // feasible mu_theta_tau values
  Rational mu_hi;
  bool open_interval = false;
  std::vector<MuVertex> vertices;
};

struct EnumerateOptions {
  bool loser_best_only = true;  // restrict same-type entries to loser-best sets
};

struct StableEnumeration {
  std::vector<StableClass> classes;
  std::size_t candidates = 0;
  bool degenerate = false;
};

StableEnumeration enumerate_stable(const Population& pop, const Rational& epsilon,
                                   const EnumerateOptions& opts = {},
                                   const PopulationAnalysis* analysis = nullptr);

struct Construction {
  int case_number = 0;
  bool swapped = false;
  Rational l_theta_theta;
  Rational l_tau_tau;
  std::optional<Rational> l_tau_theta;
  MatchingProfileC profile;
  bool verified = false;
  bool degenerate = false;
};

Construction construct_stable(const Population& pop, const Rational& epsilon);

}  // namespace prefmatch
