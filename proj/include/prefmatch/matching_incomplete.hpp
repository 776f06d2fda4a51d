#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "prefmatch/matching_complete.hpp"

namespace prefmatch {

enum class Label { theta = 0, tau = 1, u = 2 };
std::string label_name(Label l);
inline Label label_of(TypeId t) { return t == TypeId::theta ? Label::theta : Label::tau; }

struct InfoStructure {
  std::array<Rational, 3> p;  // indexed by Label
  BeliefQ q;                  // zero when p_u = 0

  const Rational& mass(Label l) const { return p[static_cast<int>(l)]; }
};

InfoStructure make_info(const Rational& epsilon, const Rational& p_theta, const Rational& p_tau,
                        const Rational& p_u);

// Unordered label classes, lower label first.
enum class ClassI { theta_theta = 0, theta_tau, theta_u, tau_tau, tau_u, u_u };
inline constexpr std::array<ClassI, 6> kClassesI{ClassI::theta_theta, ClassI::theta_tau,
                                                 ClassI::theta_u,     ClassI::tau_tau,
                                                 ClassI::tau_u,       ClassI::u_u};
std::string class_name(ClassI c);
std::pair<Label, Label> class_labels(ClassI c);
ClassI class_of(Label a, Label b);

struct MatchingProfileI {
  Rational epsilon;
  InfoStructure info;
  std::array<std::array<Rational, 3>, 3> mu;        // mu[a][b]
  std::array<std::optional<StrategyPair>, 6> sigma;  // lower label plays first

  bool active(ClassI c) const;
  const Rational& m(Label a, Label b) const { return mu[static_cast<int>(a)][static_cast<int>(b)]; }
  bool operator==(const MatchingProfileI& other) const;
};

void validate_profile(const Population& pop, const MatchingProfileI& mp);

// The profile with p_u = 0 seen as a complete-information profile.
std::optional<MatchingProfileC> to_complete(const MatchingProfileI& mp);
MatchingProfileI from_complete(const MatchingProfileC& mp);

struct BayesNashViolation {
  ClassI cls;
  int side;
  TypeId type;  // the type (observable or hidden) failing to best-respond
  std::size_t better_response;
  Rational current;
  Rational improved;
};

std::optional<BayesNashViolation> check_bayes_nash(const Population& pop, const MatchingProfileI& mp);

// A seat in an active class. Status holds the current utility of each type that
// may occupy it; for observable labels only the entry of that type is used.
struct PositionI {
  Label label;
  ClassI origin;
  int side;
  std::array<Rational, 2> status;
};

std::vector<PositionI> positions_ii(const Population& pop, const MatchingProfileI& mp);

enum class BlockCase { I, II, III, IIIstar };
std::string case_name(BlockCase c);
BlockCase case_from_name(const std::string& name);

struct DeviationPlan {
  std::vector<TypeId> members;          // D, in theta-tau order
  std::vector<MixedStrategy> strategy;  // aligned with members

  const MixedStrategy* of(TypeId t) const;
};

// Observable participants and the two agents of case III* carry single-member
// plans holding their promised strategy.
struct BlockingWitnessI {
  BlockCase kind;
  PositionI first;
  PositionI second;
  DeviationPlan first_plan;
  DeviationPlan second_plan;
};

struct BlockingSearchOptions {
  std::vector<BlockCase> cases{BlockCase::I, BlockCase::II, BlockCase::III, BlockCase::IIIstar};
};

std::optional<BlockingWitnessI> find_blocking_ii(const Population& pop, const MatchingProfileI& mp,
                                                 const BlockingSearchOptions& opts = {},
                                                 const PopulationAnalysis* analysis = nullptr);

// Re-checks every condition of the witness's case directly. For case III* the
// robustness conditions are checked at each pure strategy of the other hidden
// type, plus `extra_opponent` mixtures when given.
bool verify_witness_ii(const Population& pop, const MatchingProfileI& mp, const BlockingWitnessI& w,
                       const std::vector<MixedStrategy>& extra_opponent = {});

struct StabilityI {
  bool stable = false;
  std::optional<BayesNashViolation> internal;
  std::optional<BlockingWitnessI> blocking;
  bool degenerate = false;
};

StabilityI is_bayes_nash_stable(const Population& pop, const MatchingProfileI& mp,
                                const BlockingSearchOptions& opts = {},
                                const PopulationAnalysis* analysis = nullptr);

Fitness average_fitness_ii(const Population& pop, const MatchingProfileI& mp);

}  // namespace prefmatch
