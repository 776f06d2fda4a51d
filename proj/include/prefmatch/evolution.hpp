#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prefmatch/matching_complete.hpp"
#include "prefmatch/matching_incomplete.hpp"

namespace prefmatch {

enum class Mode { complete, incomplete };
enum class Comparison { gt, eq, lt };
enum class Aggregate { theta_es, tau_es, neutral_tie, mixed, inconclusive };

std::string mode_name(Mode m);
Mode mode_from_name(const std::string& name);
std::string comparison_name(Comparison c);
std::string aggregate_name(Aggregate a);

struct SameTypeInefficiency {
  bool inefficient = false;
  bool degenerate = false;
};

// Some loser-best equilibrium of the type's self-game is materially inefficient.
SameTypeInefficiency same_type_inefficiency(const PreferenceType& t, const MaterialGame& game,
                                            std::size_t support_cap = kDefaultSupportCap);

struct VerdictRecord {
  Mode mode;
  Rational epsilon;
  std::string profile_id;
  Rational g_theta;
  Rational g_tau;
  Comparison comparison;
};

struct StabilityReport {
  Mode mode = Mode::complete;
  std::vector<VerdictRecord> records;
  Aggregate aggregate = Aggregate::inconclusive;
  std::vector<std::string> warnings;
  std::size_t examined = 0;  // stable classes (complete) or candidates (incomplete)
};

Comparison compare(const Rational& g_theta, const Rational& g_tau);
Aggregate aggregate_of(const std::vector<VerdictRecord>& records);

struct Candidate {
  std::string id;
  MatchingProfileI profile;
};

std::vector<Rational> default_epsilon_grid();

StabilityReport compare_over_stable(const Population& pop, Mode mode, const std::vector<Rational>& epsilons,
                                    const std::vector<Candidate>& candidates = {},
                                    const BlockingSearchOptions& opts = {});

struct EvoVerdict {
  StabilityReport forward;   // theta as incumbent
  StabilityReport reversed;  // roles exchanged
  std::string direction;     // theta_ES_against_tau, tau_ES_against_theta, both or none
};

EvoVerdict evo_verdict(const Population& pop, Mode mode, const std::vector<Rational>& epsilons,
                       const std::vector<Candidate>& candidates = {},
                       const BlockingSearchOptions& opts = {});

// Candidate families of fixed incomplete-information shapes,
// one profile per assignment of pure strategy pairs. q_utheta = delta throughout.
//   S1: theta-theta and u-tau classes, p_tau = p_u = eps / (2 - delta).
//   S2: theta-u and tau-tau classes, p_theta = p_u = (1 - eps) / (1 + delta).
//   S3: a single u-u class with p_u = 1 (delta is ignored; q_utheta = 1 - eps).
std::vector<Candidate> family_s1(const MaterialGame& game, const Rational& eps, const Rational& delta);
std::vector<Candidate> family_s2(const MaterialGame& game, const Rational& eps, const Rational& delta);
std::vector<Candidate> family_s3(const MaterialGame& game, const Rational& eps);
std::vector<Candidate> default_candidates(const MaterialGame& game, const std::vector<Rational>& epsilons,
                                          const std::vector<Rational>& deltas);

// The profile of the S1 shape with the given pairs; u plays first in u-tau.
MatchingProfileI s1_profile(const Rational& eps, const Rational& delta, const StrategyPair& theta_theta,
                            const StrategyPair& u_tau);

MatchingProfileI swap_roles(const MatchingProfileI& mp);

struct ReplicationRow {
  std::string quantity;
  std::string expected;
  std::string computed;
  bool match = false;
};

struct Replication {
  std::string case_id;
  std::string title;
  std::vector<ReplicationRow> rows;

  bool ok() const;
};

std::vector<std::string> replication_cases();
Replication replicate(const std::string& case_id);

}  // namespace prefmatch
