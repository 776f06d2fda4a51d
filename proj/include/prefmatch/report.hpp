#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "prefmatch/evolution.hpp"

namespace prefmatch {

using Json = nlohmann::json;

inline constexpr int kReportSchemaVersion = 1;

struct Report {
  int schema_version = kReportSchemaVersion;
  std::string command;
  Json inputs = Json::object();
  Json verdicts = Json::object();
  Json witnesses = Json::array();
  std::vector<std::string> warnings;
  std::optional<Json> timing;  // only when requested, so default output stays byte-identical

  bool operator==(const Report&) const = default;
};

Json report_to_json(const Report& r);
Report report_from_json(const Json& j);
std::string dump_report(const Report& r);
Report parse_report(const std::string& text);
std::string render_text(const Report& r);

// Rationals travel as "n/d" strings.
Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json strategy_json(const MaterialGame& g, const MixedStrategy& s);
MixedStrategy strategy_from_json(const MaterialGame& g, const Json& j);
Json pair_json(const MaterialGame& g, const StrategyPair& p);
StrategyPair pair_from_json(const MaterialGame& g, const Json& j);

Json game_json(const MaterialGame& g);
Json type_json(const PreferenceType& t);
Json equilibria_json(const MaterialGame& g, const EquilibriumSet& s);
Json fitness_json(const Fitness& f);

Json profile_json(const MaterialGame& g, const MatchingProfileC& mp);
MatchingProfileC profile_c_from_json(const MaterialGame& g, const Json& j);
Json profile_json(const MaterialGame& g, const MatchingProfileI& mp);
MatchingProfileI profile_i_from_json(const MaterialGame& g, const Json& j);

Json internal_json(const MaterialGame& g, const InternalViolation& v);
Json internal_json(const MaterialGame& g, const BayesNashViolation& v);
Json witness_json(const MaterialGame& g, const BlockingWitnessC& w);
Json witness_json(const MaterialGame& g, const BlockingWitnessI& w);

Json enumeration_json(const MaterialGame& g, const StableEnumeration& e);
Json construction_json(const MaterialGame& g, const Construction& c);
Json stability_report_json(const StabilityReport& r);
Json replication_json(const Replication& r);

}  // namespace prefmatch
