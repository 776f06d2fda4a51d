#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "prefmatch/evolution.hpp"

namespace prefmatch {

// Input error carrying the 1-based position of the offending token.
class ScenarioError : public InputError {
 public:
  ScenarioError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct State {
  std::string theta;  // type names
  std::string tau;
  std::optional<Rational> epsilon;
  std::optional<std::array<Rational, 3>> p;  // p_theta, p_tau, p_u

  bool operator==(const State&) const = default;
};

struct ProfileDef {
  std::string name;
  std::size_t state = 0;  // index into Scenario::states
  Mode mode = Mode::complete;
  std::optional<MatchingProfileC> complete;
  std::optional<MatchingProfileI> incomplete;

  bool operator==(const ProfileDef&) const = default;
};

struct ScenarioOptions {
  std::vector<Rational> epsilon_grid;
  std::vector<Rational> delta_grid;
  std::optional<std::size_t> support_cap;
  std::vector<BlockCase> case_order;

  bool operator==(const ScenarioOptions&) const = default;
};

struct Scenario {
  MaterialGame game;
  std::vector<PreferenceType> types;
  std::vector<State> states;
  std::vector<ProfileDef> profiles;
  ScenarioOptions options;

  const PreferenceType& type(const std::string& name) const;
  Population population(std::size_t state = 0) const;
  const ProfileDef& profile(const std::string& name) const;

  bool operator==(const Scenario&) const = default;
};

struct ParseOptions {
  bool allow_nonpositive = false;  // accept nonpositive payoffs regardless of the file
};

Scenario parse_scenario(const std::string& text, const ParseOptions& opts = {});
Scenario load_scenario(const std::string& path, const ParseOptions& opts = {});
std::string serialize_scenario(const Scenario& s);

}  // namespace prefmatch
