#include <filesystem>

#include "doctest.h"
#include "prefmatch/report.hpp"
#include "prefmatch/scenario.hpp"

using namespace prefmatch;

namespace {

std::string scenario_path(const std::string& name) { return std::string(PREFMATCH_SCENARIO_DIR) + "/" + name; }

const char* kMinimal = R"(version = 1
[game]
labels = A B
payoff:
  2 1
  3 1
[type s]
family = selfish
[state]
theta = s
tau = s
epsilon = 1/2
)";

int error_line(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return static_cast<int>(e.line());
  }
  return -1;
}

}  // namespace

TEST_CASE("shipped scenarios parse and round-trip exactly") {
  for (const auto& entry : std::filesystem::directory_iterator(PREFMATCH_SCENARIO_DIR)) {
    if (entry.path().extension() != ".scn") continue;
    INFO(entry.path().string());
    Scenario s = load_scenario(entry.path().string());
    std::string text = serialize_scenario(s);
    Scenario back = parse_scenario(text);
    CHECK(back == s);
    CHECK(serialize_scenario(back) == text);
  }
}

TEST_CASE("illustrative example scenario") {
  Scenario s = load_scenario(scenario_path("ex1.scn"));
  CHECK(s.game.labels() == std::vector<std::string>{"A", "B"});
  CHECK(s.type("tau").u_same(0, 0) == 4);
  const auto& mixed = s.profile("mixed");
  REQUIRE(mixed.complete);
  CHECK(mixed.complete->sigma[0]->first == MixedStrategy({rat(2, 5), rat(3, 5)}));
  CHECK(is_nash_stable(s.population(), *s.profile("stable").complete).stable);
}

TEST_CASE("b4 scenario yields the stated belief") {
  Scenario s = load_scenario(scenario_path("b4.scn"));
  const auto& p = s.profile("three_labels");
  REQUIRE(p.incomplete);
  CHECK(p.incomplete->info.q.q_theta == rat(4, 5));
  CHECK(p.incomplete->info.mass(Label::tau) == rat(4, 9));
}

TEST_CASE("invariant violations name the equation and position") {
  std::string text = std::string(kMinimal) + R"(
[profile broken]
mode = complete
mu theta theta = 1
mu theta tau = 1
mu tau tau = 1
sigma theta theta = B B
sigma theta tau = B B
sigma tau tau = B B
)";
  try {
    parse_scenario(text);
    FAIL("expected a parse error");
  } catch (const ScenarioError& e) {
    CHECK(std::string(e.what()).find("Eq. (1) row-sum") != std::string::npos);
    CHECK(e.line() == 14);
  }
}

TEST_CASE("syntax errors carry line and column") {
  CHECK(error_line("[game]\nlabels = A B\npayoff:\n  1 2\n  3\n") == 5);
  CHECK(error_line("[gmae]\n") == 1);
  CHECK(error_line(std::string(kMinimal) + "[type q]\nfamily = spiteful\n") == 14);
  CHECK(error_line(std::string(kMinimal) + "[state]\ntheta = s\ntau = nobody\n") == 13);
  CHECK(error_line("version = 2\n") == 1);
  try {
    parse_scenario("[game]\nlabels = A B\npayoff:\n  1 x\n  3 4\n");
    FAIL("expected an error");
  } catch (const ScenarioError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 5);
  }
}

TEST_CASE("nonpositive payoffs need the flag") {
  std::string text = "[game]\nlabels = A B\npayoff:\n  0 1\n  3 0\n";
  CHECK_THROWS_AS(parse_scenario(text), ScenarioError);
  ParseOptions o;
  o.allow_nonpositive = true;
  CHECK(parse_scenario(text, o).game.allow_nonpositive());
}

TEST_CASE("comments, options and mixed profiles survive a round-trip") {
  std::string text = std::string(kMinimal) + R"(
# incomplete information with a mixed pair
[profile pooled]
mode = incomplete
p theta = 0   # all hidden
p tau = 0
p u = 1
mu u u = 1
sigma u u = [1/3,2/3] B

[options]
epsilon_grid = 1/4 1/2
delta_grid = 1/100
support_cap = 3
case_order = IIIstar I
)";
  Scenario s = parse_scenario(text);
  CHECK(s.options.case_order == std::vector<BlockCase>{BlockCase::IIIstar, BlockCase::I});
  CHECK(s.options.support_cap == 3u);
  CHECK(s.profile("pooled").incomplete->info.q.q_theta == rat(1, 2));
  CHECK(parse_scenario(serialize_scenario(s)) == s);
}

TEST_CASE("report serialization round-trips") {
  Scenario s = load_scenario(scenario_path("b4.scn"));
  const MatchingProfileI& mp = *s.profile("three_labels").incomplete;
  Json j = profile_json(s.game, mp);
  CHECK(profile_i_from_json(s.game, j) == mp);
  CHECK(j["q"]["theta"] == "4/5");

  Scenario e = load_scenario(scenario_path("ex1.scn"));
  const MatchingProfileC& c = *e.profile("mixed").complete;
  CHECK(profile_c_from_json(e.game, profile_json(e.game, c)) == c);

  Report r;
  r.command = "fitness";
  r.verdicts["x"] = fitness_json({rat(78, 9), rat(79, 9)});
  r.warnings.push_back("w");
  std::string text = dump_report(r);
  CHECK(parse_report(text) == r);
  CHECK(dump_report(parse_report(text)) == text);
  CHECK(text.find("\"26/3\"") != std::string::npos);
  CHECK(rational_from_json(rational_json(rat(-7, 3))) == rat(-7, 3));
  CHECK_THROWS_AS(parse_report("{\"schema_version\": 99}"), InputError);
}
