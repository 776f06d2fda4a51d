#include "prefmatch/cli.hpp"

#include <chrono>
#include <optional>

#include "CLI11.hpp"
#include "prefmatch/report.hpp"
#include "prefmatch/scenario.hpp"

namespace prefmatch {

namespace {

struct Settings {
  std::string format = "json";
  bool timing = false;
  std::optional<std::size_t> support_cap;
  bool allow_nonpositive = false;
  std::vector<std::string> epsilon_grid;
  std::vector<std::string> delta_grid;
  std::vector<std::string> case_order;

  std::string scenario_path;
  std::string profile;
  std::size_t state = 1;
  std::string games = "all";
  std::string type;
  std::string mode = "complete";
  std::string case_id = "all";
};

// Grid values may be given as separate arguments or comma-separated.
std::vector<Rational> parse_grid(const std::vector<std::string>& raw) {
  std::vector<Rational> out;
  for (const auto& item : raw) {
    std::size_t start = 0;
    while (start <= item.size()) {
      auto comma = item.find(',', start);
      std::string part = item.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!part.empty()) out.push_back(parse_rational(part));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

class Runner {
 public:
  explicit Runner(const Settings& s) : s_(s) {}

  Report run(const std::string& command) {
    report_.command = command;
    if (command == "replicate") {
      replicate_cases();
      return report_;
    }
    load();
    if (command == "solve-ne") solve_ne();
    else if (command == "stable-check") stable_check();
    else if (command == "stable-enum") stable_enum();
    else if (command == "bn-check") bn_check();
    else if (command == "fitness") fitness();
    else if (command == "verdict") verdict();
    else if (command == "construct") construct();
    else throw InputError("unknown command '" + command + "'");
    return report_;
  }

  bool mismatch() const { return mismatch_; }

 private:
  void load() {
    ParseOptions po;
    po.allow_nonpositive = s_.allow_nonpositive;
    sc_ = load_scenario(s_.scenario_path, po);
    if (s_.support_cap) sc_.options.support_cap = *s_.support_cap;
    report_.inputs["scenario"] = s_.scenario_path;
    report_.inputs["game"] = game_json(sc_.game);
    if (sc_.options.support_cap) report_.inputs["support_cap"] = *sc_.options.support_cap;
  }

  const MaterialGame& game() const { return sc_.game; }

  std::size_t state_index() {
    if (s_.state < 1 || s_.state > sc_.states.size())
      throw InputError("state " + std::to_string(s_.state) + " is not declared in the scenario");
    return s_.state - 1;
  }

  Population population() {
    std::size_t i = state_index();
    report_.inputs["state"] = s_.state;
    report_.inputs["theta"] = type_json(sc_.type(sc_.states[i].theta));
    report_.inputs["tau"] = type_json(sc_.type(sc_.states[i].tau));
    return sc_.population(i);
  }

  // Command-line grid, then the scenario's grid, then the state's epsilon, then the default grid.
  std::vector<Rational> epsilons() {
    std::vector<Rational> grid = parse_grid(s_.epsilon_grid);
    if (grid.empty()) grid = sc_.options.epsilon_grid;
    if (grid.empty() && !sc_.states.empty() && sc_.states[state_index()].epsilon)
      grid.push_back(*sc_.states[state_index()].epsilon);
    if (grid.empty()) grid = default_epsilon_grid();
    for (const auto& e : grid)
      if (e <= 0 || e >= 1) throw InputError("epsilon " + fraction_string(e) + " is outside (0,1)");
    Json echo = Json::array();
    for (const auto& e : grid) echo.push_back(rational_json(e));
    report_.inputs["epsilon_grid"] = echo;
    return grid;
  }

  BlockingSearchOptions search_options() {
    BlockingSearchOptions o;
    if (!s_.case_order.empty()) {
      o.cases.clear();
      for (const auto& c : s_.case_order) o.cases.push_back(case_from_name(c));
    } else if (!sc_.options.case_order.empty()) {
      o.cases = sc_.options.case_order;
    }
    Json echo = Json::array();
    for (auto c : o.cases) echo.push_back(case_name(c));
    report_.inputs["case_order"] = echo;
    return o;
  }

  std::vector<const ProfileDef*> profiles() {
    std::vector<const ProfileDef*> out;
    if (!s_.profile.empty()) {
      out.push_back(&sc_.profile(s_.profile));
    } else {
      for (const auto& p : sc_.profiles) out.push_back(&p);
    }
    if (out.empty()) throw InputError("the scenario declares no profiles");
    Json names = Json::array();
    for (const auto* p : out) names.push_back(p->name);
    report_.inputs["profiles"] = names;
    return out;
  }

  void solve_ne() {
    if (!s_.type.empty()) {
      const PreferenceType& t = sc_.type(s_.type);
      report_.inputs["type"] = type_json(t);
      EquilibriumSet set = enumerate_nash(self_game(t), cap());
      note_degenerate(set, "self-game of " + t.name);
      report_.verdicts["self"] = equilibria_json(game(), set);
      return;
    }
    Population pop = population();
    const std::vector<std::string> all{"theta-theta", "theta-tau", "tau-tau"};
    std::vector<std::string> wanted = s_.games == "all" ? all : std::vector<std::string>{s_.games};
    for (const auto& w : wanted) {
      EquilibriumSet set;
      if (w == "theta-theta") set = enumerate_nash(self_game(pop.theta), pop.support_cap);
      else if (w == "theta-tau") set = enumerate_nash(cross_game(pop.theta, pop.tau), pop.support_cap);
      else if (w == "tau-tau") set = enumerate_nash(self_game(pop.tau), pop.support_cap);
      else throw InputError("unknown game '" + w + "' (expected theta-theta, theta-tau, tau-tau or all)");
      note_degenerate(set, w);
      report_.verdicts[w] = equilibria_json(game(), set);
    }
  }

  std::size_t cap() const { return sc_.options.support_cap.value_or(kDefaultSupportCap); }

  void note_degenerate(const EquilibriumSet& set, const std::string& what) {
    if (set.degenerate)
      report_.warnings.push_back(what + ": equilibrium components are not singletons; extreme points reported");
  }

  Population population_for(const ProfileDef& d) {
    std::size_t saved = s_.state;
    s_.state = d.state + 1;
    Population pop = population();
    s_.state = saved;
    return pop;
  }

  Json check_complete(const std::string& name, const Population& pop, const MatchingProfileC& mp) {
    StabilityC r = is_nash_stable(pop, mp);
    Json v{{"mode", "complete"}, {"stable", r.stable}, {"degenerate", r.degenerate}};
    if (r.internal) v["internal_violation"] = internal_json(game(), *r.internal);
    if (r.blocking) {
      Json w = witness_json(game(), *r.blocking);
      w["profile"] = name;
      w["verified"] = verify_blocking(pop, mp, *r.blocking);
      report_.witnesses.push_back(w);
    }
    if (r.degenerate) report_.warnings.push_back(name + ": degenerate equilibrium set, extreme points used");
    return v;
  }

  Json check_incomplete(const std::string& name, const Population& pop, const MatchingProfileI& mp,
                        const BlockingSearchOptions& opts) {
    StabilityI r = is_bayes_nash_stable(pop, mp, opts);
    Json v{{"mode", "incomplete"},
           {"bayes_nash", !r.internal},
           {"stable", r.stable},
           {"degenerate", r.degenerate},
           {"q_utheta", rational_json(mp.info.q.q_theta)}};
    if (r.internal) v["internal_violation"] = internal_json(game(), *r.internal);
    if (r.blocking) {
      Json w = witness_json(game(), *r.blocking);
      w["profile"] = name;
      w["verified"] = verify_witness_ii(pop, mp, *r.blocking);
      report_.witnesses.push_back(w);
    }
    if (r.degenerate) report_.warnings.push_back(name + ": degenerate equilibrium set, extreme points used");
    return v;
  }

  void stable_check() {
    auto list = profiles();
    std::optional<BlockingSearchOptions> opts;
    for (const auto* d : list) {
      Population pop = population_for(*d);
      if (d->complete) {
        report_.verdicts[d->name] = check_complete(d->name, pop, *d->complete);
      } else {
        if (!opts) opts = search_options();
        report_.verdicts[d->name] = check_incomplete(d->name, pop, *d->incomplete, *opts);
      }
    }
  }

  void bn_check() {
    auto list = profiles();
    BlockingSearchOptions opts = search_options();
    for (const auto* d : list) {
      Population pop = population_for(*d);
      MatchingProfileI mp = d->incomplete ? *d->incomplete : from_complete(*d->complete);
      report_.verdicts[d->name] = check_incomplete(d->name, pop, mp, opts);
    }
  }

  void fitness() {
    for (const auto* d : profiles()) {
      Population pop = population_for(*d);
      Fitness f = d->complete ? average_fitness(pop, *d->complete) : average_fitness_ii(pop, *d->incomplete);
      Json v = fitness_json(f);
      v["comparison"] = comparison_name(compare(f.theta, f.tau));
      report_.verdicts[d->name] = v;
    }
  }

  void stable_enum() {
    Population pop = population();
    PopulationAnalysis a = analyze(pop);
    Json by_eps = Json::array();
    for (const auto& e : epsilons()) {
      StableEnumeration en = enumerate_stable(pop, e, {}, &a);
      Json j = enumeration_json(game(), en);
      j["epsilon"] = rational_json(e);
      if (en.classes.empty()) report_.warnings.push_back("no stable class at eps=" + fraction_string(e));
      by_eps.push_back(j);
    }
    if (a.degenerate()) report_.warnings.push_back("degenerate equilibrium set; classes use extreme points");
    report_.verdicts["enumeration"] = by_eps;
  }

  void construct() {
    Population pop = population();
    Json by_eps = Json::array();
    for (const auto& e : epsilons()) {
      Construction c = construct_stable(pop, e);
      Json j = construction_json(game(), c);
      j["epsilon"] = rational_json(e);
      if (c.degenerate) report_.warnings.push_back("construction at eps=" + fraction_string(e) + " is degenerate");
      by_eps.push_back(j);
    }
    report_.verdicts["constructions"] = by_eps;
  }

  void verdict() {
    Population pop = population();
    Mode mode = mode_from_name(s_.mode);
    report_.inputs["mode"] = mode_name(mode);
    std::vector<Rational> grid = epsilons();
    std::vector<Candidate> candidates;
    BlockingSearchOptions opts;
    if (mode == Mode::incomplete) {
      opts = search_options();
      for (const auto& d : sc_.profiles)
        if (d.incomplete && d.state == state_index() && s_.profile.empty()) candidates.push_back({d.name, *d.incomplete});
      if (!s_.profile.empty()) {
        const ProfileDef& d = sc_.profile(s_.profile);
        if (!d.incomplete) throw InputError("profile '" + d.name + "' is not an incomplete-information profile");
        candidates.push_back({d.name, *d.incomplete});
      }
      if (candidates.empty()) {
        std::vector<Rational> deltas = parse_grid(s_.delta_grid);
        if (deltas.empty()) deltas = sc_.options.delta_grid;
        if (deltas.empty()) deltas = {rat(1, 100)};
        Json echo = Json::array();
        for (const auto& d : deltas) echo.push_back(rational_json(d));
        report_.inputs["delta_grid"] = echo;
        candidates = default_candidates(game(), grid, deltas);
        report_.inputs["candidates"] = "families S1, S2, S3";
      } else {
        report_.inputs["candidates"] = "scenario profiles";
      }
    }
    EvoVerdict v = evo_verdict(pop, mode, grid, candidates, opts);
    report_.verdicts["forward"] = stability_report_json(v.forward);
    report_.verdicts["reversed"] = stability_report_json(v.reversed);
    report_.verdicts["direction"] = v.direction;
    for (const auto& w : v.forward.warnings) report_.warnings.push_back(w);
    if (mode == Mode::incomplete)
      report_.warnings.push_back("incomplete-information verdicts hold over the supplied candidates only");
  }

  void replicate_cases() {
    std::vector<std::string> ids =
        s_.case_id == "all" ? replication_cases() : std::vector<std::string>{s_.case_id};
    report_.inputs["cases"] = ids;
    Json cases = Json::array();
    bool ok = true;
    for (const auto& id : ids) {
      Replication r = replicate(id);
      ok = ok && r.ok();
      cases.push_back(replication_json(r));
    }
    report_.verdicts["cases"] = cases;
    report_.verdicts["all_match"] = ok;
    mismatch_ = !ok;
  }

  Settings s_;
  Scenario sc_;
  Report report_;
  bool mismatch_ = false;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solver and verifier for preference evolution under stable matching", "prefmatch"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timing", s.timing, "Add wall-clock timing to the report");
  app.add_option("--support-cap", s.support_cap, "Largest support size in equilibrium enumeration")
      ->check(CLI::PositiveNumber);
  app.add_flag("--allow-nonpositive", s.allow_nonpositive, "Accept nonpositive material payoffs");
  app.add_option("--epsilon-grid", s.epsilon_grid, "Mutant shares, e.g. 1/4,1/2");
  app.add_option("--delta-grid", s.delta_grid, "Belief parameters for the default candidate families");
  app.add_option("--case-order", s.case_order, "Blocking cases to search, in order (I II III IIIstar)");

  auto scenario_cmd = [&](const std::string& name, const std::string& help) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("scenario", s.scenario_path, "Scenario file")->required();
    c->add_option("--state", s.state, "1-based state index")->check(CLI::PositiveNumber);
    return c;
  };
  CLI::App* solve = scenario_cmd("solve-ne", "Extreme Nash equilibria of the typed games");
  solve->add_option("--game", s.games, "theta-theta, theta-tau, tau-tau or all");
  solve->add_option("--type", s.type, "Solve the self-game of this type instead");
  for (auto [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"stable-check", "Check stability of the scenario's profiles"},
           {"bn-check", "Bayes-Nash stability check under incomplete information"},
           {"fitness", "Average material fitness of each profile"}}) {
    scenario_cmd(name, help)->add_option("--profile", s.profile, "Only this profile");
  }
  scenario_cmd("stable-enum", "Enumerate stable profile classes over the epsilon grid");
  scenario_cmd("construct", "Build a Nash stable profile constructively");
  CLI::App* verdict = scenario_cmd("verdict", "Fitness comparison over stable profiles, both directions");
  verdict->add_option("--mode", s.mode, "complete or incomplete")->check(CLI::IsMember({"complete", "incomplete"}));
  verdict->add_option("--profile", s.profile, "Use only this candidate profile");
  CLI::App* rep = app.add_subcommand("replicate", "Recompute a worked example and compare to pinned values");
  rep->add_option("case", s.case_id, "Case id or all");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    auto start = std::chrono::steady_clock::now();
    Runner runner(s);
    Report r = runner.run(command);
    if (s.timing) {
      auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      r.timing = Json{{"elapsed_ms", ms}};
    }
    out << (s.format == "text" ? render_text(r) : dump_report(r));
    return runner.mismatch() ? kExitMismatch : kExitOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace prefmatch
