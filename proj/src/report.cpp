#include "prefmatch/report.hpp"

#include <sstream>

namespace prefmatch {

Json rational_json(const Rational& r) { return fraction_string(r); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw InputError("expected a rational string, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

Json strategy_json(const MaterialGame& g, const MixedStrategy& s) {
  if (auto p = s.pure_index()) return g.labels()[*p];
  Json out = Json::array();
  for (const auto& w : s.weights()) out.push_back(rational_json(w));
  return out;
}

MixedStrategy strategy_from_json(const MaterialGame& g, const Json& j) {
  if (j.is_string()) return MixedStrategy::pure(g.size(), g.index_of(j.get<std::string>()));
  if (!j.is_array()) throw InputError("expected a strategy label or weight list");
  std::vector<Rational> w;
  for (const auto& x : j) w.push_back(rational_from_json(x));
  if (w.size() != g.size()) throw InputError("strategy weight count does not match the game");
  return MixedStrategy(std::move(w));
}

Json pair_json(const MaterialGame& g, const StrategyPair& p) {
  return Json::array({strategy_json(g, p.first), strategy_json(g, p.second)});
}

StrategyPair pair_from_json(const MaterialGame& g, const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InputError("expected a strategy pair");
  return {strategy_from_json(g, j[0]), strategy_from_json(g, j[1])};
}

namespace {

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

template <std::size_t N>
Json mu_json(const std::array<std::array<Rational, N>, N>& mu) {
  Json out = Json::array();
  for (const auto& row : mu) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(rational_json(x));
    out.push_back(r);
  }
  return out;
}

template <std::size_t N>
std::array<std::array<Rational, N>, N> mu_from_json(const Json& j) {
  if (!j.is_array() || j.size() != N) throw InputError("mu has the wrong shape");
  std::array<std::array<Rational, N>, N> mu{};
  for (std::size_t a = 0; a < N; ++a) {
    if (!j[a].is_array() || j[a].size() != N) throw InputError("mu has the wrong shape");
    for (std::size_t b = 0; b < N; ++b) mu[a][b] = rational_from_json(j[a][b]);
  }
  return mu;
}

Json position_json(const PositionI& p) {
  return {{"label", label_name(p.label)},
          {"class", class_name(p.origin)},
          {"side", p.side},
          {"status", {{"theta", rational_json(p.status[0])}, {"tau", rational_json(p.status[1])}}}};
}

Json plan_json(const MaterialGame& g, const DeviationPlan& p) {
  Json out = Json::object();
  for (std::size_t i = 0; i < p.members.size(); ++i) out[type_name(p.members[i])] = strategy_json(g, p.strategy[i]);
  return out;
}

}  // namespace

Json game_json(const MaterialGame& g) {
  return {{"labels", g.labels()}, {"payoff", matrix_json(g.payoff())}, {"allow_nonpositive", g.allow_nonpositive()}};
}

Json type_json(const PreferenceType& t) {
  Json out{{"name", t.name},
           {"family", family_name(t.family)},
           {"u_same", matrix_json(t.u_same)},
           {"u_cross", matrix_json(t.u_cross)}};
  if (t.recipe) out["recipe"] = recipe_name(*t.recipe);
  if (t.lambda) out["lambda"] = rational_json(*t.lambda);
  if (t.big_m) out["M"] = rational_json(*t.big_m);
  return out;
}

Json equilibria_json(const MaterialGame& g, const EquilibriumSet& s) {
  Json list = Json::array();
  for (const auto& e : s.equilibria)
    list.push_back({{"pair", pair_json(g, e.pair)},
                    {"row_value", rational_json(e.row_value)},
                    {"col_value", rational_json(e.col_value)}});
  return {{"count", s.equilibria.size()}, {"equilibria", list}, {"degenerate", s.degenerate}};
}

Json fitness_json(const Fitness& f) {
  return {{"G_theta", rational_json(f.theta)}, {"G_tau", rational_json(f.tau)}};
}

Json profile_json(const MaterialGame& g, const MatchingProfileC& mp) {
  Json sigma = Json::object();
  for (ClassC c : {ClassC::theta_theta, ClassC::theta_tau, ClassC::tau_tau})
    if (const auto& p = mp.sigma[static_cast<int>(c)]) sigma[class_name(c)] = pair_json(g, *p);
  return {{"mode", "complete"}, {"epsilon", rational_json(mp.epsilon)}, {"mu", mu_json(mp.mu)}, {"sigma", sigma}};
}

MatchingProfileC profile_c_from_json(const MaterialGame& g, const Json& j) {
  MatchingProfileC mp;
  mp.epsilon = rational_from_json(j.at("epsilon"));
  mp.mu = mu_from_json<2>(j.at("mu"));
  for (ClassC c : {ClassC::theta_theta, ClassC::theta_tau, ClassC::tau_tau})
    if (j.at("sigma").contains(class_name(c)))
      mp.sigma[static_cast<int>(c)] = pair_from_json(g, j.at("sigma").at(class_name(c)));
  return mp;
}

Json profile_json(const MaterialGame& g, const MatchingProfileI& mp) {
  Json sigma = Json::object();
  for (ClassI c : kClassesI)
    if (const auto& p = mp.sigma[static_cast<int>(c)]) sigma[class_name(c)] = pair_json(g, *p);
  return {{"mode", "incomplete"},
          {"epsilon", rational_json(mp.epsilon)},
          {"p",
           {{"theta", rational_json(mp.info.p[0])},
            {"tau", rational_json(mp.info.p[1])},
            {"u", rational_json(mp.info.p[2])}}},
          {"q", {{"theta", rational_json(mp.info.q.q_theta)}, {"tau", rational_json(mp.info.q.q_tau)}}},
          {"mu", mu_json(mp.mu)},
          {"sigma", sigma}};
}

MatchingProfileI profile_i_from_json(const MaterialGame& g, const Json& j) {
  MatchingProfileI mp;
  mp.epsilon = rational_from_json(j.at("epsilon"));
  const Json& p = j.at("p");
  mp.info = make_info(mp.epsilon, rational_from_json(p.at("theta")), rational_from_json(p.at("tau")),
                      rational_from_json(p.at("u")));
  mp.mu = mu_from_json<3>(j.at("mu"));
  for (ClassI c : kClassesI)
    if (j.at("sigma").contains(class_name(c)))
      mp.sigma[static_cast<int>(c)] = pair_from_json(g, j.at("sigma").at(class_name(c)));
  return mp;
}

Json internal_json(const MaterialGame& g, const InternalViolation& v) {
  return {{"class", class_name(v.cls)},
          {"side", v.side},
          {"type", type_name(v.type)},
          {"better_response", g.labels()[v.better_response]},
          {"current", rational_json(v.current)},
          {"improved", rational_json(v.improved)}};
}

Json internal_json(const MaterialGame& g, const BayesNashViolation& v) {
  return {{"class", class_name(v.cls)},
          {"side", v.side},
          {"type", type_name(v.type)},
          {"better_response", g.labels()[v.better_response]},
          {"current", rational_json(v.current)},
          {"improved", rational_json(v.improved)}};
}

Json witness_json(const MaterialGame& g, const BlockingWitnessC& w) {
  auto agent = [](const AgentPosition& a) {
    return Json{{"type", type_name(a.type)},
                {"class", class_name(a.origin)},
                {"side", a.side},
                {"status", rational_json(a.status)}};
  };
  return {{"row", agent(w.row)},
          {"col", agent(w.col)},
          {"agreed", pair_json(g, w.agreed)},
          {"row_value", rational_json(w.row_value)},
          {"col_value", rational_json(w.col_value)},
          {"count", w.count}};
}

Json witness_json(const MaterialGame& g, const BlockingWitnessI& w) {
  return {{"case", case_name(w.kind)},
          {"first", position_json(w.first)},
          {"second", position_json(w.second)},
          {"first_plan", plan_json(g, w.first_plan)},
          {"second_plan", plan_json(g, w.second_plan)}};
}

Json enumeration_json(const MaterialGame& g, const StableEnumeration& e) {
  Json classes = Json::array();
  for (const auto& c : e.classes) {
    Json vertices = Json::array();
    for (const auto& v : c.vertices)
      vertices.push_back({{"mu_theta_tau", rational_json(v.mu_theta_tau)}, {"fitness", fitness_json(v.fitness)}});
    classes.push_back({{"pattern", pattern_name(c.pattern)},
                       {"profile", profile_json(g, c.profile)},
                       {"mu_theta_tau_range", {rational_json(c.mu_lo), rational_json(c.mu_hi)}},
                       {"open_interval", c.open_interval},
                       {"vertices", vertices}});
  }
  return {{"classes", classes}, {"candidates", e.candidates}, {"degenerate", e.degenerate}};
}

Json construction_json(const MaterialGame& g, const Construction& c) {
  Json out{{"case", c.case_number},
           {"swapped", c.swapped},
           {"L_theta_theta", rational_json(c.l_theta_theta)},
           {"L_tau_tau", rational_json(c.l_tau_tau)},
           {"L_tau_theta", c.l_tau_theta ? rational_json(*c.l_tau_theta) : Json(nullptr)},
           {"profile", profile_json(g, c.profile)},
           {"verified", c.verified},
           {"degenerate", c.degenerate}};
  return out;
}

Json stability_report_json(const StabilityReport& r) {
  Json records = Json::array();
  for (const auto& rec : r.records)
    records.push_back({{"mode", mode_name(rec.mode)},
                       {"epsilon", rational_json(rec.epsilon)},
                       {"profile_id", rec.profile_id},
                       {"G_theta", rational_json(rec.g_theta)},
                       {"G_tau", rational_json(rec.g_tau)},
                       {"comparison", comparison_name(rec.comparison)}});
  return {{"mode", mode_name(r.mode)},
          {"aggregate", aggregate_name(r.aggregate)},
          {"examined", r.examined},
          {"records", records},
          {"warnings", r.warnings}};
}

Json replication_json(const Replication& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(
        {{"quantity", row.quantity}, {"expected", row.expected}, {"computed", row.computed}, {"match", row.match}});
  return {{"case", r.case_id}, {"title", r.title}, {"ok", r.ok()}, {"rows", rows}};
}

Json report_to_json(const Report& r) {
  Json out{{"schema_version", r.schema_version},
           {"command", r.command},
           {"inputs", r.inputs},
           {"verdicts", r.verdicts},
           {"witnesses", r.witnesses},
           {"warnings", r.warnings}};
  if (r.timing) out["timing"] = *r.timing;
  return out;
}

Report report_from_json(const Json& j) {
  Report r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kReportSchemaVersion)
    throw InputError("unsupported report schema version " + std::to_string(r.schema_version));
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  r.verdicts = j.at("verdicts");
  r.witnesses = j.at("witnesses");
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  if (j.contains("timing")) r.timing = j.at("timing");
  return r;
}

std::string dump_report(const Report& r) { return report_to_json(r).dump(2) + "\n"; }

Report parse_report(const std::string& text) {
  try {
    return report_from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

namespace {

void flatten(std::ostringstream& out, const std::string& path, const Json& j) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(out, path.empty() ? k : path + "." + k, v);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(out, path + "[" + std::to_string(i) + "]", j[i]);
  } else if (j.is_string()) {
    out << path << ": " << j.get<std::string>() << "\n";
  } else {
    out << path << ": " << j.dump() << "\n";
  }
}

}  // namespace

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << "command: " << r.command << "\n";
  if (r.command == "replicate" && r.verdicts.contains("cases")) {
    for (const auto& c : r.verdicts.at("cases")) {
      out << "\n[" << c.at("case").get<std::string>() << "] " << c.at("title").get<std::string>() << ": "
          << (c.at("ok").get<bool>() ? "PASS" : "FAIL") << "\n";
      for (const auto& row : c.at("rows"))
        out << "  " << (row.at("match").get<bool>() ? "ok  " : "FAIL") << " " << row.at("quantity").get<std::string>()
            << ": expected " << row.at("expected").get<std::string>() << ", computed "
            << row.at("computed").get<std::string>() << "\n";
    }
  } else {
    flatten(out, "verdicts", r.verdicts);
    flatten(out, "witnesses", r.witnesses);
  }
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  if (r.timing) flatten(out, "timing", *r.timing);
  return out.str();
}

}  // namespace prefmatch
