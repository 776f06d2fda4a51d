#include "prefmatch/scenario.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace prefmatch {

ScenarioError::ScenarioError(std::size_t line, std::size_t column, const std::string& message)
    : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

const PreferenceType& Scenario::type(const std::string& name) const {
  for (const auto& t : types)
    if (t.name == name) return t;
  throw InputError("unknown type '" + name + "'");
}

Population Scenario::population(std::size_t state) const {
  if (state >= states.size()) throw InputError("scenario has no state " + std::to_string(state + 1));
  Population pop{game, type(states[state].theta), type(states[state].tau)};
  if (options.support_cap) pop.support_cap = *options.support_cap;
  return pop;
}

const ProfileDef& Scenario::profile(const std::string& name) const {
  for (const auto& p : profiles)
    if (p.name == name) return p;
  throw InputError("unknown profile '" + name + "'");
}

namespace {

constexpr int kScenarioVersion = 1;

struct Token {
  std::string text;
  std::size_t column;
};

struct Line {
  std::size_t number;
  std::string text;  // comment stripped
};

// Whitespace split that keeps bracketed groups such as [1/2, 1/2] together.
std::vector<Token> tokenize(const std::string& s, std::size_t offset = 0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    std::string text;
    int depth = 0;
    while (i < s.size() && (depth > 0 || !std::isspace(static_cast<unsigned char>(s[i])))) {
      if (s[i] == '[') ++depth;
      if (s[i] == ']') --depth;
      if (!std::isspace(static_cast<unsigned char>(s[i]))) text += s[i];
      ++i;
    }
    out.push_back({text, offset + start + 1});
  }
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::size_t first_column(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  return b == std::string::npos ? 1 : b + 1;
}

enum class Section { none, game, type, state, profile, options };

struct Entry {
  std::vector<Token> key;
  std::vector<Token> value;
  std::size_t line;
  std::optional<Matrix> matrix;  // for "key:" blocks
};

struct Block {
  Section kind = Section::none;
  std::string name;
  std::size_t line = 0;
  std::size_t column = 1;
  std::vector<Entry> entries;
};

class Parser {
 public:
  Parser(const std::string& text, const ParseOptions& opts) : opts_(opts) {
    std::istringstream in(text);
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
      ++no;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw = raw.substr(0, hash);
      if (!trim(raw).empty()) lines_.push_back({no, raw});
    }
  }

  Scenario run() {
    std::size_t i = 0;
    if (i < lines_.size() && lines_[i].text.find('[') == std::string::npos) {
      Entry e = split(lines_[i]);
      if (e.key.size() != 1 || e.key[0].text != "version" || e.value.size() != 1)
        fail(lines_[i].number, first_column(lines_[i].text), "expected 'version = 1' or a section header");
      if (e.value[0].text != std::to_string(kScenarioVersion))
        fail(e.line, e.value[0].column, "unsupported scenario version '" + e.value[0].text + "'");
      ++i;
    }
    std::vector<Block> blocks;
    while (i < lines_.size()) {
      Block b = header(lines_[i]);
      ++i;
      while (i < lines_.size() && trim(lines_[i].text).front() != '[') {
        Entry e = split(lines_[i]);
        ++i;
        if (b.kind == Section::game && !e.matrix && key_text(e) == "labels") {
          labels_.emplace();
          for (const auto& t : e.value) labels_->push_back(t.text);
        }
        if (e.matrix) {
          std::size_t rows = expected_rows(b, e);
          std::vector<std::vector<Rational>> data;
          for (std::size_t r = 0; r < rows; ++r) {
            if (i >= lines_.size() || trim(lines_[i].text).front() == '[')
              fail(e.line, e.key[0].column,
                   "matrix '" + e.key[0].text + "' needs " + std::to_string(rows) + " rows");
            std::vector<Rational> row;
            for (const auto& t : tokenize(lines_[i].text)) row.push_back(number(lines_[i].number, t));
            if (row.size() != rows)
              fail(lines_[i].number, first_column(lines_[i].text),
                   "matrix row needs " + std::to_string(rows) + " entries, found " +
                       std::to_string(row.size()));
            data.push_back(std::move(row));
            ++i;
          }
          e.matrix = Matrix::from_rows(data);
        }
        b.entries.push_back(std::move(e));
      }
      blocks.push_back(std::move(b));
      handle(blocks.back());
    }
    finish();
    return std::move(s_);
  }

 private:
  [[noreturn]] static void fail(std::size_t line, std::size_t column, const std::string& msg) {
    throw ScenarioError(line, column, msg);
  }

  Block header(const Line& l) {
    std::string t = trim(l.text);
    std::size_t col = first_column(l.text);
    if (t.front() != '[' || t.back() != ']') fail(l.number, col, "expected a section header");
    auto toks = tokenize(t.substr(1, t.size() - 2), col);
    if (toks.empty()) fail(l.number, col, "empty section header");
    Block b;
    b.line = l.number;
    b.column = col;
    const std::string& kind = toks[0].text;
    static const std::map<std::string, Section> kinds{{"game", Section::game},
                                                      {"type", Section::type},
                                                      {"state", Section::state},
                                                      {"profile", Section::profile},
                                                      {"options", Section::options}};
    auto it = kinds.find(kind);
    if (it == kinds.end()) fail(l.number, toks[0].column, "unknown section '" + kind + "'");
    b.kind = it->second;
    bool named = b.kind == Section::type || b.kind == Section::profile;
    if (named && toks.size() != 2) fail(l.number, col, "section [" + kind + "] needs exactly one name");
    if (!named && toks.size() != 1) fail(l.number, toks[1].column, "section [" + kind + "] takes no name");
    if (named) b.name = toks[1].text;
    return b;
  }

  Entry split(const Line& l) {
    Entry e;
    e.line = l.number;
    std::string t = l.text;
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      std::string body = trim(t);
      if (body.empty() || body.back() != ':') fail(l.number, first_column(t), "expected 'key = value' or 'key:'");
      auto colon = t.rfind(':');
      e.key = tokenize(t.substr(0, colon));
      if (e.key.size() != 1) fail(l.number, first_column(t), "matrix name must be a single word");
      e.matrix = Matrix();
      return e;
    }
    e.key = tokenize(t.substr(0, eq));
    e.value = tokenize(t.substr(eq + 1), eq + 1);
    if (e.key.empty()) fail(l.number, first_column(t), "missing key before '='");
    if (e.value.empty()) fail(l.number, eq + 1, "missing value after '='");
    return e;
  }

  std::size_t expected_rows(const Block& b, const Entry& e) {
    if (b.kind == Section::game) {
      if (!labels_) fail(e.line, e.key[0].column, "labels must precede the payoff matrix");
      return labels_->size();
    }
    if (b.kind == Section::type) return game_size(e);
    fail(e.line, e.key[0].column, "matrices are only allowed in [game] and [type] sections");
  }

  std::size_t game_size(const Entry& e) {
    if (!have_game_) fail(e.line, e.key[0].column, "[game] must come before types");
    return s_.game.size();
  }

  static Rational number(std::size_t line, const Token& t) {
    try {
      return parse_rational(t.text);
    } catch (const InputError& err) {
      fail(line, t.column, err.what());
    }
  }

  static bool boolean(const Entry& e) {
    const std::string& v = single(e).text;
    if (v == "true") return true;
    if (v == "false") return false;
    fail(e.line, single(e).column, "expected true or false");
  }

  static const Token& single(const Entry& e) {
    if (e.value.size() != 1) fail(e.line, e.value[0].column, "expected a single value");
    return e.value[0];
  }

  static std::string key_text(const Entry& e) {
    std::string out;
    for (const auto& k : e.key) out += (out.empty() ? "" : " ") + k.text;
    return out;
  }

  [[noreturn]] static void unknown(const Entry& e, const std::string& section) {
    fail(e.line, e.key[0].column, "unknown key '" + key_text(e) + "' in [" + section + "]");
  }

  void handle(const Block& b) {
    switch (b.kind) {
      case Section::game: return game(b);
      case Section::type: return type(b);
      case Section::state: return state(b);
      case Section::profile: return profile(b);
      case Section::options: return options(b);
      case Section::none: break;
    }
  }

  void game(const Block& b) {
    if (have_game_) fail(b.line, b.column, "duplicate [game] section");
    bool allow = false;
    std::optional<Matrix> payoff;
    for (const auto& e : b.entries) {
      std::string k = key_text(e);
      if (k == "labels" && !e.matrix) {
        continue;
      } else if (k == "allow_nonpositive" && !e.matrix) {
        allow = boolean(e);
      } else if (k == "payoff" && e.matrix) {
        payoff = e.matrix;
      } else {
        unknown(e, "game");
      }
    }
    if (!labels_) fail(b.line, b.column, "[game] needs labels");
    if (!payoff) fail(b.line, b.column, "[game] needs a payoff matrix");
    try {
      s_.game = MaterialGame(*labels_, *payoff, allow || opts_.allow_nonpositive);
    } catch (const InputError& err) {
      fail(b.line, b.column, err.what());
    }
    have_game_ = true;
  }

  void type(const Block& b) {
    if (!have_game_) fail(b.line, b.column, "[game] must come before types");
    for (const auto& t : s_.types)
      if (t.name == b.name) fail(b.line, b.column, "duplicate type '" + b.name + "'");
    std::optional<Family> family;
    std::optional<Recipe> recipe;
    AdversaryParams params;
    std::optional<Matrix> same, cross;
    for (const auto& e : b.entries) {
      std::string k = key_text(e);
      try {
        if (k == "family" && !e.matrix) family = family_from_name(single(e).text);
        else if (k == "recipe" && !e.matrix) recipe = recipe_from_name(single(e).text);
        else if (k == "lambda" && !e.matrix) params.lambda = number(e.line, single(e));
        else if (k == "M" && !e.matrix) params.big_m = number(e.line, single(e));
        else if (k == "same" && e.matrix) same = e.matrix;
        else if (k == "cross" && e.matrix) cross = e.matrix;
        else unknown(e, "type " + b.name);
      } catch (const ScenarioError&) {
        throw;
      } catch (const InputError& err) {
        fail(e.line, e.value.empty() ? e.key[0].column : e.value[0].column, err.what());
      }
    }
    if (!family && recipe) family = Family::adversary;
    if (!family && (same || cross)) family = Family::custom;
    if (!family) fail(b.line, b.column, "type needs a family");
    try {
      PreferenceType t;
      if (*family == Family::custom) {
        if (!same || !cross) fail(b.line, b.column, "custom type needs same: and cross: tables");
        if (recipe || params.lambda || params.big_m)
          fail(b.line, b.column, "custom types take only tables");
        t = custom_type(s_.game, *same, *cross, b.name);
      } else if (*family == Family::adversary) {
        if (!recipe) fail(b.line, b.column, "adversary type needs a recipe");
        if (same || cross) fail(b.line, b.column, "adversary types are built from their recipe");
        if (*recipe != Recipe::prop5_anticoordinator && (params.lambda || params.big_m))
          fail(b.line, b.column, "recipe " + recipe_name(*recipe) + " takes no parameters");
        t = build_adversary_type(s_.game, *recipe, params, b.name);
      } else {
        if (recipe || params.big_m || same || cross)
          fail(b.line, b.column, "family " + family_name(*family) + " takes only lambda");
        bool wants_lambda = *family == Family::homophilic_efficient || *family == Family::homophilic_selfish;
        if (params.lambda && !wants_lambda)
          fail(b.line, b.column, "family " + family_name(*family) + " takes no lambda");
        t = build_type(s_.game, *family, params.lambda, b.name);
      }
      s_.types.push_back(std::move(t));
    } catch (const ScenarioError&) {
      throw;
    } catch (const InputError& err) {
      fail(b.line, b.column, err.what());
    }
  }

  void state(const Block& b) {
    State st;
    for (const auto& e : b.entries) {
      std::string k = key_text(e);
      if (e.matrix) unknown(e, "state");
      if (k == "theta") st.theta = single(e).text;
      else if (k == "tau") st.tau = single(e).text;
      else if (k == "epsilon") st.epsilon = number(e.line, single(e));
      else if (k == "p") {
        if (e.value.size() != 3) fail(e.line, e.value[0].column, "p needs three masses: theta tau u");
        st.p = std::array<Rational, 3>{number(e.line, e.value[0]), number(e.line, e.value[1]),
                                       number(e.line, e.value[2])};
      } else unknown(e, "state");
    }
    if (st.theta.empty() || st.tau.empty()) fail(b.line, b.column, "[state] needs theta and tau");
    state_lines_.push_back({b.line, b.column});
    s_.states.push_back(std::move(st));
  }

  static Label label(const Entry& e, const Token& t, bool allow_u) {
    if (t.text == "theta") return Label::theta;
    if (t.text == "tau") return Label::tau;
    if (t.text == "u" && allow_u) return Label::u;
    fail(e.line, t.column, "unknown label '" + t.text + "'" + (allow_u ? "" : " (u needs mode incomplete)"));
  }

  MixedStrategy strategy(const Entry& e, const Token& t) {
    const std::size_t n = s_.game.size();
    if (t.text.front() != '[') {
      try {
        return MixedStrategy::pure(n, s_.game.index_of(t.text));
      } catch (const InputError& err) {
        fail(e.line, t.column, err.what());
      }
    }
    if (t.text.back() != ']') fail(e.line, t.column, "unterminated mixed strategy");
    std::vector<Rational> w;
    std::string body = t.text.substr(1, t.text.size() - 2);
    std::size_t start = 0;
    while (start <= body.size()) {
      auto comma = body.find(',', start);
      std::string part = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      w.push_back(number(e.line, {part, t.column}));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (w.size() != n) fail(e.line, t.column, "mixed strategy needs " + std::to_string(n) + " weights");
    try {
      return MixedStrategy(w);
    } catch (const InputError& err) {
      fail(e.line, t.column, err.what());
    }
  }

  void profile(const Block& b) {
    for (const auto& p : s_.profiles)
      if (p.name == b.name) fail(b.line, b.column, "duplicate profile '" + b.name + "'");
    ProfileDef def;
    def.name = b.name;
    for (const auto& e : b.entries) {
      std::string k = key_text(e);
      if (k == "mode" && !e.matrix) {
        try {
          def.mode = mode_from_name(single(e).text);
        } catch (const ScenarioError&) {
          throw;
        } catch (const InputError& err) {
          fail(e.line, e.value[0].column, err.what());
        }
      }
    }
    std::optional<Rational> eps;
    std::array<std::optional<Rational>, 3> p;
    std::array<std::array<Rational, 3>, 3> mu{};
    std::array<std::optional<StrategyPair>, 6> sigma;
    const bool inc = def.mode == Mode::incomplete;
    for (const auto& e : b.entries) {
      std::string k = e.key[0].text;
      if (e.matrix) unknown(e, "profile " + b.name);
      if (k == "mode" && e.key.size() == 1) continue;
      if (k == "state" && e.key.size() == 1) {
        Rational idx = number(e.line, single(e));
        if (idx.get_den() != 1 || idx < 1) fail(e.line, e.value[0].column, "state must be a positive index");
        def.state = idx.get_num().get_ui() - 1;
      } else if (k == "epsilon" && e.key.size() == 1) {
        eps = number(e.line, single(e));
      } else if (k == "p" && e.key.size() == 2 && inc) {
        p[static_cast<int>(label(e, e.key[1], true))] = number(e.line, single(e));
      } else if (k == "mu" && e.key.size() == 3) {
        int a = static_cast<int>(label(e, e.key[1], inc)), c = static_cast<int>(label(e, e.key[2], inc));
        mu[a][c] = number(e.line, single(e));
      } else if (k == "sigma" && e.key.size() == 3) {
        Label a = label(e, e.key[1], inc), c = label(e, e.key[2], inc);
        if (e.value.size() != 2) fail(e.line, e.value[0].column, "sigma needs two strategies");
        StrategyPair pair{strategy(e, e.value[0]), strategy(e, e.value[1])};
        if (static_cast<int>(a) > static_cast<int>(c)) pair = pair.swapped();
        ClassI cls = class_of(a, c);
        auto& slot = sigma[static_cast<int>(cls)];
        if (slot) fail(e.line, e.key[0].column, "duplicate sigma for class " + class_name(cls));
        slot = pair;
      } else {
        unknown(e, "profile " + b.name);
      }
    }
    if (def.state >= s_.states.size())
      fail(b.line, b.column, "profile refers to state " + std::to_string(def.state + 1) + ", which is not declared");
    const State& st = s_.states[def.state];
    if (!eps) eps = st.epsilon;
    if (!eps) fail(b.line, b.column, "profile needs epsilon (directly or through its state)");
    try {
      if (inc) {
        for (int l = 0; l < 3; ++l)
          if (!p[l] && st.p) p[l] = (*st.p)[l];
        if (!p[0] || !p[1] || !p[2]) fail(b.line, b.column, "incomplete profile needs p theta, p tau and p u");
        MatchingProfileI mp;
        mp.epsilon = *eps;
        mp.info = make_info(*eps, *p[0], *p[1], *p[2]);
        mp.mu = mu;
        mp.sigma = sigma;
        def.incomplete = mp;
      } else {
        MatchingProfileC mp;
        mp.epsilon = *eps;
        for (int a = 0; a < 2; ++a)
          for (int c = 0; c < 2; ++c) mp.mu[a][c] = mu[a][c];
        mp.sigma[static_cast<int>(ClassC::theta_theta)] = sigma[static_cast<int>(ClassI::theta_theta)];
        mp.sigma[static_cast<int>(ClassC::theta_tau)] = sigma[static_cast<int>(ClassI::theta_tau)];
        mp.sigma[static_cast<int>(ClassC::tau_tau)] = sigma[static_cast<int>(ClassI::tau_tau)];
        def.complete = mp;
      }
    } catch (const ScenarioError&) {
      throw;
    } catch (const InputError& err) {
      fail(b.line, b.column, err.what());
    }
    profile_lines_.push_back({b.line, b.column});
    s_.profiles.push_back(std::move(def));
  }

  void options(const Block& b) {
    for (const auto& e : b.entries) {
      std::string k = key_text(e);
      if (e.matrix) unknown(e, "options");
      if (k == "epsilon_grid") {
        for (const auto& t : e.value) s_.options.epsilon_grid.push_back(number(e.line, t));
      } else if (k == "delta_grid") {
        for (const auto& t : e.value) s_.options.delta_grid.push_back(number(e.line, t));
      } else if (k == "support_cap") {
        Rational c = number(e.line, single(e));
        if (c.get_den() != 1 || c < 1) fail(e.line, e.value[0].column, "support_cap must be a positive integer");
        s_.options.support_cap = c.get_num().get_ui();
      } else if (k == "case_order") {
        for (const auto& t : e.value) {
          try {
            s_.options.case_order.push_back(case_from_name(t.text));
          } catch (const InputError& err) {
            fail(e.line, t.column, err.what());
          }
        }
      } else {
        unknown(e, "options");
      }
    }
  }

  void finish() {
    if (!have_game_) fail(1, 1, "scenario needs a [game] section");
    for (std::size_t i = 0; i < s_.states.size(); ++i) {
      const State& st = s_.states[i];
      auto [line, col] = state_lines_[i];
      for (const auto* n : {&st.theta, &st.tau}) {
        bool found = false;
        for (const auto& t : s_.types) found = found || t.name == *n;
        if (!found) fail(line, col, "state refers to unknown type '" + *n + "'");
      }
      try {
        if (st.epsilon && st.p) make_info(*st.epsilon, (*st.p)[0], (*st.p)[1], (*st.p)[2]);
        else if (st.epsilon && (*st.epsilon <= 0 || *st.epsilon >= 1))
          throw InputError("epsilon must lie strictly between 0 and 1");
        validate_population(s_.population(i));
      } catch (const InputError& err) {
        fail(line, col, err.what());
      }
    }
    for (std::size_t i = 0; i < s_.profiles.size(); ++i) {
      const ProfileDef& d = s_.profiles[i];
      auto [line, col] = profile_lines_[i];
      try {
        Population pop = s_.population(d.state);
        if (d.complete) validate_profile(pop, *d.complete);
        if (d.incomplete) validate_profile(pop, *d.incomplete);
      } catch (const InputError& err) {
        fail(line, col, "profile '" + d.name + "': " + err.what());
      }
    }
  }

  ParseOptions opts_;
  std::vector<Line> lines_;
  Scenario s_;
  bool have_game_ = false;
  std::optional<std::vector<std::string>> labels_;
  std::vector<std::pair<std::size_t, std::size_t>> state_lines_;
  std::vector<std::pair<std::size_t, std::size_t>> profile_lines_;
};

void write_matrix(std::ostringstream& out, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << " ";
    for (std::size_t j = 0; j < m.cols(); ++j) out << " " << compact_string(m(i, j));
    out << "\n";
  }
}

void write_list(std::ostringstream& out, const std::string& key, const std::vector<Rational>& v) {
  if (v.empty()) return;
  out << key << " =";
  for (const auto& r : v) out << " " << compact_string(r);
  out << "\n";
}

}  // namespace

Scenario parse_scenario(const std::string& text, const ParseOptions& opts) {
  return Parser(text, opts).run();
}

Scenario load_scenario(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), opts);
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  const MaterialGame& g = s.game;
  out << "version = " << kScenarioVersion << "\n\n[game]\nlabels =";
  for (const auto& l : g.labels()) out << " " << l;
  out << "\n";
  if (g.allow_nonpositive()) out << "allow_nonpositive = true\n";
  out << "payoff:\n";
  write_matrix(out, g.payoff());

  for (const auto& t : s.types) {
    out << "\n[type " << t.name << "]\nfamily = " << family_name(t.family) << "\n";
    if (t.recipe) out << "recipe = " << recipe_name(*t.recipe) << "\n";
    if (t.lambda) out << "lambda = " << compact_string(*t.lambda) << "\n";
    if (t.big_m) out << "M = " << compact_string(*t.big_m) << "\n";
    if (t.family == Family::custom) {
      out << "same:\n";
      write_matrix(out, t.u_same);
      out << "cross:\n";
      write_matrix(out, t.u_cross);
    }
  }

  for (const auto& st : s.states) {
    out << "\n[state]\ntheta = " << st.theta << "\ntau = " << st.tau << "\n";
    if (st.epsilon) out << "epsilon = " << compact_string(*st.epsilon) << "\n";
    if (st.p)
      out << "p = " << compact_string((*st.p)[0]) << " " << compact_string((*st.p)[1]) << " "
          << compact_string((*st.p)[2]) << "\n";
  }

  static const char* labels[] = {"theta", "tau", "u"};
  for (const auto& d : s.profiles) {
    out << "\n[profile " << d.name << "]\nmode = " << mode_name(d.mode) << "\n";
    if (d.state != 0) out << "state = " << d.state + 1 << "\n";
    auto pair_line = [&](Label a, Label b, const StrategyPair& p) {
      out << "sigma " << labels[static_cast<int>(a)] << " " << labels[static_cast<int>(b)] << " = "
          << strategy_text(g, p.first) << " " << strategy_text(g, p.second) << "\n";
    };
    if (d.complete) {
      const auto& mp = *d.complete;
      out << "epsilon = " << compact_string(mp.epsilon) << "\n";
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if (mp.mu[a][b] != 0)
            out << "mu " << labels[a] << " " << labels[b] << " = " << compact_string(mp.mu[a][b]) << "\n";
      const std::array<std::pair<Label, Label>, 3> cls{
          {{Label::theta, Label::theta}, {Label::theta, Label::tau}, {Label::tau, Label::tau}}};
      for (int c = 0; c < 3; ++c)
        if (mp.sigma[c]) pair_line(cls[c].first, cls[c].second, *mp.sigma[c]);
    }
    if (d.incomplete) {
      const auto& mp = *d.incomplete;
      out << "epsilon = " << compact_string(mp.epsilon) << "\n";
      for (int l = 0; l < 3; ++l) out << "p " << labels[l] << " = " << compact_string(mp.info.p[l]) << "\n";
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          if (mp.mu[a][b] != 0)
            out << "mu " << labels[a] << " " << labels[b] << " = " << compact_string(mp.mu[a][b]) << "\n";
      for (ClassI c : kClassesI)
        if (const auto& p = mp.sigma[static_cast<int>(c)]) {
          auto [a, b] = class_labels(c);
          pair_line(a, b, *p);
        }
    }
  }

  const ScenarioOptions& o = s.options;
  if (!o.epsilon_grid.empty() || !o.delta_grid.empty() || o.support_cap || !o.case_order.empty()) {
    out << "\n[options]\n";
    write_list(out, "epsilon_grid", o.epsilon_grid);
    write_list(out, "delta_grid", o.delta_grid);
    if (o.support_cap) out << "support_cap = " << *o.support_cap << "\n";
    if (!o.case_order.empty()) {
      out << "case_order =";
      for (auto c : o.case_order) out << " " << case_name(c);
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace prefmatch
