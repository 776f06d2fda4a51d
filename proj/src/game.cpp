#include "prefmatch/game.hpp"

#include <algorithm>
#include <set>

namespace prefmatch {

MixedStrategy::MixedStrategy(std::vector<Rational> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InputError("mixed strategy over an empty strategy set");
  Rational sum = 0;
  for (const auto& w : weights_) {
    if (w < 0 || w > 1) throw InputError("mixed strategy weight outside [0,1]");
    sum += w;
  }
  if (sum != 1) throw InputError("mixed strategy weights sum to " + compact_string(sum) + ", not 1");
}

MixedStrategy MixedStrategy::pure(std::size_t n, std::size_t index) {
  if (index >= n) throw InputError("pure strategy index out of range");
  std::vector<Rational> w(n, Rational(0));
  w[index] = 1;
  return MixedStrategy(std::move(w));
}

std::vector<std::size_t> MixedStrategy::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (weights_[i] != 0) s.push_back(i);
  return s;
}

std::optional<std::size_t> MixedStrategy::pure_index() const {
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (weights_[i] == 1) return i;
  return std::nullopt;
}

bool MixedStrategy::operator==(const MixedStrategy& other) const {
  if (weights_.size() != other.weights_.size()) return false;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (weights_[i] != other.weights_[i]) return false;
  return true;
}

// Pure strategies with lower index sort first: larger weight on earlier labels wins.
bool MixedStrategy::operator<(const MixedStrategy& other) const {
  std::size_t n = std::min(weights_.size(), other.weights_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (weights_[i] != other.weights_[i]) return weights_[i] > other.weights_[i];
  }
  return weights_.size() < other.weights_.size();
}

bool StrategyPair::operator<(const StrategyPair& other) const {
  if (!(first == other.first)) return first < other.first;
  return second < other.second;
}

StrategyPair pure_pair(std::size_t n, std::size_t i, std::size_t j) {
  return {MixedStrategy::pure(n, i), MixedStrategy::pure(n, j)};
}

MaterialGame::MaterialGame(std::vector<std::string> labels, Matrix payoff, bool allow_nonpositive)
    : labels_(std::move(labels)), payoff_(std::move(payoff)), allow_nonpositive_(allow_nonpositive) {
  if (labels_.empty()) throw InputError("game needs at least one strategy");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw InputError("strategy labels must be unique");
  if (payoff_.rows() != labels_.size() || payoff_.cols() != labels_.size())
    throw InputError("payoff matrix must be " + std::to_string(labels_.size()) + "x" +
                     std::to_string(labels_.size()));
  if (!allow_nonpositive_) {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (payoff_(i, j) <= 0)
          throw InputError("payoff entry (" + labels_[i] + "," + labels_[j] +
                           ") is not positive; set allow_nonpositive to accept it");
  }
}

std::size_t MaterialGame::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InputError("unknown strategy label '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

Rational bilinear(const Matrix& m, const MixedStrategy& x, const MixedStrategy& y) {
  if (x.size() != m.rows() || y.size() != m.cols()) throw InputError("strategy dimension mismatch");
  Rational total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) row += y[j] * m(i, j);
    total += x[i] * row;
  }
  return total;
}

Rational material_payoff(const MaterialGame& game, const MixedStrategy& x, const MixedStrategy& y) {
  return bilinear(game.payoff(), x, y);
}

Rational material_total(const MaterialGame& game, const MixedStrategy& x, const MixedStrategy& y) {
  return material_payoff(game, x, y) + material_payoff(game, y, x);
}

namespace {

Rational pure_total(const MaterialGame& g, std::size_t i, std::size_t j) {
  return g.payoff()(i, j) + g.payoff()(j, i);
}

}  // namespace

EfficientPairs efficient_pairs(const MaterialGame& game) {
  EfficientPairs out;
  out.best_total = pure_total(game, 0, 0);
  for (std::size_t i = 0; i < game.size(); ++i)
    for (std::size_t j = 0; j < game.size(); ++j) {
      Rational t = pure_total(game, i, j);
      if (t > out.best_total) {
        out.best_total = t;
        out.pairs.clear();
      }
      if (t == out.best_total) out.pairs.emplace_back(i, j);
    }
  return out;
}

bool is_strictly_efficient(const MaterialGame& game, std::size_t x, std::size_t y) {
  if (x >= game.size() || y >= game.size()) throw InputError("strategy index out of range");
  Rational t = pure_total(game, x, y);
  if (t != efficient_pairs(game).best_total) return false;
  for (std::size_t k = 0; k < game.size(); ++k) {
    if (k != x && pure_total(game, k, y) >= t) return false;
    if (k != y && pure_total(game, x, k) >= t) return false;
  }
  return true;
}

InefficiencyConstants inefficiency_constants(const MaterialGame& game,
                                             const std::vector<Rational>& ne_inefficient_totals,
                                             const Rational& lambda) {
  if (lambda <= 0) throw InputError("lambda must be positive");
  InefficiencyConstants c;
  c.s_bar = efficient_pairs(game).best_total;
  if (c.s_bar <= 0) throw InputError("maximal total payoff must be positive");
  bool found = false;
  for (std::size_t i = 0; i < game.size(); ++i)
    for (std::size_t j = 0; j < game.size(); ++j) {
      Rational t = pure_total(game, i, j);
      if (t < c.s_bar && (!found || t > c.s_hat)) {
        c.s_hat = t;
        found = true;
      }
    }
  if (!found) throw InputError("every pure pair is efficient; the inefficiency constants are undefined");
  c.s_tilde = 0;
  for (const auto& t : ne_inefficient_totals)
    if (t > c.s_tilde) c.s_tilde = t;
  c.delta_bar = c.s_bar / (2 * c.s_bar - c.s_hat);
  Rational second = c.s_bar / (c.s_bar + lambda);
  Rational third = c.s_tilde / c.s_bar;
  if (second > c.delta_bar) c.delta_bar = second;
  if (third > c.delta_bar) c.delta_bar = third;
  return c;
}

std::string strategy_text(const MaterialGame& game, const MixedStrategy& s) {
  if (auto p = s.pure_index()) return game.labels()[*p];
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += compact_string(s[i]);
  }
  return out + "]";
}

std::string pair_text(const MaterialGame& game, const StrategyPair& p) {
  return "(" + strategy_text(game, p.first) + "," + strategy_text(game, p.second) + ")";
}

}  // namespace prefmatch
