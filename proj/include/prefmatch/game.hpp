#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prefmatch/rational.hpp"

namespace prefmatch {

class MixedStrategy {
 public:
  MixedStrategy() = default;
  explicit MixedStrategy(std::vector<Rational> weights);

  static MixedStrategy pure(std::size_t n, std::size_t index);

  std::size_t size() const { return weights_.size(); }
  const Rational& operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<Rational>& weights() const { return weights_; }

  std::vector<std::size_t> support() const;
  std::optional<std::size_t> pure_index() const;

  bool operator==(const MixedStrategy& other) const;
  bool operator<(const MixedStrategy& other) const;

 private:
  std::vector<Rational> weights_;
};

struct StrategyPair {
  MixedStrategy first;
  MixedStrategy second;

  StrategyPair swapped() const { return {second, first}; }
  bool operator==(const StrategyPair& other) const {
    return first == other.first && second == other.second;
  }
  bool operator<(const StrategyPair& other) const;
};

StrategyPair pure_pair(std::size_t n, std::size_t i, std::size_t j);

class MaterialGame {
 public:
  MaterialGame() = default;
  MaterialGame(std::vector<std::string> labels, Matrix payoff, bool allow_nonpositive = false);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Matrix& payoff() const { return payoff_; }
  bool allow_nonpositive() const { return allow_nonpositive_; }

  std::size_t index_of(const std::string& label) const;

  bool operator==(const MaterialGame& other) const {
    return labels_ == other.labels_ && payoff_ == other.payoff_ &&
           allow_nonpositive_ == other.allow_nonpositive_;
  }

 private:
  std::vector<std::string> labels_;
  Matrix payoff_;
  bool allow_nonpositive_ = false;
};

// Sum over i,j of x_i * y_j * m(i,j).
Rational bilinear(const Matrix& m, const MixedStrategy& x, const MixedStrategy& y);

Rational material_payoff(const MaterialGame& game, const MixedStrategy& x, const MixedStrategy& y);
Rational material_total(const MaterialGame& game, const MixedStrategy& x, const MixedStrategy& y);

struct EfficientPairs {
  Rational best_total;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

EfficientPairs efficient_pairs(const MaterialGame& game);

bool is_strictly_efficient(const MaterialGame& game, std::size_t x, std::size_t y);

struct InefficiencyConstants {
  Rational s_bar;
  Rational s_hat;
  Rational s_tilde;
  Rational delta_bar;
};

InefficiencyConstants inefficiency_constants(const MaterialGame& game,
                                             const std::vector<Rational>& ne_inefficient_totals,
                                             const Rational& lambda);

// Pure strategies by label, mixed ones as "[w1,w2,...]".
std::string strategy_text(const MaterialGame& game, const MixedStrategy& s);
std::string pair_text(const MaterialGame& game, const StrategyPair& p);

}  // namespace prefmatch
