#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "domelim/error.hpp"
#include "domelim/rational.hpp"

namespace domelim {

// A joint strategy as one index per player, or (for opponent joints) one
// index per opponent in increasing player order.
using Joint = std::vector<std::size_t>;

struct StrategyRef {
  std::size_t player = 0;
  std::size_t index = 0;

  friend auto operator<=>(const StrategyRef&, const StrategyRef&) = default;
};

// Calls fn(joint) for every element of sets[0] x ... x sets[k-1], last
// coordinate varying fastest. An empty list of sets yields one empty joint.
template <typename Fn>
void for_each_joint(std::span<const std::vector<std::size_t>> sets, Fn&& fn) {
  for (const auto& set : sets) {
    if (set.empty()) return;
  }
  std::vector<std::size_t> cursor(sets.size(), 0);
  Joint joint(sets.size());
  for (std::size_t k = 0; k < sets.size(); ++k) joint[k] = sets[k][0];
  while (true) {
    fn(static_cast<const Joint&>(joint));
    std::size_t k = sets.size();
    while (k > 0) {
      --k;
      if (++cursor[k] < sets[k].size()) {
        joint[k] = sets[k][cursor[k]];
        break;
      }
      cursor[k] = 0;
      joint[k] = sets[k][0];
      if (k == 0) return;
    }
    if (sets.empty()) return;
  }
}

// Inserts player i's strategy into an opponent joint.
inline Joint with_strategy(const Joint& opponents, std::size_t player, std::size_t strategy) {
  Joint joint;
  joint.reserve(opponents.size() + 1);
  joint.insert(joint.end(), opponents.begin(), opponents.begin() + static_cast<std::ptrdiff_t>(player));
  joint.push_back(strategy);
  joint.insert(joint.end(), opponents.begin() + static_cast<std::ptrdiff_t>(player), opponents.end());
  return joint;
}

// The initial finite strategic game. Immutable once built.
class Game {
 public:
  // `payoffs` lists, for every joint strategy in odometer order, the n
  // payoffs of players 1..n.
  Game(std::vector<std::vector<std::string>> labels, std::vector<Rational> payoffs)
      : labels_(std::move(labels)), payoffs_(std::move(payoffs)) {
    if (labels_.size() < 2) throw StructuralError("a game needs at least two players");
    strides_.assign(labels_.size(), 1);
    joint_count_ = 1;
    for (std::size_t i = labels_.size(); i-- > 0;) {
      const auto& names = labels_[i];
      if (names.empty()) {
        throw StructuralError("player " + std::to_string(i + 1) + " has no strategies");
      }
      std::set<std::string> seen;
      for (const auto& name : names) {
        if (name.empty()) throw StructuralError("empty strategy label");
        if (name.find_first_of(" \t\r\n#") != std::string::npos) {
          throw StructuralError("strategy label '" + name + "' contains whitespace or '#'");
        }
        if (!seen.insert(name).second) {
          throw StructuralError("duplicate label '" + name + "' for player " + std::to_string(i + 1));
        }
      }
      strides_[i] = joint_count_;
      joint_count_ *= names.size();
    }
    if (payoffs_.size() != joint_count_ * labels_.size()) {
      throw StructuralError("payoff tensor has " + std::to_string(payoffs_.size()) +
                            " entries, expected " + std::to_string(joint_count_ * labels_.size()));
    }
  }

  std::size_t num_players() const { return labels_.size(); }
  std::size_t num_strategies(std::size_t player) const { return labels_.at(player).size(); }
  std::size_t joint_count() const { return joint_count_; }
  const std::vector<std::string>& labels(std::size_t player) const { return labels_.at(player); }
  const std::vector<std::vector<std::string>>& all_labels() const { return labels_; }

  std::optional<std::size_t> find_label(std::size_t player, std::string_view name) const {
    const auto& names = labels_.at(player);
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
  }

  std::size_t flat_index(std::span<const std::size_t> joint) const {
    if (joint.size() != num_players()) {
      throw StructuralError("joint strategy has " + std::to_string(joint.size()) +
                            " components, expected " + std::to_string(num_players()));
    }
    std::size_t flat = 0;
    for (std::size_t k = 0; k < joint.size(); ++k) {
      if (joint[k] >= labels_[k].size()) {
        throw StructuralError("strategy index " + std::to_string(joint[k]) +
                              " out of range for player " + std::to_string(k + 1));
      }
      flat += joint[k] * strides_[k];
    }
    return flat;
  }

  const Rational& payoff(std::size_t player, std::span<const std::size_t> joint) const {
    if (player >= num_players()) throw StructuralError("player index out of range");
    return payoffs_[flat_index(joint) * num_players() + player];
  }

  // Flat payoff vector in file order.
  const std::vector<Rational>& payoff_tensor() const { return payoffs_; }

  friend bool operator==(const Game& a, const Game& b) {
    return a.labels_ == b.labels_ && a.payoffs_ == b.payoffs_;
  }

 private:
  std::vector<std::vector<std::string>> labels_;
  std::vector<Rational> payoffs_;
  std::vector<std::size_t> strides_;
  std::size_t joint_count_ = 0;
};

using GamePtr = std::shared_ptr<const Game>;

inline const Rational& payoff_pure(const Game& game, std::size_t player, std::span<const std::size_t> joint) {
  return game.payoff(player, joint);
}

// Per-player nonempty subsets of the initial game's strategies. Kept index
// lists are sorted and duplicate-free, so equal restrictions compare equal.
class Restriction {
 public:
  explicit Restriction(GamePtr game) : game_(std::move(game)) {
    if (!game_) throw StructuralError("restriction of a null game");
    kept_.resize(game_->num_players());
    for (std::size_t i = 0; i < kept_.size(); ++i) {
      kept_[i].resize(game_->num_strategies(i));
      std::iota(kept_[i].begin(), kept_[i].end(), std::size_t{0});
    }
  }

  Restriction(GamePtr game, std::vector<std::vector<std::size_t>> kept)
      : game_(std::move(game)), kept_(std::move(kept)) {
    if (!game_) throw StructuralError("restriction of a null game");
    if (kept_.size() != game_->num_players()) {
      throw StructuralError("restriction must list strategies for every player");
    }
    for (std::size_t i = 0; i < kept_.size(); ++i) {
      auto& set = kept_[i];
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
      if (set.empty()) {
        throw StructuralError("player " + std::to_string(i + 1) + " keeps no strategy");
      }
      if (set.back() >= game_->num_strategies(i)) {
        throw StructuralError("strategy index out of range for player " + std::to_string(i + 1));
      }
    }
  }

  const Game& game() const { return *game_; }
  const GamePtr& game_ptr() const { return game_; }
  std::size_t num_players() const { return kept_.size(); }

  const std::vector<std::size_t>& kept(std::size_t player) const { return kept_.at(player); }
  const std::vector<std::vector<std::size_t>>& all_kept() const { return kept_; }

  bool contains(std::size_t player, std::size_t strategy) const {
    const auto& set = kept_.at(player);
    return std::binary_search(set.begin(), set.end(), strategy);
  }
  bool contains(StrategyRef s) const { return contains(s.player, s.index); }

  std::size_t size() const {
    std::size_t total = 0;
    for (const auto& set : kept_) total += set.size();
    return total;
  }

  bool is_full() const {
    for (std::size_t i = 0; i < kept_.size(); ++i) {
      if (kept_[i].size() != game_->num_strategies(i)) return false;
    }
    return true;
  }

  // Every strategy in canonical (player, index) order.
  std::vector<StrategyRef> strategies() const {
    std::vector<StrategyRef> out;
    for (std::size_t i = 0; i < kept_.size(); ++i) {
      for (std::size_t s : kept_[i]) out.push_back({i, s});
    }
    return out;
  }

  // Removes the given strategies; throws if a player would be left empty.
  Restriction without(std::span<const StrategyRef> removed) const {
    auto kept = kept_;
    for (const auto& s : removed) {
      auto& set = kept.at(s.player);
      auto it = std::lower_bound(set.begin(), set.end(), s.index);
      if (it == set.end() || *it != s.index) {
        throw StructuralError("removed strategy is not in the restriction");
      }
      set.erase(it);
    }
    return Restriction(game_, std::move(kept));
  }

  friend bool operator==(const Restriction& a, const Restriction& b) {
    return a.kept_ == b.kept_ && (a.game_ == b.game_ || *a.game_ == *b.game_);
  }
  // Orders restrictions of one game by their kept sets.
  friend bool operator<(const Restriction& a, const Restriction& b) { return a.kept_ < b.kept_; }

 private:
  GamePtr game_;
  std::vector<std::vector<std::size_t>> kept_;
};

// a ⊆ b, componentwise.
inline bool restriction_leq(const Restriction& a, const Restriction& b) {
  if (a.game_ptr() != b.game_ptr() && !(a.game() == b.game())) {
    throw StructuralError("restrictions of different initial games");
  }
  for (std::size_t i = 0; i < a.num_players(); ++i) {
    const auto& sub = a.kept(i);
    const auto& sup = b.kept(i);
    if (!std::includes(sup.begin(), sup.end(), sub.begin(), sub.end())) return false;
  }
  return true;
}

// The opponent strategy sets of player i in r, in player order.
inline std::vector<std::vector<std::size_t>> opponent_sets(const Restriction& r, std::size_t player) {
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t j = 0; j < r.num_players(); ++j) {
    if (j != player) sets.push_back(r.kept(j));
  }
  return sets;
}

// R_{-i} in odometer order.
inline std::vector<Joint> opponent_joints(const Restriction& r, std::size_t player) {
  if (player >= r.num_players()) throw StructuralError("player index out of range");
  const auto sets = opponent_sets(r, player);
  std::vector<Joint> out;
  for_each_joint(std::span<const std::vector<std::size_t>>(sets), [&](const Joint& j) { out.push_back(j); });
  return out;
}

// rows[k][c] = p_i(strategies[k], opponents[c]).
inline std::vector<std::vector<Rational>> payoff_rows(const Game& game, std::size_t player,
                                                      std::span<const std::size_t> strategies,
                                                      std::span<const Joint> opponents) {
  std::vector<std::vector<Rational>> rows;
  rows.reserve(strategies.size());
  for (std::size_t s : strategies) {
    auto& row = rows.emplace_back();
    row.reserve(opponents.size());
    for (const auto& opp : opponents) row.push_back(game.payoff(player, with_strategy(opp, player, s)));
  }
  return rows;
}

// A probability distribution over one player's strategies in the initial
// game, stored densely.
class MixedStrategy {
 public:
  MixedStrategy(std::size_t player, std::vector<Rational> weights)
      : player_(player), weights_(std::move(weights)) {
    Rational total = 0;
    for (const auto& w : weights_) {
      if (w < 0) throw StructuralError("negative probability in mixed strategy");
      total += w;
    }
    if (total != 1) throw StructuralError("mixed strategy weights sum to " + to_string(total) + ", not 1");
  }

  static MixedStrategy pure(std::size_t player, std::size_t num_strategies, std::size_t strategy) {
    std::vector<Rational> w(num_strategies, Rational(0));
    w.at(strategy) = 1;
    return MixedStrategy(player, std::move(w));
  }

  std::size_t player() const { return player_; }
  std::size_t size() const { return weights_.size(); }
  const Rational& weight(std::size_t strategy) const { return weights_.at(strategy); }
  const std::vector<Rational>& weights() const { return weights_; }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < weights_.size(); ++s) {
      if (weights_[s] > 0) out.push_back(s);
    }
    return out;
  }

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  std::size_t player_;
  std::vector<Rational> weights_;
};

// p_i(m, joint_{-i}) for a mixed strategy of player i against an opponent joint.
inline Rational mixed_payoff(const Game& game, const MixedStrategy& m, const Joint& opponents) {
  Rational total = 0;
  for (std::size_t s : m.support()) {
    total += m.weight(s) * game.payoff(m.player(), with_strategy(opponents, m.player(), s));
  }
  return total;
}

enum class BeliefMode { Pure, MixedIndependent, Correlated };

inline std::string to_string(BeliefMode mode) {
  switch (mode) {
    case BeliefMode::Pure: return "pure";
    case BeliefMode::MixedIndependent: return "mixed";
    case BeliefMode::Correlated: return "correlated";
  }
  return "?";
}

struct JointPure {
  Joint opponents;
  friend bool operator==(const JointPure&, const JointPure&) = default;
};

// One mixed strategy per opponent, in player order.
struct MixedProfile {
  std::vector<MixedStrategy> opponents;
  friend bool operator==(const MixedProfile&, const MixedProfile&) = default;
};

// Distribution over opponent joints; zero-probability joints are omitted.
class Correlated {
 public:
  explicit Correlated(std::map<Joint, Rational> weights) {
    Rational total = 0;
    for (auto& [joint, w] : weights) {
      if (w < 0) throw StructuralError("negative probability in correlated belief");
      total += w;
      if (w > 0) weights_.emplace(joint, w);
    }
    if (total != 1) throw StructuralError("correlated belief sums to " + to_string(total) + ", not 1");
  }

  const std::map<Joint, Rational>& weights() const { return weights_; }
  friend bool operator==(const Correlated&, const Correlated&) = default;

 private:
  std::map<Joint, Rational> weights_;
};

using Belief = std::variant<JointPure, MixedProfile, Correlated>;

inline BeliefMode belief_mode(const Belief& b) {
  if (std::holds_alternative<JointPure>(b)) return BeliefMode::Pure;
  if (std::holds_alternative<MixedProfile>(b)) return BeliefMode::MixedIndependent;
  return BeliefMode::Correlated;
}

inline Rational expected_payoff(const Game& game, std::size_t player, std::size_t strategy, const Belief& belief) {
  const std::size_t n = game.num_players();
  if (player >= n) throw StructuralError("player index out of range");
  if (strategy >= game.num_strategies(player)) throw StructuralError("strategy index out of range");

  if (const auto* pure = std::get_if<JointPure>(&belief)) {
    if (pure->opponents.size() != n - 1) throw StructuralError("joint pure belief has wrong arity");
    return game.payoff(player, with_strategy(pure->opponents, player, strategy));
  }
  if (const auto* corr = std::get_if<Correlated>(&belief)) {
    Rational total = 0;
    for (const auto& [opp, w] : corr->weights()) {
      if (opp.size() != n - 1) throw StructuralError("correlated belief has wrong arity");
      total += w * game.payoff(player, with_strategy(opp, player, strategy));
    }
    return total;
  }
  const auto& profile = std::get<MixedProfile>(belief);
  if (profile.opponents.size() != n - 1) throw StructuralError("mixed profile has wrong arity");
  std::vector<std::vector<std::size_t>> supports;
  for (std::size_t k = 0; k < profile.opponents.size(); ++k) {
    const std::size_t opponent = k < player ? k : k + 1;
    const auto& m = profile.opponents[k];
    if (m.player() != opponent || m.size() != game.num_strategies(opponent)) {
      throw StructuralError("mixed profile component does not match opponent " + std::to_string(opponent + 1));
    }
    supports.push_back(m.support());
  }
  Rational total = 0;
  for_each_joint(std::span<const std::vector<std::size_t>>(supports), [&](const Joint& opp) {
    Rational prob = 1;
    for (std::size_t k = 0; k < opp.size(); ++k) prob *= profile.opponents[k].weight(opp[k]);
    total += prob * game.payoff(player, with_strategy(opp, player, strategy));
  });
  return total;
}

}  // namespace domelim
