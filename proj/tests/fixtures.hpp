#pragma once

#include <memory>
#include <string>
#include <vector>

#include "domelim/game.hpp"

namespace domelim::testing {

inline GamePtr make_game(std::vector<std::vector<std::string>> labels, const std::vector<long>& payoffs) {
  std::vector<Rational> values;
  for (long v : payoffs) values.emplace_back(v);
  return std::make_shared<const Game>(std::move(labels), std::move(values));
}

// (C,C)=(2,2) (C,D)=(0,3) (D,C)=(3,0) (D,D)=(1,1)
inline GamePtr g_pd() { return make_game({{"C", "D"}, {"C", "D"}}, {2, 2, 0, 3, 3, 0, 1, 1}); }

// Row payoffs U=(3,0) M=(1,1) D=(0,3); column payoffs 0.
inline GamePtr g_mix() {
  return make_game({{"U", "M", "D"}, {"L", "R"}}, {3, 0, 0, 0, 1, 0, 1, 0, 0, 0, 3, 0});
}

// Row payoffs U=(3,0) M=(2,2) D=(0,3); column payoffs 0.
inline GamePtr g_belief() {
  return make_game({{"U", "M", "D"}, {"L", "R"}}, {3, 0, 0, 0, 2, 0, 2, 0, 0, 0, 3, 0});
}

inline GamePtr g_one() { return make_game({{"A"}, {"X"}}, {0, 0}); }

// Restriction by labels.
inline Restriction restrict(const GamePtr& game, const std::vector<std::vector<std::string>>& labels) {
  std::vector<std::vector<std::size_t>> kept(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (const auto& name : labels[i]) kept[i].push_back(*game->find_label(i, name));
  }
  return Restriction(game, std::move(kept));
}

inline std::size_t idx(const GamePtr& game, std::size_t player, const std::string& label) {
  return *game->find_label(player, label);
}

}  // namespace domelim::testing
