#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "domelim/game.hpp"
#include "domelim/reduction.hpp"
#include "domelim/rng.hpp"

namespace domelim {

// Integer payoffs uniform in [low, high]; player i's labels are "s<i>_<k>".
inline Game random_game(std::mt19937_64& rng, const std::vector<std::size_t>& sizes, long low = -3, long high = 3) {
  std::vector<std::vector<std::string>> labels(sizes.size());
  std::size_t joints = 1;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    for (std::size_t k = 0; k < sizes[i]; ++k) {
      labels[i].push_back("s" + std::to_string(i + 1) + "_" + std::to_string(k + 1));
    }
    joints *= sizes[i];
  }
  const auto span = static_cast<std::uint64_t>(high - low + 1);
  std::vector<Rational> payoffs;
  payoffs.reserve(joints * sizes.size());
  for (std::size_t k = 0; k < joints * sizes.size(); ++k) {
    payoffs.emplace_back(low + static_cast<long>(uniform_below(rng, span)));
  }
  return Game(std::move(labels), std::move(payoffs));
}

// Seeded suite: `two_player` games with 2..4 strategies per player, then
// `three_player` 3×3×3 games.
inline std::vector<GamePtr> random_suite(std::uint64_t seed, std::size_t two_player, std::size_t three_player) {
  std::mt19937_64 rng(seed);
  std::vector<GamePtr> games;
  for (std::size_t k = 0; k < two_player; ++k) {
    const std::size_t rows = 2 + uniform_below(rng, 3);
    const std::size_t cols = 2 + uniform_below(rng, 3);
    games.push_back(std::make_shared<const Game>(random_game(rng, {rows, cols})));
  }
  for (std::size_t k = 0; k < three_player; ++k) {
    games.push_back(std::make_shared<const Game>(random_game(rng, {3, 3, 3})));
  }
  return games;
}

// Uniformly random nonempty subset of `set` (as a sorted vector).
inline std::vector<std::size_t> random_nonempty_subset(std::mt19937_64& rng, const std::vector<std::size_t>& set) {
  while (true) {
    std::vector<std::size_t> out;
    for (std::size_t s : set) {
      if (uniform_below(rng, 2) == 1) out.push_back(s);
    }
    if (!out.empty()) return out;
  }
}

inline Restriction random_restriction(std::mt19937_64& rng, const GamePtr& game) {
  Restriction full(game);
  std::vector<std::vector<std::size_t>> kept;
  for (std::size_t i = 0; i < full.num_players(); ++i) kept.push_back(random_nonempty_subset(rng, full.kept(i)));
  return Restriction(game, std::move(kept));
}

inline Restriction random_subrestriction(std::mt19937_64& rng, const Restriction& r) {
  std::vector<std::vector<std::size_t>> kept;
  for (std::size_t i = 0; i < r.num_players(); ++i) kept.push_back(random_nonempty_subset(rng, r.kept(i)));
  return Restriction(r.game_ptr(), std::move(kept));
}

// A maximal →_D path from the full game, removing a uniformly random
// nonempty subset of D_R at each stage.
inline std::vector<ReductionStep> random_walk(std::mt19937_64& rng, const DominanceRelation& rel, const GamePtr& game) {
  std::vector<ReductionStep> steps;
  Restriction current(game);
  while (true) {
    auto dominated = dominated_set(rel, current);
    if (dominated.empty()) break;
    DominatedSet chosen;
    while (chosen.empty()) {
      for (const auto& d : dominated) {
        if (uniform_below(rng, 2) == 1) chosen.push_back(d);
      }
    }
    std::vector<StrategyRef> refs;
    for (const auto& d : chosen) refs.push_back(d.strategy);
    Restriction after = current.without(refs);
    steps.push_back(ReductionStep{current, after, std::move(chosen)});
    current = std::move(after);
  }
  return steps;
}

}  // namespace domelim
