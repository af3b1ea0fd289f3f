#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "domelim/error.hpp"
#include "domelim/game.hpp"

namespace domelim {

struct Renormalized {
  Rational alpha;
  MixedStrategy rest;
};

// Splits m = (1 − α)·δ_s + α·n with s ∉ support(n).
inline Renormalized renormalize_without(const MixedStrategy& m, std::size_t strategy) {
  if (strategy >= m.size()) throw StructuralError("strategy index out of range");
  const Rational alpha = 1 - m.weight(strategy);
  if (alpha == 0) throw DegenerateDominator("mixed strategy is the pure strategy it would have to dominate");
  std::vector<Rational> weights(m.size(), Rational(0));
  for (std::size_t t = 0; t < m.size(); ++t) {
    if (t != strategy) weights[t] = m.weight(t) / alpha;
  }
  return Renormalized{alpha, MixedStrategy(m.player(), std::move(weights))};
}

// m[s/replacement]: the mass m puts on s is redistributed according to
// `replacement`.
inline MixedStrategy substitute(const MixedStrategy& m, std::size_t strategy, const MixedStrategy& replacement) {
  if (m.player() != replacement.player() || m.size() != replacement.size()) {
    throw StructuralError("substituting a mixed strategy of a different player");
  }
  if (strategy >= m.size()) throw StructuralError("strategy index out of range");
  const Rational mass = m.weight(strategy);
  std::vector<Rational> weights(m.size(), Rational(0));
  for (std::size_t t = 0; t < m.size(); ++t) {
    weights[t] = (t == strategy ? Rational(0) : m.weight(t)) + mass * replacement.weight(t);
  }
  return MixedStrategy(m.player(), std::move(weights));
}

// min over R_{-i} of p_i(m, ·) − p_i(s, ·); positive iff m strictly dominates s in r.
inline Rational min_advantage(const Restriction& r, const MixedStrategy& m, std::size_t strategy) {
  const Game& game = r.game();
  const std::size_t i = m.player();
  bool first = true;
  Rational worst = 0;
  for (const auto& opp : opponent_joints(r, i)) {
    Rational gap = mixed_payoff(game, m, opp) - game.payoff(i, with_strategy(opp, i, strategy));
    if (first || gap < worst) {
      worst = std::move(gap);
      first = false;
    }
  }
  return worst;
}

inline bool strictly_dominates_mixed(const Restriction& r, const MixedStrategy& m, std::size_t strategy) {
  return min_advantage(r, m, strategy) > 0;
}

struct Elimination {
  std::size_t strategy;
  MixedStrategy dominator;
};

// Given the strategies t^1..t^k that player i loses in a strict-mixed step
// r → reduced, each with a mixed dominator in r, rewrites a mixed dominator m
// of `strategy` in r into one whose support survives the step:
//   n^1 = m^1 without t^1,  n^{j+1} = m^{j+1}[t^1/n^1]...[t^j/n^j] without t^{j+1},
//   m'  = m[t^1/n^1]...[t^k/n^k].
inline MixedStrategy persist_dominator(const Restriction& r, const Restriction& reduced,
                                       const std::vector<Elimination>& eliminated, std::size_t player,
                                       std::size_t strategy, const MixedStrategy& m) {
  if (!restriction_leq(reduced, r)) throw StructuralError("reduced restriction is not contained in the original");
  if (player >= r.num_players() || !r.contains(player, strategy)) {
    throw StructuralError("strategy is not in the restriction");
  }
  const auto in_r = [&](const MixedStrategy& mix) {
    if (mix.player() != player || mix.size() != r.game().num_strategies(player)) return false;
    for (std::size_t t : mix.support()) {
      if (!r.contains(player, t)) return false;
    }
    return true;
  };

  std::vector<std::size_t> removed;
  for (std::size_t t : r.kept(player)) {
    if (!reduced.contains(player, t)) removed.push_back(t);
  }
  std::vector<std::size_t> listed;
  for (const auto& e : eliminated) listed.push_back(e.strategy);
  std::sort(listed.begin(), listed.end());
  if (listed != removed) {
    throw InvalidCertificate("eliminated strategies do not match the strategies removed for the player");
  }
  for (const auto& e : eliminated) {
    if (!in_r(e.dominator) || !strictly_dominates_mixed(r, e.dominator, e.strategy)) {
      throw InvalidCertificate("eliminated strategy lacks a valid mixed dominator in the restriction");
    }
  }
  if (!in_r(m) || !strictly_dominates_mixed(r, m, strategy)) {
    throw InvalidCertificate("given mixed strategy does not strictly dominate the strategy");
  }

  std::vector<MixedStrategy> clean;
  clean.reserve(eliminated.size());
  for (const auto& e : eliminated) {
    MixedStrategy current = e.dominator;
    for (std::size_t j = 0; j < clean.size(); ++j) current = substitute(current, eliminated[j].strategy, clean[j]);
    clean.push_back(renormalize_without(current, e.strategy).rest);
  }

  MixedStrategy result = m;
  for (std::size_t j = 0; j < clean.size(); ++j) result = substitute(result, eliminated[j].strategy, clean[j]);

  for (std::size_t t : result.support()) {
    if (!reduced.contains(player, t)) throw InvalidCertificate("rewritten dominator still uses an eliminated strategy");
  }
  if (!strictly_dominates_mixed(r, result, strategy)) {
    throw InvalidCertificate("rewritten dominator no longer strictly dominates");
  }
  return result;
}

}  // namespace domelim
