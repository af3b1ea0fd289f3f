#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "domelim/error.hpp"
#include "domelim/game.hpp"
#include "domelim/lp.hpp"

namespace domelim {

struct Advantage {
  Rational eps;
  MixedStrategy mix;
};

// max over m ∈ Δ(pool) of min over s_{-i} ∈ R_{-i} of p_i(m, s_{-i}) − p_i(s, s_{-i}).
// s is strictly dominated by a mixture of `pool` iff the returned eps > 0.
inline Advantage max_min_advantage(const Restriction& r, std::size_t player, std::size_t strategy,
                                   std::span<const std::size_t> pool) {
  const Game& game = r.game();
  if (player >= r.num_players()) throw StructuralError("player index out of range");
  if (!r.contains(player, strategy)) throw StructuralError("strategy is not in the restriction");
  if (pool.empty()) throw StructuralError("empty dominator pool");
  for (std::size_t t : pool) {
    if (t >= game.num_strategies(player)) throw StructuralError("pool strategy out of range");
  }

  const auto opponents = opponent_joints(r, player);
  const std::size_t s_only[] = {strategy};
  const auto base = payoff_rows(game, player, s_only, opponents).front();
  const auto rows = payoff_rows(game, player, pool, opponents);

  // Variables: one weight per pool strategy, then eps (free).
  const std::size_t k = pool.size();
  LinearProgram lp;
  lp.objective.assign(k + 1, Rational(0));
  lp.objective[k] = 1;
  lp.nonnegative.assign(k + 1, true);
  lp.nonnegative[k] = false;
  for (std::size_t c = 0; c < opponents.size(); ++c) {
    Constraint row;
    row.coefficients.resize(k + 1);
    for (std::size_t t = 0; t < k; ++t) row.coefficients[t] = rows[t][c] - base[c];
    row.coefficients[k] = -1;
    row.comparator = Comparator::GreaterEqual;
    row.rhs = 0;
    lp.constraints.push_back(std::move(row));
  }
  Constraint simplex;
  simplex.coefficients.assign(k + 1, Rational(1));
  simplex.coefficients[k] = 0;
  simplex.comparator = Comparator::Equal;
  simplex.rhs = 1;
  lp.constraints.push_back(std::move(simplex));

  const auto outcome = solve(lp);
  const auto* optimal = std::get_if<Optimal>(&outcome);
  if (optimal == nullptr) throw Error("max-min advantage program is always feasible and bounded");

  std::vector<Rational> weights(game.num_strategies(player), Rational(0));
  for (std::size_t t = 0; t < k; ++t) weights[pool[t]] += optimal->solution[t];
  return Advantage{optimal->value, MixedStrategy(player, std::move(weights))};
}

namespace detail {

inline void require_supported(const Restriction& r, BeliefMode mode) {
  if (mode == BeliefMode::MixedIndependent && r.num_players() > 2) {
    throw UnsupportedConfiguration(
        "best responses to independent mixed beliefs are only decided for two-player games");
  }
}

}  // namespace detail

// A belief in B_i(r) against which `strategy` does at least as well as every
// strategy of `comparison`, or nullopt if there is none (i.e. `strategy` is a
// never best response relative to `comparison`).
inline std::optional<Belief> best_response_witness(const Restriction& r, std::size_t player, std::size_t strategy,
                                                   BeliefMode mode, std::span<const std::size_t> comparison) {
  const Game& game = r.game();
  if (player >= r.num_players()) throw StructuralError("player index out of range");
  if (!r.contains(player, strategy)) throw StructuralError("strategy is not in the restriction");
  detail::require_supported(r, mode);

  const auto opponents = opponent_joints(r, player);
  const std::size_t s_only[] = {strategy};
  const auto base = payoff_rows(game, player, s_only, opponents).front();
  const auto rows = payoff_rows(game, player, comparison, opponents);

  if (mode == BeliefMode::Pure) {
    for (std::size_t c = 0; c < opponents.size(); ++c) {
      bool best = true;
      for (const auto& row : rows) {
        if (row[c] > base[c]) {
          best = false;
          break;
        }
      }
      if (best) return JointPure{opponents[c]};
    }
    return std::nullopt;
  }

  // Feasibility: μ ≥ 0, Σμ = 1, Σ_c μ_c (p(s, c) − p(s', c)) ≥ 0 for all s'.
  const std::size_t m = opponents.size();
  LinearProgram lp;
  lp.objective.assign(m, Rational(0));
  lp.nonnegative.assign(m, true);
  for (std::size_t t = 0; t < comparison.size(); ++t) {
    if (comparison[t] == strategy) continue;
    Constraint row;
    row.coefficients.resize(m);
    for (std::size_t c = 0; c < m; ++c) row.coefficients[c] = base[c] - rows[t][c];
    row.comparator = Comparator::GreaterEqual;
    row.rhs = 0;
    lp.constraints.push_back(std::move(row));
  }
  Constraint total;
  total.coefficients.assign(m, Rational(1));
  total.comparator = Comparator::Equal;
  total.rhs = 1;
  lp.constraints.push_back(std::move(total));

  const auto outcome = solve(lp);
  const auto* optimal = std::get_if<Optimal>(&outcome);
  if (optimal == nullptr) return std::nullopt;

  if (mode == BeliefMode::MixedIndependent) {
    const std::size_t opponent = player == 0 ? 1 : 0;
    std::vector<Rational> weights(game.num_strategies(opponent), Rational(0));
    for (std::size_t c = 0; c < m; ++c) weights[opponents[c][0]] = optimal->solution[c];
    return MixedProfile{{MixedStrategy(opponent, std::move(weights))}};
  }
  std::map<Joint, Rational> mass;
  for (std::size_t c = 0; c < m; ++c) mass.emplace(opponents[c], optimal->solution[c]);
  return Correlated(std::move(mass));
}

// Best-response check against the strategies of the restriction itself.
inline std::optional<Belief> best_response_feasible(const Restriction& r, std::size_t player, std::size_t strategy,
                                                    BeliefMode mode) {
  return best_response_witness(r, player, strategy, mode, r.kept(player));
}

}  // namespace domelim
