#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "domelim/dominance.hpp"
#include "domelim/error.hpp"
#include "domelim/game.hpp"
#include "domelim/rng.hpp"

namespace domelim {

struct FullSpeed {
  friend bool operator==(const FullSpeed&, const FullSpeed&) = default;
};
struct SingleLex {
  friend bool operator==(const SingleLex&, const SingleLex&) = default;
};
struct SingleRandom {
  std::uint64_t seed = 0;
  friend bool operator==(const SingleRandom&, const SingleRandom&) = default;
};
struct AllSubsets {
  friend bool operator==(const AllSubsets&, const AllSubsets&) = default;
};

using OrderPolicy = std::variant<FullSpeed, SingleLex, SingleRandom, AllSubsets>;

inline std::string policy_name(const OrderPolicy& policy) {
  if (std::holds_alternative<FullSpeed>(policy)) return "fastest";
  if (std::holds_alternative<SingleLex>(policy)) return "single-lex";
  if (std::holds_alternative<SingleRandom>(policy)) return "single-random";
  return "all-subsets";
}

struct ReductionStep {
  Restriction before;
  Restriction after;
  DominatedSet removed;
};

struct Trace {
  DominanceRelation relation;
  OrderPolicy policy;
  GamePtr game;
  std::vector<ReductionStep> steps;
  Restriction outcome;
};

// D_R memoized per restriction; all restrictions must belong to one game.
class DominanceCache {
 public:
  explicit DominanceCache(DominanceRelation relation) : relation_(std::move(relation)) {}

  const DominanceRelation& relation() const { return relation_; }

  const DominatedSet& get(const Restriction& r) {
    auto it = memo_.find(r);
    if (it == memo_.end()) it = memo_.emplace(r, dominated_set(relation_, r)).first;
    return it->second;
  }

  std::size_t size() const { return memo_.size(); }

 private:
  DominanceRelation relation_;
  std::map<Restriction, DominatedSet> memo_;
};

namespace detail {

inline ReductionStep make_step(const Restriction& r, DominatedSet removed) {
  std::vector<StrategyRef> refs;
  refs.reserve(removed.size());
  for (const auto& d : removed) refs.push_back(d.strategy);
  Restriction after = r.without(refs);
  return ReductionStep{r, std::move(after), std::move(removed)};
}

inline constexpr std::size_t kMaxSubsetEnumeration = 20;

inline std::vector<ReductionStep> successors_from(const Restriction& r, const DominatedSet& dominated,
                                                  const OrderPolicy& policy) {
  std::vector<ReductionStep> out;
  if (dominated.empty()) return out;
  if (std::holds_alternative<FullSpeed>(policy)) {
    out.push_back(make_step(r, dominated));
  } else if (std::holds_alternative<SingleLex>(policy)) {
    out.push_back(make_step(r, {dominated.front()}));
  } else if (const auto* random = std::get_if<SingleRandom>(&policy)) {
    std::mt19937_64 rng(random->seed);
    out.push_back(make_step(r, {dominated[uniform_below(rng, dominated.size())]}));
  } else {
    if (dominated.size() > kMaxSubsetEnumeration) {
      throw UnsupportedConfiguration("too many dominated strategies (" + std::to_string(dominated.size()) +
                                     ") to enumerate every removal subset");
    }
    const std::uint64_t subsets = (std::uint64_t{1} << dominated.size()) - 1;
    for (std::uint64_t mask = 1; mask <= subsets; ++mask) {
      DominatedSet chosen;
      for (std::size_t k = 0; k < dominated.size(); ++k) {
        if ((mask >> k) & 1U) chosen.push_back(dominated[k]);
      }
      out.push_back(make_step(r, std::move(chosen)));
    }
  }
  return out;
}

}  // namespace detail

inline std::vector<ReductionStep> successors(const DominanceRelation& rel, const Restriction& r,
                                             const OrderPolicy& policy) {
  return detail::successors_from(r, dominated_set(rel, r), policy);
}

// R with all of D_R removed.
inline Restriction full_speed_reduct(const DominanceRelation& rel, const Restriction& r) {
  const auto dominated = collect_dominated(rel, r);
  std::vector<StrategyRef> refs;
  for (const auto& d : dominated) refs.push_back(d.strategy);
  return r.without(refs);
}

// R →_D R′: R′ ⊊ R and every removed strategy is D-dominated in R.
inline bool is_reduction_step(const DominanceRelation& rel, const Restriction& before, const Restriction& after) {
  if (!restriction_leq(after, before) || after == before) return false;
  for (const auto& s : before.strategies()) {
    if (!after.contains(s) && !is_dominated(rel, before, s)) return false;
  }
  return true;
}

inline Trace normal_form(const DominanceRelation& rel, const GamePtr& game, const OrderPolicy& policy) {
  if (std::holds_alternative<AllSubsets>(policy)) {
    throw StructuralError("normal_form needs a policy that picks a single successor");
  }
  std::optional<std::mt19937_64> rng;
  if (const auto* random = std::get_if<SingleRandom>(&policy)) rng.emplace(random->seed);

  Trace trace{rel, policy, game, {}, Restriction(game)};
  Restriction current(game);
  while (true) {
    OrderPolicy step_policy = policy;
    if (rng) step_policy = SingleRandom{(*rng)()};
    auto next = successors(rel, current, step_policy);
    if (next.empty()) break;
    current = next.front().after;
    trace.steps.push_back(std::move(next.front()));
  }
  trace.outcome = std::move(current);
  return trace;
}

struct OutcomeSet {
  std::vector<Restriction> outcomes;
  std::vector<Restriction> visited;
  bool budget_exceeded = false;
};

inline constexpr std::size_t kDefaultBudget = 100000;

// Every →_D-irreducible restriction reachable from the full game, found by
// exhaustive search over all removal subsets with restrictions memoized.
inline OutcomeSet all_outcomes(const DominanceRelation& rel, const GamePtr& game, std::size_t budget = kDefaultBudget) {
  DominanceCache cache(rel);
  OutcomeSet result;
  std::set<Restriction> seen;
  std::set<Restriction> outcomes;
  std::vector<Restriction> stack;

  Restriction start(game);
  seen.insert(start);
  result.visited.push_back(start);
  stack.push_back(std::move(start));
  while (!stack.empty()) {
    Restriction r = std::move(stack.back());
    stack.pop_back();
    const auto& dominated = cache.get(r);
    if (dominated.empty()) {
      outcomes.insert(r);
      continue;
    }
    for (auto& step : detail::successors_from(r, dominated, AllSubsets{})) {
      if (seen.count(step.after) != 0) continue;
      if (seen.size() >= budget) {
        result.budget_exceeded = true;
        stack.clear();
        break;
      }
      seen.insert(step.after);
      result.visited.push_back(step.after);
      stack.push_back(std::move(step.after));
    }
  }
  result.outcomes.assign(outcomes.begin(), outcomes.end());
  return result;
}

// A strategy that survives the step, was dominated before it, and is not
// dominated after it.
inline std::optional<StrategyRef> check_hereditary_step(const DominanceRelation& rel, const ReductionStep& step) {
  for (const auto& d : collect_dominated(rel, step.before)) {
    if (step.after.contains(d.strategy) && !is_dominated(rel, step.after, d.strategy)) return d.strategy;
  }
  return std::nullopt;
}

// A strategy of `sub` dominated in `r` but not in `sub`. Requires sub ⊆ r.
inline std::optional<StrategyRef> check_monotonic_pair(const DominanceRelation& rel, const Restriction& r,
                                                       const Restriction& sub) {
  if (!restriction_leq(sub, r)) throw StructuralError("monotonicity check needs a sub-restriction");
  for (const auto& s : sub.strategies()) {
    if (is_dominated(rel, r, s) && !is_dominated(rel, sub, s)) return s;
  }
  return std::nullopt;
}

// With R″ the full-speed reduct of step.before, checks R′ = R″ or R′ →_D R″.
// Returns a strategy of R′ \ R″ that is not dominated in R′, if any.
inline std::optional<StrategyRef> check_proof_shape(const DominanceRelation& rel, const ReductionStep& step) {
  const Restriction reduct = full_speed_reduct(rel, step.before);
  if (!restriction_leq(reduct, step.after)) {
    throw StructuralError("step removes a strategy that is not dominated");
  }
  if (reduct == step.after) return std::nullopt;
  for (const auto& s : step.after.strategies()) {
    if (!reduct.contains(s) && !is_dominated(rel, step.after, s)) return s;
  }
  return std::nullopt;
}

}  // namespace domelim
