#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "domelim/best_response.hpp"
#include "domelim/error.hpp"
#include "domelim/game.hpp"

namespace domelim {

inline constexpr std::size_t kDefaultInherentCap = 16;

// A unary dominance relation: a rule assigning to each restriction R the
// set D_R of strategies that are dominated in R.
class DominanceRelation {
 public:
  enum class Kind {
    StrictPure,
    GlobalStrictPure,
    StrictMixed,
    GlobalStrictMixed,
    NeverBestResponse,
    GlobalNeverBestResponse,
    Inherent,
    Intersection,
  };

  static DominanceRelation strict_pure() { return DominanceRelation(Kind::StrictPure); }
  static DominanceRelation global_strict_pure() { return DominanceRelation(Kind::GlobalStrictPure); }
  static DominanceRelation strict_mixed() { return DominanceRelation(Kind::StrictMixed); }
  static DominanceRelation global_strict_mixed() { return DominanceRelation(Kind::GlobalStrictMixed); }
  static DominanceRelation never_best_response(BeliefMode mode) {
    DominanceRelation rel(Kind::NeverBestResponse);
    rel.mode_ = mode;
    return rel;
  }
  static DominanceRelation global_never_best_response(BeliefMode mode) {
    DominanceRelation rel(Kind::GlobalNeverBestResponse);
    rel.mode_ = mode;
    return rel;
  }
  // Subsets of R_{-i} are enumerated exhaustively, so |R_{-i}| is capped.
  static DominanceRelation inherent(std::size_t cap = kDefaultInherentCap) {
    if (cap > 30) throw StructuralError("inherent dominance cap above 30 opponent joints");
    DominanceRelation rel(Kind::Inherent);
    rel.cap_ = cap;
    return rel;
  }
  static DominanceRelation intersection(std::vector<DominanceRelation> parts) {
    if (parts.empty()) throw StructuralError("intersection of no relations");
    DominanceRelation rel(Kind::Intersection);
    rel.parts_ = std::move(parts);
    return rel;
  }

  Kind kind() const { return kind_; }
  BeliefMode mode() const { return mode_; }
  std::size_t inherent_cap() const { return cap_; }
  const std::vector<DominanceRelation>& parts() const { return parts_; }

  bool is_global() const {
    return kind_ == Kind::GlobalStrictPure || kind_ == Kind::GlobalStrictMixed ||
           kind_ == Kind::GlobalNeverBestResponse;
  }
  bool uses_beliefs() const {
    if (kind_ == Kind::Intersection) {
      for (const auto& p : parts_) {
        if (p.uses_beliefs()) return true;
      }
      return false;
    }
    return kind_ == Kind::NeverBestResponse || kind_ == Kind::GlobalNeverBestResponse;
  }

  // Command-line name; intersections are comma-joined.
  std::string name() const {
    switch (kind_) {
      case Kind::StrictPure: return "strict-pure";
      case Kind::GlobalStrictPure: return "global-strict-pure";
      case Kind::StrictMixed: return "strict-mixed";
      case Kind::GlobalStrictMixed: return "global-strict-mixed";
      case Kind::NeverBestResponse: return "nbr";
      case Kind::GlobalNeverBestResponse: return "global-nbr";
      case Kind::Inherent: return "inherent";
      case Kind::Intersection: {
        std::string out;
        for (const auto& p : parts_) {
          if (!out.empty()) out += ',';
          out += p.name();
        }
        return out;
      }
    }
    return "?";
  }

  // Human-readable, with belief modes spelled out.
  std::string describe() const {
    if (kind_ == Kind::Intersection) {
      std::string out;
      for (const auto& p : parts_) {
        if (!out.empty()) out += " & ";
        out += p.describe();
      }
      return out;
    }
    if (uses_beliefs()) return name() + "/" + to_string(mode_);
    return name();
  }

  friend bool operator==(const DominanceRelation&, const DominanceRelation&) = default;

 private:
  explicit DominanceRelation(Kind kind) : kind_(kind) {}

  Kind kind_;
  BeliefMode mode_ = BeliefMode::Correlated;
  std::size_t cap_ = kDefaultInherentCap;
  std::vector<DominanceRelation> parts_;
};

// Parses a relation name ("strict-pure", "nbr", "strict-pure,inherent", ...).
// `mode` applies to every never-best-response component.
inline DominanceRelation relation_from_name(std::string_view name, BeliefMode mode = BeliefMode::Correlated) {
  std::vector<DominanceRelation> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = name.find(',', begin);
    const std::string_view token = name.substr(begin, end == std::string_view::npos ? std::string_view::npos : end - begin);
    if (token == "strict-pure") {
      parts.push_back(DominanceRelation::strict_pure());
    } else if (token == "global-strict-pure") {
      parts.push_back(DominanceRelation::global_strict_pure());
    } else if (token == "strict-mixed") {
      parts.push_back(DominanceRelation::strict_mixed());
    } else if (token == "global-strict-mixed") {
      parts.push_back(DominanceRelation::global_strict_mixed());
    } else if (token == "nbr") {
      parts.push_back(DominanceRelation::never_best_response(mode));
    } else if (token == "global-nbr") {
      parts.push_back(DominanceRelation::global_never_best_response(mode));
    } else if (token == "inherent") {
      parts.push_back(DominanceRelation::inherent());
    } else {
      throw StructuralError("unknown dominance relation '" + std::string(token) + "'");
    }
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  if (parts.size() == 1) return parts.front();
  return DominanceRelation::intersection(std::move(parts));
}

inline std::optional<BeliefMode> belief_mode_from_name(std::string_view name) {
  if (name == "pure") return BeliefMode::Pure;
  if (name == "mixed") return BeliefMode::MixedIndependent;
  if (name == "correlated") return BeliefMode::Correlated;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Certificates

struct PureDominator {
  std::size_t dominator = 0;
  friend bool operator==(const PureDominator&, const PureDominator&) = default;
};

struct MixedDominator {
  MixedStrategy dominator;
  Rational eps;
  friend bool operator==(const MixedDominator&, const MixedDominator&) = default;
};

// For pure beliefs, better[c] is a strategy doing strictly better than the
// dominated one against the c-th opponent joint of R_{-i} (odometer order).
// For mixed and correlated beliefs `better` is empty: the best-response
// feasibility program was infeasible.
struct NeverBest {
  BeliefMode mode = BeliefMode::Pure;
  std::vector<std::size_t> better;
  friend bool operator==(const NeverBest&, const NeverBest&) = default;
};

// dominators[mask - 1] weakly dominates on the subset {opponents[c] : bit c of mask}.
struct InherentEvidence {
  std::vector<Joint> opponents;
  std::vector<std::size_t> dominators;
  friend bool operator==(const InherentEvidence&, const InherentEvidence&) = default;
};

struct DominanceCertificate;

struct IntersectionEvidence {
  std::vector<DominanceCertificate> parts;
  friend bool operator==(const IntersectionEvidence&, const IntersectionEvidence&);
};

struct DominanceCertificate {
  std::variant<PureDominator, MixedDominator, NeverBest, InherentEvidence, IntersectionEvidence> evidence;
  friend bool operator==(const DominanceCertificate&, const DominanceCertificate&) = default;
};

inline bool operator==(const IntersectionEvidence& a, const IntersectionEvidence& b) { return a.parts == b.parts; }

struct DominatedStrategy {
  StrategyRef strategy;
  DominanceCertificate certificate;
};

using DominatedSet = std::vector<DominatedStrategy>;

// ---------------------------------------------------------------------------
// Pairwise checks

namespace detail {

inline void require_in_restriction(const Restriction& r, std::size_t player, std::size_t strategy) {
  if (player >= r.num_players()) throw StructuralError("player index out of range");
  if (!r.contains(player, strategy)) throw StructuralError("strategy is not in the restriction");
}

inline std::vector<std::size_t> all_strategies(const Game& game, std::size_t player) {
  std::vector<std::size_t> out(game.num_strategies(player));
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = s;
  return out;
}

inline std::vector<std::size_t> all_but(std::span<const std::size_t> set, std::size_t strategy) {
  std::vector<std::size_t> out;
  for (std::size_t t : set) {
    if (t != strategy) out.push_back(t);
  }
  return out;
}

}  // namespace detail

// p_i(dominator, ·) > p_i(strategy, ·) on all of R_{-i}.
inline bool strictly_dominates_pure(const Restriction& r, std::size_t player, std::size_t dominator, std::size_t strategy) {
  detail::require_in_restriction(r, player, strategy);
  const Game& game = r.game();
  if (dominator >= game.num_strategies(player)) throw StructuralError("dominator index out of range");
  for (const auto& opp : opponent_joints(r, player)) {
    if (!(game.payoff(player, with_strategy(opp, player, dominator)) >
          game.payoff(player, with_strategy(opp, player, strategy)))) {
      return false;
    }
  }
  return true;
}

// ≥ on every joint of `opponents`, > on at least one.
inline bool weakly_dominates_pure(const Restriction& r, std::size_t player, std::size_t dominator, std::size_t strategy,
                                  std::span<const Joint> opponents) {
  detail::require_in_restriction(r, player, strategy);
  detail::require_in_restriction(r, player, dominator);
  if (opponents.empty()) throw StructuralError("weak dominance over an empty opponent set");
  const Game& game = r.game();
  bool strict = false;
  for (const auto& opp : opponents) {
    if (opp.size() + 1 != r.num_players()) throw StructuralError("opponent joint has wrong arity");
    for (std::size_t k = 0; k < opp.size(); ++k) {
      const std::size_t j = k < player ? k : k + 1;
      if (!r.contains(j, opp[k])) throw StructuralError("opponent joint outside the restriction");
    }
    const Rational& better = game.payoff(player, with_strategy(opp, player, dominator));
    const Rational& worse = game.payoff(player, with_strategy(opp, player, strategy));
    if (better < worse) return false;
    if (better > worse) strict = true;
  }
  return strict;
}

inline std::vector<Joint> subset_of(const std::vector<Joint>& joints, std::uint64_t mask) {
  std::vector<Joint> out;
  for (std::size_t c = 0; c < joints.size(); ++c) {
    if ((mask >> c) & 1U) out.push_back(joints[c]);
  }
  return out;
}

// Weakly dominated by some strategy of R_i on every nonempty subset of R_{-i}.
// Returns the per-subset dominators, or nullopt.
inline std::optional<InherentEvidence> is_inherently_dominated(const Restriction& r, std::size_t player,
                                                               std::size_t strategy,
                                                               std::size_t cap = kDefaultInherentCap) {
  detail::require_in_restriction(r, player, strategy);
  const Game& game = r.game();
  auto opponents = opponent_joints(r, player);
  const std::size_t m = opponents.size();
  if (m > cap) {
    throw UnsupportedConfiguration("inherent dominance over " + std::to_string(m) +
                                   " opponent joints exceeds the cap of " + std::to_string(cap));
  }

  struct Rival {
    std::size_t strategy;
    std::uint64_t better = 0;
    std::uint64_t worse = 0;
  };
  std::vector<Rival> rivals;
  for (std::size_t t : r.kept(player)) {
    if (t == strategy) continue;
    Rival rival{t};
    for (std::size_t c = 0; c < m; ++c) {
      const Rational& a = game.payoff(player, with_strategy(opponents[c], player, t));
      const Rational& b = game.payoff(player, with_strategy(opponents[c], player, strategy));
      if (a > b) rival.better |= std::uint64_t{1} << c;
      if (a < b) rival.worse |= std::uint64_t{1} << c;
    }
    rivals.push_back(rival);
  }
  if (rivals.empty()) return std::nullopt;

  const std::uint64_t subsets = (std::uint64_t{1} << m) - 1;
  InherentEvidence evidence;
  evidence.dominators.reserve(subsets);
  for (std::uint64_t mask = 1; mask <= subsets; ++mask) {
    const Rival* found = nullptr;
    for (const auto& rival : rivals) {
      if ((mask & rival.worse) == 0 && (mask & rival.better) != 0) {
        found = &rival;
        break;
      }
    }
    if (found == nullptr) return std::nullopt;
    evidence.dominators.push_back(found->strategy);
  }
  evidence.opponents = std::move(opponents);
  return evidence;
}

// ---------------------------------------------------------------------------
// Membership

namespace detail {

inline std::optional<DominanceCertificate> pure_dominator(const Restriction& r, std::size_t player, std::size_t strategy,
                                                          std::span<const std::size_t> candidates) {
  for (std::size_t t : candidates) {
    if (t != strategy && strictly_dominates_pure(r, player, t, strategy)) {
      return DominanceCertificate{PureDominator{t}};
    }
  }
  return std::nullopt;
}

inline std::optional<DominanceCertificate> mixed_dominator(const Restriction& r, std::size_t player, std::size_t strategy,
                                                           std::span<const std::size_t> candidates) {
  const auto pool = all_but(candidates, strategy);
  if (pool.empty()) return std::nullopt;
  auto advantage = max_min_advantage(r, player, strategy, pool);
  if (advantage.eps <= 0) return std::nullopt;
  return DominanceCertificate{MixedDominator{std::move(advantage.mix), std::move(advantage.eps)}};
}

inline std::optional<DominanceCertificate> never_best(const Restriction& r, std::size_t player, std::size_t strategy,
                                                      BeliefMode mode, std::span<const std::size_t> comparison) {
  if (best_response_witness(r, player, strategy, mode, comparison)) return std::nullopt;
  NeverBest evidence{mode, {}};
  if (mode == BeliefMode::Pure) {
    const Game& game = r.game();
    for (const auto& opp : opponent_joints(r, player)) {
      const Rational& own = game.payoff(player, with_strategy(opp, player, strategy));
      for (std::size_t t : comparison) {
        if (game.payoff(player, with_strategy(opp, player, t)) > own) {
          evidence.better.push_back(t);
          break;
        }
      }
    }
  }
  return DominanceCertificate{std::move(evidence)};
}

}  // namespace detail

// Decides whether `s` is rel-dominated in r; the certificate explains why.
inline std::optional<DominanceCertificate> certify(const DominanceRelation& rel, const Restriction& r, StrategyRef s) {
  detail::require_in_restriction(r, s.player, s.index);
  using Kind = DominanceRelation::Kind;
  const Game& game = r.game();
  switch (rel.kind()) {
    case Kind::StrictPure:
      return detail::pure_dominator(r, s.player, s.index, r.kept(s.player));
    case Kind::GlobalStrictPure:
      return detail::pure_dominator(r, s.player, s.index, detail::all_strategies(game, s.player));
    case Kind::StrictMixed:
      return detail::mixed_dominator(r, s.player, s.index, r.kept(s.player));
    case Kind::GlobalStrictMixed:
      return detail::mixed_dominator(r, s.player, s.index, detail::all_strategies(game, s.player));
    case Kind::NeverBestResponse:
      return detail::never_best(r, s.player, s.index, rel.mode(), r.kept(s.player));
    case Kind::GlobalNeverBestResponse:
      return detail::never_best(r, s.player, s.index, rel.mode(), detail::all_strategies(game, s.player));
    case Kind::Inherent: {
      auto evidence = is_inherently_dominated(r, s.player, s.index, rel.inherent_cap());
      if (!evidence) return std::nullopt;
      return DominanceCertificate{std::move(*evidence)};
    }
    case Kind::Intersection: {
      IntersectionEvidence evidence;
      for (const auto& part : rel.parts()) {
        auto cert = certify(part, r, s);
        if (!cert) return std::nullopt;
        evidence.parts.push_back(std::move(*cert));
      }
      return DominanceCertificate{std::move(evidence)};
    }
  }
  return std::nullopt;
}

inline bool is_dominated(const DominanceRelation& rel, const Restriction& r, StrategyRef s) {
  return certify(rel, r, s).has_value();
}

// D_R without the nonemptiness check, in canonical (player, index) order.
inline DominatedSet collect_dominated(const DominanceRelation& rel, const Restriction& r) {
  DominatedSet out;
  for (const auto& s : r.strategies()) {
    if (auto cert = certify(rel, r, s)) out.push_back({s, std::move(*cert)});
  }
  return out;
}

// D_R, after checking that every player keeps an undominated strategy.
inline DominatedSet dominated_set(const DominanceRelation& rel, const Restriction& r) {
  auto out = collect_dominated(rel, r);
  std::vector<std::size_t> per_player(r.num_players(), 0);
  for (const auto& d : out) ++per_player[d.strategy.player];
  for (std::size_t i = 0; i < r.num_players(); ++i) {
    if (per_player[i] == r.kept(i).size()) {
      throw AssumptionViolated(rel.describe() + " dominates every strategy of player " + std::to_string(i + 1));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Certificate re-verification by substitution into the definitions.

inline bool verify_certificate(const DominanceRelation& rel, const Restriction& r, StrategyRef s,
                               const DominanceCertificate& cert) {
  if (s.player >= r.num_players() || !r.contains(s)) return false;
  using Kind = DominanceRelation::Kind;
  const Game& game = r.game();
  const std::size_t i = s.player;
  const auto in_pool = [&](std::size_t t) {
    if (t >= game.num_strategies(i)) return false;
    return rel.is_global() || r.contains(i, t);
  };

  switch (rel.kind()) {
    case Kind::StrictPure:
    case Kind::GlobalStrictPure: {
      const auto* pure = std::get_if<PureDominator>(&cert.evidence);
      return pure != nullptr && in_pool(pure->dominator) && strictly_dominates_pure(r, i, pure->dominator, s.index);
    }
    case Kind::StrictMixed:
    case Kind::GlobalStrictMixed: {
      const auto* mixed = std::get_if<MixedDominator>(&cert.evidence);
      if (mixed == nullptr || mixed->dominator.player() != i || mixed->dominator.size() != game.num_strategies(i)) {
        return false;
      }
      if (!(mixed->eps > 0)) return false;
      for (std::size_t t : mixed->dominator.support()) {
        if (t == s.index || !in_pool(t)) return false;
      }
      for (const auto& opp : opponent_joints(r, i)) {
        const Rational gap = mixed_payoff(game, mixed->dominator, opp) - game.payoff(i, with_strategy(opp, i, s.index));
        if (gap < mixed->eps) return false;
      }
      return true;
    }
    case Kind::NeverBestResponse:
    case Kind::GlobalNeverBestResponse: {
      const auto* nb = std::get_if<NeverBest>(&cert.evidence);
      if (nb == nullptr || nb->mode != rel.mode()) return false;
      if (nb->mode != BeliefMode::Pure) {
        const auto comparison = rel.is_global() ? detail::all_strategies(game, i) : r.kept(i);
        return nb->better.empty() && !best_response_witness(r, i, s.index, nb->mode, comparison).has_value();
      }
      const auto opponents = opponent_joints(r, i);
      if (nb->better.size() != opponents.size()) return false;
      for (std::size_t c = 0; c < opponents.size(); ++c) {
        const std::size_t t = nb->better[c];
        if (!in_pool(t)) return false;
        if (!(game.payoff(i, with_strategy(opponents[c], i, t)) > game.payoff(i, with_strategy(opponents[c], i, s.index)))) {
          return false;
        }
      }
      return true;
    }
    case Kind::Inherent: {
      const auto* inh = std::get_if<InherentEvidence>(&cert.evidence);
      if (inh == nullptr || inh->opponents != opponent_joints(r, i)) return false;
      const std::size_t m = inh->opponents.size();
      if (m > 30 || inh->dominators.size() != (std::size_t{1} << m) - 1) return false;
      for (std::uint64_t mask = 1; mask <= inh->dominators.size(); ++mask) {
        const std::size_t t = inh->dominators[mask - 1];
        if (!in_pool(t)) return false;
        if (!weakly_dominates_pure(r, i, t, s.index, subset_of(inh->opponents, mask))) return false;
      }
      return true;
    }
    case Kind::Intersection: {
      const auto* inter = std::get_if<IntersectionEvidence>(&cert.evidence);
      if (inter == nullptr || inter->parts.size() != rel.parts().size()) return false;
      for (std::size_t k = 0; k < inter->parts.size(); ++k) {
        if (!verify_certificate(rel.parts()[k], r, s, inter->parts[k])) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace domelim
