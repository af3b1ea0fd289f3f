#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "domelim/dominance.hpp"
#include "domelim/error.hpp"
#include "domelim/game.hpp"
#include "domelim/reduction.hpp"

namespace domelim {

// Trace documents use insertion-ordered objects so that output bytes are a
// pure function of the trace.
using Json = nlohmann::ordered_json;

namespace detail {

inline Json labels_json(const Restriction& r) {
  Json players = Json::array();
  for (std::size_t i = 0; i < r.num_players(); ++i) {
    Json names = Json::array();
    for (std::size_t s : r.kept(i)) names.push_back(r.game().labels(i)[s]);
    players.push_back(std::move(names));
  }
  return Json{{"labels", std::move(players)}};
}

inline Json opponent_labels(const Game& game, std::size_t player, const Joint& opponents) {
  Json out = Json::array();
  for (std::size_t k = 0; k < opponents.size(); ++k) {
    const std::size_t j = k < player ? k : k + 1;
    out.push_back(game.labels(j).at(opponents[k]));
  }
  return out;
}

inline std::optional<BeliefMode> relation_mode(const DominanceRelation& rel) {
  if (rel.kind() == DominanceRelation::Kind::Intersection) {
    std::optional<BeliefMode> mode;
    for (const auto& part : rel.parts()) {
      const auto m = relation_mode(part);
      if (m && mode && *m != *mode) {
        throw StructuralError("trace documents carry one belief mode; intersection parts disagree");
      }
      if (m) mode = m;
    }
    return mode;
  }
  if (rel.uses_beliefs()) return rel.mode();
  return std::nullopt;
}

inline std::size_t label_index(const Game& game, std::size_t player, const Json& name) {
  if (!name.is_string()) throw InvalidCertificate("strategy label must be a string");
  const auto index = game.find_label(player, name.get<std::string>());
  if (!index) throw InvalidCertificate("unknown strategy '" + name.get<std::string>() + "'");
  return *index;
}

inline Rational json_rational(const Json& value) {
  if (!value.is_string()) throw InvalidCertificate("rationals must be serialized as strings");
  auto q = parse_rational(value.get<std::string>());
  if (!q) throw InvalidCertificate("malformed rational '" + value.get<std::string>() + "'");
  return *q;
}

inline Joint json_opponents(const Game& game, std::size_t player, const Json& names) {
  if (!names.is_array() || names.size() + 1 != game.num_players()) {
    throw InvalidCertificate("opponent joint has wrong arity");
  }
  Joint out;
  for (std::size_t k = 0; k < names.size(); ++k) {
    const std::size_t j = k < player ? k : k + 1;
    out.push_back(label_index(game, j, names[k]));
  }
  return out;
}

}  // namespace detail

inline Json certificate_to_json(const Restriction& r, std::size_t player, const DominanceCertificate& cert) {
  const Game& game = r.game();
  const auto& names = game.labels(player);
  return std::visit(
      [&](const auto& evidence) -> Json {
        using T = std::decay_t<decltype(evidence)>;
        if constexpr (std::is_same_v<T, PureDominator>) {
          return Json{{"type", "pure-dominator"}, {"dominator", names.at(evidence.dominator)}};
        } else if constexpr (std::is_same_v<T, MixedDominator>) {
          Json weights = Json::object();
          for (std::size_t t : evidence.dominator.support()) weights[names.at(t)] = to_string(evidence.dominator.weight(t));
          return Json{{"type", "mixed-dominator"}, {"weights", std::move(weights)}, {"eps", to_string(evidence.eps)}};
        } else if constexpr (std::is_same_v<T, NeverBest>) {
          Json out{{"type", "never-best"}, {"mode", to_string(evidence.mode)}};
          if (evidence.mode == BeliefMode::Pure) {
            const auto opponents = opponent_joints(r, player);
            Json better = Json::array();
            for (std::size_t c = 0; c < evidence.better.size() && c < opponents.size(); ++c) {
              better.push_back(Json{{"belief", detail::opponent_labels(game, player, opponents[c])},
                                    {"strategy", names.at(evidence.better[c])}});
            }
            out["better"] = std::move(better);
          } else {
            out["program"] = "infeasible";
          }
          return out;
        } else if constexpr (std::is_same_v<T, InherentEvidence>) {
          Json opponents = Json::array();
          for (const auto& opp : evidence.opponents) opponents.push_back(detail::opponent_labels(game, player, opp));
          Json dominators = Json::array();
          for (std::size_t t : evidence.dominators) dominators.push_back(names.at(t));
          return Json{{"type", "inherent"}, {"opponents", std::move(opponents)}, {"dominators", std::move(dominators)}};
        } else {
          Json parts = Json::array();
          for (const auto& part : evidence.parts) parts.push_back(certificate_to_json(r, player, part));
          return Json{{"type", "intersection"}, {"parts", std::move(parts)}};
        }
      },
      cert.evidence);
}

inline DominanceCertificate certificate_from_json(const Restriction& r, std::size_t player, const Json& doc) {
  const Game& game = r.game();
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
    throw InvalidCertificate("certificate needs a string `type`");
  }
  const std::string type = doc["type"].get<std::string>();
  try {
    if (type == "pure-dominator") {
      return DominanceCertificate{PureDominator{detail::label_index(game, player, doc.at("dominator"))}};
    }
    if (type == "mixed-dominator") {
      std::vector<Rational> weights(game.num_strategies(player), Rational(0));
      for (const auto& [name, value] : doc.at("weights").items()) {
        weights[detail::label_index(game, player, Json(name))] = detail::json_rational(value);
      }
      return DominanceCertificate{
          MixedDominator{MixedStrategy(player, std::move(weights)), detail::json_rational(doc.at("eps"))}};
    }
    if (type == "never-best") {
      const auto mode = belief_mode_from_name(doc.at("mode").get<std::string>());
      if (!mode) throw InvalidCertificate("unknown belief mode");
      NeverBest evidence{*mode, {}};
      if (*mode == BeliefMode::Pure) {
        const auto opponents = opponent_joints(r, player);
        const auto& better = doc.at("better");
        if (!better.is_array() || better.size() != opponents.size()) {
          throw InvalidCertificate("never-best evidence must list one strategy per opponent joint");
        }
        for (std::size_t c = 0; c < better.size(); ++c) {
          if (detail::json_opponents(game, player, better[c].at("belief")) != opponents[c]) {
            throw InvalidCertificate("never-best evidence lists beliefs out of order");
          }
          evidence.better.push_back(detail::label_index(game, player, better[c].at("strategy")));
        }
      } else if (doc.at("program") != "infeasible") {
        throw InvalidCertificate("never-best evidence for mixed beliefs must mark the program infeasible");
      }
      return DominanceCertificate{std::move(evidence)};
    }
    if (type == "inherent") {
      InherentEvidence evidence;
      for (const auto& opp : doc.at("opponents")) evidence.opponents.push_back(detail::json_opponents(game, player, opp));
      for (const auto& name : doc.at("dominators")) evidence.dominators.push_back(detail::label_index(game, player, name));
      return DominanceCertificate{std::move(evidence)};
    }
    if (type == "intersection") {
      IntersectionEvidence evidence;
      for (const auto& part : doc.at("parts")) evidence.parts.push_back(certificate_from_json(r, player, part));
      return DominanceCertificate{std::move(evidence)};
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidCertificate(std::string("malformed certificate: ") + e.what());
  } catch (const StructuralError& e) {
    throw InvalidCertificate(std::string("malformed certificate: ") + e.what());
  }
  throw InvalidCertificate("unknown certificate type '" + type + "'");
}

inline Json trace_to_json(const Trace& trace) {
  Json doc;
  doc["relation"] = trace.relation.name();
  if (const auto mode = detail::relation_mode(trace.relation)) doc["belief_mode"] = to_string(*mode);
  doc["initial"] = detail::labels_json(Restriction(trace.game));
  Json steps = Json::array();
  const std::string policy = policy_name(trace.policy);
  for (const auto& step : trace.steps) {
    Json removed = Json::array();
    for (const auto& d : step.removed) {
      removed.push_back(Json{{"player", d.strategy.player + 1},
                             {"strategy", trace.game->labels(d.strategy.player)[d.strategy.index]},
                             {"certificate", certificate_to_json(step.before, d.strategy.player, d.certificate)}});
    }
    steps.push_back(Json{{"removed", std::move(removed)}, {"policy", policy}});
  }
  doc["steps"] = std::move(steps);
  doc["outcome"] = detail::labels_json(trace.outcome);
  return doc;
}

inline std::string trace_document(const Trace& trace) { return trace_to_json(trace).dump(2) + "\n"; }

// Replays a trace document against its game: every step must remove
// strategies whose certificates re-verify in the restriction the step starts
// from, and the replay must end at the recorded outcome. Returns the problems
// found (empty when the document checks out).
inline std::vector<std::string> verify_trace_document(const Json& doc, const GamePtr& game) {
  std::vector<std::string> problems;
  try {
    BeliefMode mode = BeliefMode::Correlated;
    if (doc.contains("belief_mode")) {
      const auto parsed = belief_mode_from_name(doc.at("belief_mode").get<std::string>());
      if (!parsed) return {"unknown belief mode"};
      mode = *parsed;
    }
    const auto rel = relation_from_name(doc.at("relation").get<std::string>(), mode);
    Restriction current(game);
    if (doc.at("initial") != detail::labels_json(current)) problems.push_back("initial labels do not match the game");

    std::size_t index = 0;
    for (const auto& step : doc.at("steps")) {
      ++index;
      std::vector<StrategyRef> removed;
      for (const auto& entry : step.at("removed")) {
        const std::size_t player_number = entry.at("player").get<std::size_t>();
        if (player_number == 0 || player_number > game->num_players()) {
          problems.push_back("step " + std::to_string(index) + ": player out of range");
          continue;
        }
        const std::size_t player = player_number - 1;
        const std::size_t s = detail::label_index(*game, player, entry.at("strategy"));
        const auto cert = certificate_from_json(current, player, entry.at("certificate"));
        if (!verify_certificate(rel, current, {player, s}, cert)) {
          problems.push_back("step " + std::to_string(index) + ": certificate for player " +
                             std::to_string(player_number) + " strategy " + game->labels(player)[s] +
                             " does not verify");
        }
        removed.push_back({player, s});
      }
      if (removed.empty()) {
        problems.push_back("step " + std::to_string(index) + " removes nothing");
        continue;
      }
      current = current.without(removed);
    }
    if (doc.at("outcome") != detail::labels_json(current)) problems.push_back("outcome does not match the replayed steps");
  } catch (const nlohmann::json::exception& e) {
    problems.push_back(std::string("malformed trace document: ") + e.what());
  } catch (const Error& e) {
    problems.push_back(e.what());
  }
  return problems;
}

}  // namespace domelim
