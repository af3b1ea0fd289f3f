#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "domelim/ars.hpp"
#include "domelim/dominance.hpp"
#include "domelim/error.hpp"
#include "domelim/game_io.hpp"
#include "domelim/random.hpp"
#include "domelim/reduction.hpp"
#include "domelim/trace_io.hpp"

namespace domelim {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitUnsupported = 3,
  kExitViolation = 4,
  kExitBudget = 5,
};

namespace cli {

class UsageError : public Error {
 public:
  using Error::Error;
};

inline GamePtr load_game(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return std::make_shared<const Game>(parse_game(buffer.str()));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + e.what());
  }
}

inline DominanceRelation parse_relation_flags(const std::string& name, const std::string& beliefs) {
  const auto mode = belief_mode_from_name(beliefs);
  if (!mode) throw UsageError("unknown belief mode '" + beliefs + "' (expected pure, mixed or correlated)");
  try {
    return relation_from_name(name, *mode);
  } catch (const StructuralError& e) {
    throw UsageError(e.what());
  }
}

inline void print_restriction(std::ostream& out, const Restriction& r, const std::string& indent = "") {
  for (std::size_t i = 0; i < r.num_players(); ++i) {
    out << indent << "player " << i + 1 << ":";
    for (std::size_t s : r.kept(i)) out << ' ' << r.game().labels(i)[s];
    out << '\n';
  }
}

inline std::string strategy_name(const Restriction& r, StrategyRef s) {
  return "player " + std::to_string(s.player + 1) + " strategy " + r.game().labels(s.player)[s.index];
}

inline std::string restriction_name(const Restriction& r) {
  std::string out;
  for (std::size_t i = 0; i < r.num_players(); ++i) {
    if (i > 0) out += " x ";
    out += "{";
    for (std::size_t k = 0; k < r.kept(i).size(); ++k) {
      if (k > 0) out += ",";
      out += r.game().labels(i)[r.kept(i)[k]];
    }
    out += "}";
  }
  return out;
}

struct ReduceOptions {
  std::string file;
  std::string relation;
  std::string beliefs = "correlated";
  std::string policy = "fastest";
  std::uint64_t seed = 0;
  std::string trace;
};

inline int run_reduce(const ReduceOptions& opt, std::ostream& out) {
  const auto game = load_game(opt.file);
  const auto rel = parse_relation_flags(opt.relation, opt.beliefs);
  OrderPolicy policy;
  if (opt.policy == "fastest") {
    policy = FullSpeed{};
  } else if (opt.policy == "single-lex") {
    policy = SingleLex{};
  } else if (opt.policy == "single-random") {
    policy = SingleRandom{opt.seed};
  } else {
    throw UsageError("unknown policy '" + opt.policy + "'");
  }
  const Trace trace = normal_form(rel, game, policy);
  print_restriction(out, trace.outcome);
  if (!opt.trace.empty()) {
    std::ofstream file(opt.trace, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + opt.trace + "'");
    file << trace_document(trace);
  }
  return kExitOk;
}

struct OrdersOptions {
  std::string file;
  std::string relation;
  std::string beliefs = "correlated";
  std::size_t budget = kDefaultBudget;
};

inline int run_orders(const OrdersOptions& opt, std::ostream& out) {
  const auto game = load_game(opt.file);
  const auto rel = parse_relation_flags(opt.relation, opt.beliefs);
  const auto result = all_outcomes(rel, game, opt.budget);
  out << "restrictions explored: " << result.visited.size() << '\n';
  out << "distinct outcomes: " << result.outcomes.size() << '\n';
  for (std::size_t k = 0; k < result.outcomes.size(); ++k) {
    out << "outcome " << k + 1 << ":\n";
    print_restriction(out, result.outcomes[k], "  ");
  }
  if (result.budget_exceeded) {
    out << "budget of " << opt.budget << " restrictions exceeded; outcome list is partial\n";
    return kExitBudget;
  }
  if (result.outcomes.size() != 1) {
    out << "order dependence detected\n";
    return kExitViolation;
  }
  return kExitOk;
}

struct CheckOptions {
  std::string file;
  std::size_t random = 0;
  std::uint64_t seed = 0;
  std::string property;
  std::string relation;
  std::string beliefs = "correlated";
  std::size_t budget = kDefaultBudget;
  std::size_t samples = 1000;
};

// Outcome of running a property checker over one game.
struct CheckResult {
  std::size_t checked = 0;
  std::optional<std::string> violation;
  bool budget_exceeded = false;
};

// Every reachable restriction, each →_D step out of it checked against the
// hereditary or proof-shape condition.
inline CheckResult check_steps(const DominanceRelation& rel, const GamePtr& game, const std::string& property,
                               std::size_t budget) {
  CheckResult result;
  const auto explored = all_outcomes(rel, game, budget);
  if (explored.budget_exceeded) {
    result.budget_exceeded = true;
    return result;
  }
  DominanceCache cache(rel);
  for (const auto& r : explored.visited) {
    const auto& dominated = cache.get(r);
    std::vector<StrategyRef> reduct_removed;
    for (const auto& d : dominated) reduct_removed.push_back(d.strategy);
    const Restriction reduct = dominated.empty() ? r : r.without(reduct_removed);
    for (const auto& step : detail::successors_from(r, dominated, AllSubsets{})) {
      ++result.checked;
      const auto& after_dominated = cache.get(step.after);
      const auto dominated_after = [&](StrategyRef s) {
        return std::any_of(after_dominated.begin(), after_dominated.end(),
                           [&](const DominatedStrategy& d) { return d.strategy == s; });
      };
      if (property == "hereditary") {
        for (const auto& d : dominated) {
          if (step.after.contains(d.strategy) && !dominated_after(d.strategy)) {
            result.violation = strategy_name(r, d.strategy) + " is dominated in " + restriction_name(r) +
                               " but not in " + restriction_name(step.after);
            return result;
          }
        }
      } else {
        if (step.after == reduct) continue;
        for (const auto& s : step.after.strategies()) {
          if (!reduct.contains(s) && !dominated_after(s)) {
            result.violation = "step " + restriction_name(r) + " -> " + restriction_name(step.after) +
                               " cannot continue to the full-speed reduct " + restriction_name(reduct) + ": " +
                               strategy_name(r, s) + " is not dominated";
            return result;
          }
        }
      }
    }
  }
  return result;
}

inline std::vector<Restriction> all_restrictions(const GamePtr& game) {
  std::vector<std::vector<std::vector<std::size_t>>> choices(game->num_players());
  for (std::size_t i = 0; i < game->num_players(); ++i) {
    const std::size_t k = game->num_strategies(i);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      std::vector<std::size_t> set;
      for (std::size_t s = 0; s < k; ++s) {
        if ((mask >> s) & 1U) set.push_back(s);
      }
      choices[i].push_back(std::move(set));
    }
  }
  std::vector<std::vector<std::size_t>> index_sets;
  for (const auto& c : choices) {
    std::vector<std::size_t> idx(c.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    index_sets.push_back(std::move(idx));
  }
  std::vector<Restriction> out;
  for_each_joint(std::span<const std::vector<std::size_t>>(index_sets), [&](const Joint& pick) {
    std::vector<std::vector<std::size_t>> kept;
    for (std::size_t i = 0; i < pick.size(); ++i) kept.push_back(choices[i][pick[i]]);
    out.emplace_back(game, std::move(kept));
  });
  return out;
}

inline constexpr std::size_t kExhaustiveRestrictionLimit = 4096;

// Monotonicity over every pair sub ⊆ r when the game is small, otherwise
// over `samples` random pairs.
inline CheckResult check_monotonic(const DominanceRelation& rel, const GamePtr& game, std::size_t samples,
                                   std::uint64_t seed) {
  CheckResult result;
  std::map<Restriction, std::vector<StrategyRef>> memo;
  const auto dominated_in = [&](const Restriction& r) -> const std::vector<StrategyRef>& {
    auto it = memo.find(r);
    if (it == memo.end()) {
      std::vector<StrategyRef> refs;
      for (const auto& d : collect_dominated(rel, r)) refs.push_back(d.strategy);
      it = memo.emplace(r, std::move(refs)).first;
    }
    return it->second;
  };
  const auto check_pair = [&](const Restriction& r, const Restriction& sub) {
    ++result.checked;
    const auto& big = dominated_in(r);
    const auto& small = dominated_in(sub);
    for (const auto& s : big) {
      if (sub.contains(s) && std::find(small.begin(), small.end(), s) == small.end()) {
        result.violation = strategy_name(r, s) + " is dominated in " + restriction_name(r) + " but not in " +
                           restriction_name(sub);
        return false;
      }
    }
    return true;
  };

  std::size_t total = 1;
  for (std::size_t i = 0; i < game->num_players() && total <= kExhaustiveRestrictionLimit; ++i) {
    total *= (std::size_t{1} << std::min<std::size_t>(game->num_strategies(i), 20)) - 1;
  }
  if (total <= kExhaustiveRestrictionLimit) {
    const auto restrictions = all_restrictions(game);
    for (const auto& r : restrictions) {
      for (const auto& sub : restrictions) {
        if (restriction_leq(sub, r) && !check_pair(r, sub)) return result;
      }
    }
    return result;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const Restriction r = random_restriction(rng, game);
    if (!check_pair(r, random_subrestriction(rng, r))) return result;
  }
  return result;
}

inline int run_check(const CheckOptions& opt, std::ostream& out) {
  if (opt.property != "hereditary" && opt.property != "monotonic" && opt.property != "proof-shape") {
    throw UsageError("unknown property '" + opt.property + "' (expected hereditary, monotonic or proof-shape)");
  }
  if (opt.file.empty() == (opt.random == 0)) throw UsageError("check needs either a game file or --random N");
  const auto rel = parse_relation_flags(opt.relation, opt.beliefs);

  std::vector<GamePtr> games;
  if (!opt.file.empty()) {
    games.push_back(load_game(opt.file));
  } else {
    const std::size_t three = opt.random / 5;
    games = random_suite(opt.seed, opt.random - three, three);
  }

  std::size_t checked = 0;
  for (std::size_t g = 0; g < games.size(); ++g) {
    const CheckResult result = opt.property == "monotonic"
                                   ? check_monotonic(rel, games[g], opt.samples, opt.seed + g)
                                   : check_steps(rel, games[g], opt.property, opt.budget);
    checked += result.checked;
    if (result.budget_exceeded) {
      out << "game " << g + 1 << ": budget of " << opt.budget << " restrictions exceeded\n";
      return kExitBudget;
    }
    if (result.violation) {
      out << "violation in game " << g + 1 << ": " << *result.violation << '\n';
      if (games.size() > 1) out << write_game(*games[g]);
      return kExitViolation;
    }
  }
  out << opt.property << ": " << checked << (opt.property == "monotonic" ? " pairs" : " steps")
      << " checked over " << games.size() << (games.size() == 1 ? " game" : " games") << ", no violation\n";
  return kExitOk;
}

struct ArsOptions {
  std::size_t nodes = 12;
  std::string edge_prob = "1/4";
  std::size_t samples = 500;
  std::uint64_t seed = 0;
};

inline int run_ars(const ArsOptions& opt, std::ostream& out) {
  const auto prob = parse_rational(opt.edge_prob);
  if (!prob || *prob < 0 || *prob > 1) throw UsageError("--edge-prob must be a rational P/Q in [0, 1]");
  if (opt.nodes == 0) throw UsageError("--nodes must be positive");
  if (!prob->get_num().fits_ulong_p() || !prob->get_den().fits_ulong_p()) throw UsageError("--edge-prob too large");
  const auto report = newman_experiment(opt.nodes, prob->get_num().get_ui(), prob->get_den().get_ui(), opt.samples, opt.seed);
  out << "samples: " << report.samples << '\n';
  out << "weakly confluent: " << report.weakly_confluent << '\n';
  out << "unique normal forms: " << report.unique_nf << '\n';
  out << "implication failures: " << report.implication_failures << '\n';
  return report.implication_failures == 0 ? kExitOk : kExitViolation;
}

}  // namespace cli

// Entry point of the `domelim` tool; args excludes the program name.
inline int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Iterated elimination of dominated strategies with exact arithmetic", "domelim"};
  app.require_subcommand(1);

  cli::ReduceOptions reduce;
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a game to its outcome under one elimination order");
  reduce_cmd->add_option("file", reduce.file, "Game file")->required();
  reduce_cmd->add_option("--relation", reduce.relation, "Dominance relation (comma-joined for intersections)")->required();
  reduce_cmd->add_option("--beliefs", reduce.beliefs, "pure, mixed or correlated");
  reduce_cmd->add_option("--policy", reduce.policy, "fastest, single-lex or single-random");
  reduce_cmd->add_option("--seed", reduce.seed, "Seed for single-random");
  reduce_cmd->add_option("--trace", reduce.trace, "Write a JSON trace document here");

  cli::OrdersOptions orders;
  auto* orders_cmd = app.add_subcommand("orders", "Enumerate the outcomes of all elimination orders");
  orders_cmd->add_option("file", orders.file, "Game file")->required();
  orders_cmd->add_option("--relation", orders.relation, "Dominance relation")->required();
  orders_cmd->add_option("--beliefs", orders.beliefs, "pure, mixed or correlated");
  orders_cmd->add_option("--budget", orders.budget, "Maximum number of restrictions to explore");

  cli::CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Check hereditarity, monotonicity or the confluence step shape");
  check_cmd->add_option("file", check.file, "Game file");
  check_cmd->add_option("--random", check.random, "Check N seeded random games instead of a file");
  check_cmd->add_option("--seed", check.seed, "Seed for --random and for sampled pairs");
  check_cmd->add_option("--property", check.property, "hereditary, monotonic or proof-shape")->required();
  check_cmd->add_option("--relation", check.relation, "Dominance relation")->required();
  check_cmd->add_option("--beliefs", check.beliefs, "pure, mixed or correlated");
  check_cmd->add_option("--budget", check.budget, "Maximum number of restrictions to explore per game");
  check_cmd->add_option("--samples", check.samples, "Sampled pairs per game when a game is too large to enumerate");

  cli::ArsOptions ars;
  auto* ars_cmd = app.add_subcommand("ars", "Newman's lemma experiment on random finite DAGs");
  ars_cmd->add_option("--nodes", ars.nodes, "Maximum node count per system");
  ars_cmd->add_option("--edge-prob", ars.edge_prob, "Edge probability P/Q");
  ars_cmd->add_option("--samples", ars.samples, "Number of systems");
  ars_cmd->add_option("--seed", ars.seed, "Seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (reduce_cmd->parsed()) return cli::run_reduce(reduce, out);
    if (orders_cmd->parsed()) return cli::run_orders(orders, out);
    if (check_cmd->parsed()) return cli::run_check(check, out);
    if (ars_cmd->parsed()) return cli::run_ars(ars, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cli::UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedConfiguration& e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const AssumptionViolated& e) {
    err << "assumption violated: " << e.what() << '\n';
    return kExitViolation;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace domelim
