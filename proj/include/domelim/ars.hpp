#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "domelim/error.hpp"
#include "domelim/rng.hpp"

namespace domelim {

// A finite abstract reduction system: nodes 0..n-1 and a one-step relation.
class FiniteArs {
 public:
  FiniteArs(std::size_t nodes, std::vector<std::pair<std::size_t, std::size_t>> edges)
      : successors_(nodes) {
    for (const auto& [from, to] : edges) {
      if (from >= nodes || to >= nodes) throw StructuralError("edge endpoint out of range");
      successors_[from].push_back(to);
    }
    for (auto& next : successors_) {
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
    }
  }

  std::size_t size() const { return successors_.size(); }
  const std::vector<std::size_t>& successors(std::size_t node) const { return successors_.at(node); }

  // Nodes b with node →* b (including node itself).
  std::vector<bool> reachable(std::size_t node) const {
    std::vector<bool> seen(size(), false);
    std::vector<std::size_t> stack{node};
    seen.at(node) = true;
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b : successors_[a]) {
        if (!seen[b]) {
          seen[b] = true;
          stack.push_back(b);
        }
      }
    }
    return seen;
  }

  bool is_terminating() const {
    // Kahn's algorithm: every node gets removed iff there is no cycle.
    std::vector<std::size_t> indegree(size(), 0);
    for (const auto& next : successors_) {
      for (std::size_t b : next) ++indegree[b];
    }
    std::vector<std::size_t> ready;
    for (std::size_t a = 0; a < size(); ++a) {
      if (indegree[a] == 0) ready.push_back(a);
    }
    std::size_t removed = 0;
    while (!ready.empty()) {
      const std::size_t a = ready.back();
      ready.pop_back();
      ++removed;
      for (std::size_t b : successors_[a]) {
        if (--indegree[b] == 0) ready.push_back(b);
      }
    }
    return removed == size();
  }

 private:
  std::vector<std::vector<std::size_t>> successors_;
};

// Sinks reachable from `node`, ascending.
inline std::vector<std::size_t> ars_normal_forms(const FiniteArs& ars, std::size_t node) {
  if (node >= ars.size()) throw StructuralError("node out of range");
  const auto seen = ars.reachable(node);
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < ars.size(); ++b) {
    if (seen[b] && ars.successors(b).empty()) out.push_back(b);
  }
  return out;
}

struct ConfluenceFailure {
  std::size_t source;
  std::size_t left;
  std::size_t right;
  friend bool operator==(const ConfluenceFailure&, const ConfluenceFailure&) = default;
};

struct WeakConfluence {
  bool confluent = true;
  std::optional<ConfluenceFailure> counterexample;
};

// For every a → b and a → c, b and c must have a common reduct.
inline WeakConfluence ars_is_weakly_confluent(const FiniteArs& ars) {
  std::vector<std::vector<bool>> reach(ars.size());
  for (std::size_t a = 0; a < ars.size(); ++a) reach[a] = ars.reachable(a);
  for (std::size_t a = 0; a < ars.size(); ++a) {
    const auto& next = ars.successors(a);
    for (std::size_t x = 0; x < next.size(); ++x) {
      for (std::size_t y = x + 1; y < next.size(); ++y) {
        const auto& left = reach[next[x]];
        const auto& right = reach[next[y]];
        bool joinable = false;
        for (std::size_t d = 0; d < ars.size() && !joinable; ++d) joinable = left[d] && right[d];
        if (!joinable) return WeakConfluence{false, ConfluenceFailure{a, next[x], next[y]}};
      }
    }
  }
  return WeakConfluence{};
}

inline bool ars_unique_nf(const FiniteArs& ars) {
  if (!ars.is_terminating()) throw CyclicSystem("reduction system has a cycle");
  for (std::size_t a = 0; a < ars.size(); ++a) {
    if (ars_normal_forms(ars, a).size() != 1) return false;
  }
  return true;
}

// Random DAG on `nodes` nodes: each edge a → b with a < b present with
// probability num/den.
inline FiniteArs random_dag(std::mt19937_64& rng, std::size_t nodes, std::uint64_t num, std::uint64_t den) {
  if (den == 0 || num > den) throw StructuralError("edge probability must lie in [0, 1]");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < nodes; ++a) {
    for (std::size_t b = a + 1; b < nodes; ++b) {
      if (uniform_below(rng, den) < num) edges.emplace_back(a, b);
    }
  }
  return FiniteArs(nodes, std::move(edges));
}

struct NewmanReport {
  std::size_t samples = 0;
  std::size_t weakly_confluent = 0;
  std::size_t unique_nf = 0;
  std::size_t implication_failures = 0;  // weakly confluent but not unique-nf
};

// Samples DAGs with a node count drawn uniformly from [1, max_nodes] and
// checks weak confluence ⇒ unique normal forms on each.
inline NewmanReport newman_experiment(std::size_t max_nodes, std::uint64_t num, std::uint64_t den,
                                      std::size_t samples, std::uint64_t seed) {
  if (max_nodes == 0) throw StructuralError("need at least one node");
  std::mt19937_64 rng(seed);
  NewmanReport report;
  for (std::size_t k = 0; k < samples; ++k) {
    const std::size_t nodes = 1 + static_cast<std::size_t>(uniform_below(rng, max_nodes));
    const FiniteArs ars = random_dag(rng, nodes, num, den);
    const bool wc = ars_is_weakly_confluent(ars).confluent;
    const bool unf = ars_unique_nf(ars);
    ++report.samples;
    if (wc) ++report.weakly_confluent;
    if (unf) ++report.unique_nf;
    if (wc && !unf) ++report.implication_failures;
  }
  return report;
}

}  // namespace domelim
