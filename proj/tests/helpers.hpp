#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sharing/matching.hpp"
#include "sharing/model.hpp"
#include "sharing/numeric.hpp"

namespace helpers {

// Deterministic bounded draw (inclusive). Tests and corpus generators avoid
// std::uniform_int_distribution because its output is not pinned by the
// standard; raw engine output modulo span is stable everywhere.
inline int bounded(std::mt19937_64& gen, int lo, int hi) {
  return lo + static_cast<int>(gen() % static_cast<unsigned long long>(
                                           hi - lo + 1));
}

// Fluent construction of small hand-written instances. build() runs
// finalize_instance, so tests get the same normalization as parsed input.
class InstanceBuilder {
 public:
  InstanceBuilder(int n, int m) {
    inst_.n = n;
    inst_.m = m;
    inst_.utility.assign(n, std::vector<sharing::Int>(m, 0));
    inst_.bundle.assign(n, {});
    inst_.sharing.assign(n, std::vector<char>(n, 0));
    inst_.attention.assign(n, std::vector<char>(n, 0));
    inst_.edge_cost.assign(n, std::vector<sharing::Int>(n, 0));
  }

  InstanceBuilder& utility_row(int agent, const std::vector<long long>& row) {
    for (std::size_t r = 0; r < row.size(); ++r) {
      inst_.utility[agent][r] = row[r];
    }
    return *this;
  }

  InstanceBuilder& give(int agent, std::initializer_list<int> resources) {
    for (int r : resources) inst_.bundle[agent].push_back(r);
    return *this;
  }

  InstanceBuilder& edge(int u, int v) {
    inst_.sharing[u][v] = inst_.sharing[v][u] = 1;
    return *this;
  }

  InstanceBuilder& arc(int from, int to) {
    inst_.attention[from][to] = 1;
    return *this;
  }

  InstanceBuilder& clique_sharing() {
    for (int u = 0; u < inst_.n; ++u) {
      for (int v = u + 1; v < inst_.n; ++v) edge(u, v);
    }
    return *this;
  }

  InstanceBuilder& clique_attention() {
    for (int i = 0; i < inst_.n; ++i) {
      for (int j = 0; j < inst_.n; ++j) {
        if (i != j) inst_.attention[i][j] = 1;
      }
    }
    return *this;
  }

  InstanceBuilder& attention_mirrors_sharing() {
    for (int i = 0; i < inst_.n; ++i) {
      for (int j = 0; j < inst_.n; ++j) {
        if (inst_.sharing[i][j]) inst_.attention[i][j] = 1;
      }
    }
    return *this;
  }

  InstanceBuilder& cost(int u, int v, long long value) {
    inst_.edge_cost[u][v] = inst_.edge_cost[v][u] = value;
    return *this;
  }

  InstanceBuilder& budget(long long value) {
    inst_.ext.budget = sharing::Int(value);
    return *this;
  }

  InstanceBuilder& loss(const std::string& alpha, const std::string& beta) {
    inst_.ext.alpha = sharing::parse_rational(alpha);
    inst_.ext.beta = sharing::parse_rational(beta);
    return *this;
  }

  sharing::Instance build() const {
    sharing::Instance copy = inst_;
    sharing::finalize_instance(copy);
    return copy;
  }

 private:
  sharing::Instance inst_;
};

// entries = {u, v, resource} triples.
inline sharing::Sharing make_sharing(
    int bound, const std::vector<std::array<int, 3>>& entries) {
  sharing::Sharing s;
  s.bound = bound;
  for (const auto& e : entries) {
    s.assignments.push_back({e[0], e[1], e[2]});
  }
  return s;
}

// Every valid bound-respecting sharing of the instance, found by filtering
// all subsets of (edge, resource) candidates through validate_sharing.
// Deliberately the dumbest possible implementation -- it restates the
// definitions and nothing else -- so it can serve as an independent
// reference for the real enumerator and the solvers. Tiny instances only.
inline std::vector<sharing::Sharing> all_sharings_by_filter(
    const sharing::Instance& inst, int bound) {
  std::vector<sharing::Assignment> candidates;
  for (const auto& [u, v] : inst.sharing_edge_list()) {
    for (int r = 0; r < inst.m; ++r) {
      if (inst.owner[r] == u || inst.owner[r] == v) {
        candidates.push_back({u, v, r});
      }
    }
  }
  if (candidates.size() > 20) {
    throw std::runtime_error("subset-filter reference: instance too large");
  }
  std::vector<sharing::Sharing> out;
  for (unsigned long mask = 0; mask < (1ul << candidates.size()); ++mask) {
    sharing::Sharing s;
    s.bound = bound;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if ((mask >> i) & 1u) s.assignments.push_back(candidates[i]);
    }
    if (sharing::validate_sharing(inst, s).empty()) {
      out.push_back(std::move(s));
    }
  }
  return out;
}

// Exhaustive matching statistics found by include/skip recursion over the
// edge list: the global maximum weight plus, for every cardinality, the
// best and worst total weight among matchings of exactly that size. The
// decision procedures reduce to these arrays directly:
//   "some matching with |M| <= a has weight >= b"  and
//   "some matching with weight <= a has |M| >= b".
struct MatchingStats {
  sharing::Int max_weight{0};
  std::vector<std::optional<sharing::Int>> best_at_size;  // max w, |M| = k
  std::vector<std::optional<sharing::Int>> min_at_size;   // min w, |M| = k
};

inline MatchingStats enumerate_matchings(const sharing::WeightedGraph& g) {
  MatchingStats stats;
  const int cap = g.vertex_count / 2 + 1;
  stats.best_at_size.assign(cap + 1, std::nullopt);
  stats.min_at_size.assign(cap + 1, std::nullopt);
  std::vector<char> used(g.vertex_count, 0);

  const std::function<void(std::size_t, int, sharing::Int)> walk =
      [&](std::size_t next, int size, sharing::Int weight) {
        if (weight > stats.max_weight) stats.max_weight = weight;
        auto& best = stats.best_at_size[size];
        auto& worst = stats.min_at_size[size];
        if (!best.has_value() || weight > *best) best = weight;
        if (!worst.has_value() || weight < *worst) worst = weight;
        for (std::size_t i = next; i < g.edges.size(); ++i) {
          const auto& e = g.edges[i];
          if (used[e.u] || used[e.v]) continue;
          used[e.u] = used[e.v] = 1;
          walk(i + 1, size + 1, weight + e.weight);
          used[e.u] = used[e.v] = 0;
        }
      };
  walk(0, 0, sharing::Int(0));
  return stats;
}

inline bool exists_small_heavy_matching(const MatchingStats& stats,
                                        int max_size,
                                        const sharing::Int& min_weight) {
  for (int k = 0; k < static_cast<int>(stats.best_at_size.size()); ++k) {
    if (k > max_size) break;
    if (stats.best_at_size[k].has_value() &&
        *stats.best_at_size[k] >= min_weight) {
      return true;
    }
  }
  return false;
}

inline bool exists_light_large_matching(const MatchingStats& stats,
                                        const sharing::Int& max_weight,
                                        int min_size) {
  for (int k = min_size; k < static_cast<int>(stats.min_at_size.size());
       ++k) {
    if (stats.min_at_size[k].has_value() &&
        *stats.min_at_size[k] <= max_weight) {
      return true;
    }
  }
  return false;
}

// Random instance: utilities uniform in [0, u_max], each resource assigned
// to a uniform agent, each agent pair sharing-connected with probability
// edge_percent/100, each ordered pair attention-connected with probability
// arc_percent/100. Deterministic for a fixed engine state.
inline sharing::Instance random_instance(std::mt19937_64& gen, int n, int m,
                                         int edge_percent, int arc_percent,
                                         int u_max) {
  sharing::Instance inst;
  inst.n = n;
  inst.m = m;
  inst.utility.assign(n, std::vector<sharing::Int>(m, 0));
  inst.bundle.assign(n, {});
  inst.sharing.assign(n, std::vector<char>(n, 0));
  inst.attention.assign(n, std::vector<char>(n, 0));
  inst.edge_cost.assign(n, std::vector<sharing::Int>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < m; ++r) {
      inst.utility[i][r] = bounded(gen, 0, u_max);
    }
  }
  for (int r = 0; r < m; ++r) {
    inst.bundle[bounded(gen, 0, n - 1)].push_back(r);
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (bounded(gen, 1, 100) <= edge_percent) {
        inst.sharing[u][v] = inst.sharing[v][u] = 1;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && bounded(gen, 1, 100) <= arc_percent) {
        inst.attention[i][j] = 1;
      }
    }
  }
  sharing::finalize_instance(inst);
  return inst;
}

// Attaches uniform random costs in [0, cost_max] to every sharing edge and
// returns their sum (the budget value that makes every sharing affordable).
inline sharing::Int randomize_costs(std::mt19937_64& gen,
                                    sharing::Instance& inst, int cost_max) {
  sharing::Int total = 0;
  for (const auto& [u, v] : inst.sharing_edge_list()) {
    const sharing::Int c(bounded(gen, 0, cost_max));
    inst.edge_cost[u][v] = inst.edge_cost[v][u] = c;
    total += c;
  }
  return total;
}

// Uniform random graph on n vertices: each pair becomes an edge with
// probability percent/100, weights uniform in [0, max_weight].
inline sharing::WeightedGraph random_graph(std::mt19937_64& gen, int n,
                                           int percent, int max_weight) {
  sharing::WeightedGraph g;
  g.vertex_count = n;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (bounded(gen, 1, 100) <= percent) {
        g.edges.push_back({u, v, sharing::Int(bounded(gen, 0, max_weight))});
      }
    }
  }
  return g;
}

}  // namespace helpers
