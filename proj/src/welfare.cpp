#include "sharing/welfare.hpp"

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sharing/matching.hpp"

namespace sharing {

namespace {

Rat initial_value(const Instance& inst, int agent) {
  Rat total = 0;
  for (int r : inst.bundle[agent]) total += Rat(inst.utility[agent][r]);
  return total;
}

std::vector<Rat> initial_values(const Instance& inst) {
  std::vector<Rat> values(inst.n);
  for (int i = 0; i < inst.n; ++i) values[i] = initial_value(inst, i);
  return values;
}

// Net change in utilitarian welfare when `donor` shares resource r with
// `receiver`: the receiver gains beta * u_receiver(r) while the donor keeps
// only alpha * u_donor(r) of it. Synthetic resources (r >= m, appended by
// the utilitarian reduction to fill short bundles) are worthless to all.
Rat share_gain(const Instance& inst, int donor, int receiver, int r) {
  if (r >= inst.m) return Rat(0);
  return inst.ext.beta * Rat(inst.utility[receiver][r]) -
         (Rat(1) - inst.ext.alpha) * Rat(inst.utility[donor][r]);
}

// value * scale, which callers arrange to be integral.
Int scaled_int(const Rat& value, const Int& scale) {
  const Rat scaled = value * Rat(scale);
  assert(denominator(scaled) == 1);
  return numerator(scaled);
}

}  // namespace

UwsaResult solve_uwsa(const Instance& inst, int bound, const Rat& target) {
  if (bound < 1) {
    throw InputError("solve_uwsa: per-agent bound must be at least 1, got " +
                     std::to_string(bound));
  }
  if (inst.ext.budget.has_value()) {
    throw InputError(
        "solve_uwsa: cost budgets are not supported for utilitarian welfare "
        "(budget-constrained matching is not a maximum-weight matching)");
  }

  const std::vector<Rat> values = initial_values(inst);
  Rat initial_uw = 0;
  for (const Rat& v : values) initial_uw += v;

  // Every assignment consumes a distinct resource, so no agent can take part
  // in more than m of them; capping the bound there keeps the graph small
  // without changing the feasible sharings.
  const int eff_bound = std::min(bound, inst.m);

  // One vertex per (agent, owned resource), bundles padded with synthetic
  // worthless resources up to eff_bound so every agent has at least that
  // many vertices. surplus[i] counts the vertices beyond eff_bound; each is
  // absorbed by a dedicated high-weight partner vertex below, which is what
  // limits agent i to eff_bound cross edges.
  struct Vertex {
    int agent = 0;
    int resource = -1;  // -1 for the absorbing partners
  };
  std::vector<Vertex> vertices;
  std::vector<std::vector<int>> agent_vertices(inst.n);
  int next_synthetic = inst.m;
  for (int i = 0; i < inst.n; ++i) {
    std::vector<int> owned = inst.bundle[i];
    while (static_cast<int>(owned.size()) < eff_bound) {
      owned.push_back(next_synthetic++);
    }
    for (int r : owned) {
      agent_vertices[i].push_back(static_cast<int>(vertices.size()));
      vertices.push_back({i, r});
    }
  }

  // All edge weights are share gains scaled to integers by the common
  // denominator of the loss parameters.
  const Int scale = boost::multiprecision::lcm(denominator(inst.ext.alpha),
                                               denominator(inst.ext.beta));

  WeightedGraph graph;
  for (const auto& [a1, a2] : inst.sharing_edge_list()) {
    for (int x : agent_vertices[a1]) {
      for (int y : agent_vertices[a2]) {
        const Rat gain = std::max(
            share_gain(inst, a1, a2, vertices[x].resource),
            share_gain(inst, a2, a1, vertices[y].resource));
        const Int weight = scaled_int(gain, scale);
        if (weight > 0) {
          graph.edges.push_back({std::min(x, y), std::max(x, y), weight});
        }
      }
    }
  }

  // Absorbing partners: surplus[i] extra vertices per agent, joined to all of
  // agent i's resource vertices at a weight no cross edge can beat. Some
  // maximum-weight matching then uses all of them, leaving at most eff_bound
  // resource vertices of each agent free for cross edges — exactly the
  // per-agent bound.
  Int max_utility = 0;
  for (int i = 0; i < inst.n; ++i) {
    for (int r = 0; r < inst.m; ++r) {
      max_utility = std::max(max_utility, inst.utility[i][r]);
    }
  }
  const Int absorb_weight = max_utility * scale;
  int total_surplus = 0;
  std::vector<std::vector<int>> absorbers(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    const int surplus = static_cast<int>(agent_vertices[i].size()) - eff_bound;
    total_surplus += surplus;
    for (int k = 0; k < surplus; ++k) {
      const int a = static_cast<int>(vertices.size());
      vertices.push_back({i, -1});
      absorbers[i].push_back(a);
      for (int x : agent_vertices[i]) {
        graph.edges.push_back({std::min(x, a), std::max(x, a), absorb_weight});
      }
    }
  }
  graph.vertex_count = static_cast<int>(vertices.size());

  const Matching mwm = max_weight_matching(graph);

  // Normalize the optimum to use every absorbing partner. Each rewiring step
  // below swaps weight absorb_weight in for a cross edge of no larger
  // weight; optimality of `mwm` forces every such step to be weight-neutral,
  // which the recomputation at the end asserts.
  std::map<std::pair<int, int>, Int> weight_of;
  for (const WeightedEdge& e : graph.edges) weight_of[{e.u, e.v}] = e.weight;
  std::vector<int> mate(vertices.size(), -1);
  for (const auto& [x, y] : mwm.edges) {
    mate[x] = y;
    mate[y] = x;
  }
  for (int i = 0; i < inst.n; ++i) {
    for (int a : absorbers[i]) {
      if (mate[a] != -1) continue;
      int free_vertex = -1;
      int cross_vertex = -1;
      for (int x : agent_vertices[i]) {
        if (mate[x] == -1) {
          free_vertex = x;
          break;
        }
        if (vertices[mate[x]].resource != -1 && cross_vertex == -1) {
          cross_vertex = x;
        }
      }
      int x = free_vertex;
      if (x == -1) {
        assert(cross_vertex != -1);
        x = cross_vertex;
        mate[mate[x]] = -1;
      }
      mate[x] = a;
      mate[a] = x;
    }
  }

  Int final_weight = 0;
  Sharing witness;
  witness.bound = bound;
  for (int x = 0; x < static_cast<int>(vertices.size()); ++x) {
    const int y = mate[x];
    if (y <= x) continue;
    final_weight += weight_of.at({x, y});
    const Vertex& vx = vertices[x];
    const Vertex& vy = vertices[y];
    if (vx.resource == -1 || vy.resource == -1) continue;  // absorbing edge
    const Rat give_x = share_gain(inst, vx.agent, vy.agent, vx.resource);
    const Rat give_y = share_gain(inst, vy.agent, vx.agent, vy.resource);
    const int shared = give_x >= give_y ? vx.resource : vy.resource;
    assert(shared < inst.m);  // synthetic resources never carry positive gain
    witness.assignments.push_back({std::min(vx.agent, vy.agent),
                                   std::max(vx.agent, vy.agent), shared});
  }
  assert(final_weight == mwm.total_weight);
  normalize_sharing(witness);

  const Int absorbed = absorb_weight * total_surplus;
  UwsaResult result;
  result.optimum = initial_uw + Rat(final_weight - absorbed) / Rat(scale);
  result.yes = result.optimum >= target;
  result.witness = std::move(witness);
  return result;
}

EwsaResult solve_ewsa_simple(const Instance& inst, const Rat& target) {
  const std::vector<Rat> values = initial_values(inst);
  std::vector<int> donors;   // agents already at or above the target
  std::vector<int> needy;    // agents below it; each must receive
  for (int i = 0; i < inst.n; ++i) {
    (values[i] >= target ? donors : needy).push_back(i);
  }
  if (needy.empty()) {
    EwsaResult result;
    result.yes = true;
    result.witness.bound = 1;
    return result;
  }
  if (donors.empty()) return {};  // any sharing leaves its donor below target

  // A needy agent can only be lifted by a sharing-neighbor that is already
  // at the target, owns a resource the needy agent values enough, and stays
  // at the target after the donation loss. Lowest such resource wins, for
  // witness stability (the resource choice never affects feasibility).
  const Rat loss = Rat(1) - inst.ext.alpha;
  std::vector<std::pair<int, int>> pair_edges;  // (donor index, needy index)
  std::map<std::pair<int, int>, int> lift_resource;
  for (std::size_t di = 0; di < donors.size(); ++di) {
    const int i = donors[di];
    for (std::size_t ni = 0; ni < needy.size(); ++ni) {
      const int j = needy[ni];
      if (!inst.sharing[i][j]) continue;
      for (int r : inst.bundle[i]) {
        const bool lifts =
            values[j] + inst.ext.beta * Rat(inst.utility[j][r]) >= target;
        const bool keeps = values[i] - loss * Rat(inst.utility[i][r]) >= target;
        if (lifts && keeps) {
          pair_edges.emplace_back(static_cast<int>(di), static_cast<int>(ni));
          lift_resource[{static_cast<int>(di), static_cast<int>(ni)}] = r;
          break;
        }
      }
    }
  }

  // Every needy agent must be matched to a distinct donor; with a cost
  // budget the saturating matching must also be affordable.
  std::vector<std::pair<int, int>> matched;  // (donor index, needy index)
  const int donor_count = static_cast<int>(donors.size());
  const int needy_count = static_cast<int>(needy.size());
  if (!inst.ext.budget.has_value()) {
    const Matching m = max_cardinality_bipartite_matching(
        donor_count, needy_count, pair_edges);
    if (m.cardinality < needy_count) return {};
    for (const auto& [x, y] : m.edges) matched.emplace_back(x, y - donor_count);
  } else {
    WeightedGraph priced;
    priced.vertex_count = donor_count + needy_count;
    for (const auto& [di, ni] : pair_edges) {
      priced.edges.push_back(
          {di, donor_count + ni, inst.edge_cost[donors[di]][needy[ni]]});
    }
    const MatchingDecision affordable =
        solve_wbmm(priced, *inst.ext.budget, needy_count);
    if (!affordable.yes) return {};
    for (const auto& [x, y] : affordable.witness.edges) {
      matched.emplace_back(x, y - donor_count);
    }
  }

  EwsaResult result;
  result.yes = true;
  result.witness.bound = 1;
  for (const auto& [di, ni] : matched) {
    const int i = donors[di];
    const int j = needy[ni];
    result.witness.assignments.push_back(
        {std::min(i, j), std::max(i, j), lift_resource.at({di, ni})});
  }
  normalize_sharing(result.witness);
  return result;
}

EwsaOptimum maximize_ewsa_simple(const Instance& inst) {
  EwsaOptimum best;
  best.witness.bound = 1;
  if (inst.n == 0) return best;

  // Under a simple sharing every agent's final value is its initial value,
  // possibly plus one weighted gain (receiver) or minus one donation loss
  // (donor, only when alpha < 1). The optimum is therefore the largest such
  // candidate the decision procedure accepts.
  const std::vector<Rat> values = initial_values(inst);
  std::vector<Rat> candidates;
  for (int i = 0; i < inst.n; ++i) {
    candidates.push_back(values[i]);
    for (int r = 0; r < inst.m; ++r) {
      candidates.push_back(values[i] + inst.ext.beta * Rat(inst.utility[i][r]));
    }
    if (inst.ext.alpha < 1) {
      for (int r : inst.bundle[i]) {
        candidates.push_back(
            values[i] - (Rat(1) - inst.ext.alpha) * Rat(inst.utility[i][r]));
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), std::greater<Rat>());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  for (const Rat& k : candidates) {
    EwsaResult decision = solve_ewsa_simple(inst, k);
    if (decision.yes) {
      best.optimum = k;
      best.witness = std::move(decision.witness);
      return best;
    }
  }
  // Unreachable: the smallest initial value is always achievable with the
  // empty sharing and is in the candidate set.
  assert(false);
  return best;
}

EwsaResult solve_ewsa_bounded_exact(const Instance& inst, int bound,
                                    const Rat& target, NodeBudget* budget) {
  if (bound < 2) {
    throw InputError(
        "solve_ewsa_bounded_exact: per-agent bound must be at least 2 (use "
        "solve_ewsa_simple for simple sharings), got " +
        std::to_string(bound));
  }
  NodeBudget local;
  NodeBudget& nodes = budget ? *budget : local;

  struct Candidate {
    int u = 0, v = 0, resource = 0;
    int donor = 0, receiver = 0;
  };
  const std::vector<Rat> values = initial_values(inst);
  std::vector<Candidate> candidates;
  for (const auto& [u, v] : inst.sharing_edge_list()) {
    for (int r = 0; r < inst.m; ++r) {
      if (inst.owner[r] != u && inst.owner[r] != v) continue;
      const int donor = inst.owner[r];
      candidates.push_back({u, v, r, donor, donor == u ? v : u});
    }
  }
  // Serve the poorest receivers first so witnesses lift whoever is furthest
  // from the target as early as possible.
  std::sort(candidates.begin(), candidates.end(),
            [&](const Candidate& a, const Candidate& b) {
              return std::forward_as_tuple(values[a.receiver], a.u, a.v,
                                           a.resource) <
                     std::forward_as_tuple(values[b.receiver], b.u, b.v,
                                           b.resource);
            });

  std::vector<Rat> value = values;
  std::vector<int> uses(inst.n, 0);
  std::vector<char> resource_used(inst.m, 0);
  std::map<std::pair<int, int>, int> edge_load;
  Int cost = 0;
  const Rat loss = Rat(1) - inst.ext.alpha;

  std::vector<Assignment> current;
  std::optional<std::vector<Assignment>> found;

  // An agent below the target can only be saved by future receipts; sum the
  // best still-possible gains into an optimistic bound and prune when even
  // that falls short.
  const auto hopeless = [&](std::size_t next) {
    std::vector<Rat> gains;
    for (int a = 0; a < inst.n; ++a) {
      if (value[a] >= target) continue;
      const int capacity = bound - uses[a];
      if (capacity <= 0) return true;
      gains.clear();
      for (std::size_t i = next; i < candidates.size(); ++i) {
        const Candidate& c = candidates[i];
        if (c.receiver != a || resource_used[c.resource]) continue;
        const Rat gain = inst.ext.beta * Rat(inst.utility[a][c.resource]);
        if (gain > 0) gains.push_back(gain);
      }
      std::sort(gains.begin(), gains.end(), std::greater<Rat>());
      Rat reachable = value[a];
      const std::size_t take =
          std::min(gains.size(), static_cast<std::size_t>(capacity));
      for (std::size_t i = 0; i < take; ++i) reachable += gains[i];
      if (reachable < target) return true;
    }
    return false;
  };

  const std::function<bool(std::size_t)> dfs = [&](std::size_t next) {
    nodes.tick("exact b-EWSA");
    bool all_at_target = true;
    for (int a = 0; a < inst.n; ++a) {
      if (value[a] < target) {
        all_at_target = false;
        break;
      }
    }
    if (all_at_target) {
      found = current;
      return true;
    }
    if (hopeless(next)) return false;
    for (std::size_t i = next; i < candidates.size(); ++i) {
      const Candidate& c = candidates[i];
      if (resource_used[c.resource]) continue;
      if (uses[c.u] >= bound || uses[c.v] >= bound) continue;
      const std::pair<int, int> edge{c.u, c.v};
      const Int added_cost = edge_load[edge] == 0 ? inst.edge_cost[c.u][c.v]
                                                  : Int(0);
      if (inst.ext.budget.has_value() && cost + added_cost > *inst.ext.budget) {
        continue;
      }
      resource_used[c.resource] = 1;
      ++uses[c.u];
      ++uses[c.v];
      ++edge_load[edge];
      cost += added_cost;
      value[c.receiver] += inst.ext.beta * Rat(inst.utility[c.receiver][c.resource]);
      value[c.donor] -= loss * Rat(inst.utility[c.donor][c.resource]);
      current.push_back({c.u, c.v, c.resource});
      const bool done = dfs(i + 1);
      current.pop_back();
      value[c.donor] += loss * Rat(inst.utility[c.donor][c.resource]);
      value[c.receiver] -= inst.ext.beta * Rat(inst.utility[c.receiver][c.resource]);
      cost -= added_cost;
      --edge_load[edge];
      --uses[c.u];
      --uses[c.v];
      resource_used[c.resource] = 0;
      if (done) return true;
    }
    return false;
  };

  try {
    dfs(0);
  } catch (const SearchBudgetError&) {
    throw SearchBudgetError(
        "instance too large for exact b-EWSA: search node budget exhausted "
        "(raise the node cap to search further)");
  }

  EwsaResult result;
  if (found.has_value()) {
    result.yes = true;
    result.witness.bound = bound;
    result.witness.assignments = std::move(*found);
    normalize_sharing(result.witness);
  }
  return result;
}

}  // namespace sharing
