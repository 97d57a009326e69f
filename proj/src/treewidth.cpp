#include "sharing/treewidth.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

namespace sharing {

namespace {

using NodeKind = NiceTreeDecomposition::NodeKind;

Rat initial_value(const Instance& inst, int agent) {
  Rat value = 0;
  for (int r : inst.bundle[agent]) value += Rat(inst.utility[agent][r]);
  return value;
}

Rat initial_value_through(const Instance& inst, int viewer, int about) {
  Rat value = 0;
  for (int r : inst.bundle[about]) value += Rat(inst.utility[viewer][r]);
  return value;
}

}  // namespace

std::vector<std::string> validate_nice_decomposition(
    const Instance& inst, const NiceTreeDecomposition& dec) {
  std::vector<std::string> out;
  const int count = static_cast<int>(dec.nodes.size());
  if (count == 0) {
    out.push_back("decomposition has no nodes");
    return out;
  }
  if (dec.root < 0 || dec.root >= count) {
    out.push_back("root index out of range");
    return out;
  }

  std::vector<int> parent(count, -1);
  bool shape_ok = true;
  for (int t = 0; t < count; ++t) {
    const auto& node = dec.nodes[t];
    for (std::size_t i = 0; i < node.bag.size(); ++i) {
      if (node.bag[i] < 0 || node.bag[i] >= inst.n) {
        out.push_back("node " + std::to_string(t) + " bag entry out of range");
        shape_ok = false;
      }
      if (i > 0 && node.bag[i - 1] >= node.bag[i]) {
        out.push_back("node " + std::to_string(t) +
                      " bag not strictly ascending");
        shape_ok = false;
      }
    }
    for (int c : node.children) {
      if (c < 0 || c >= count) {
        out.push_back("node " + std::to_string(t) + " child index out of range");
        shape_ok = false;
        continue;
      }
      if (parent[c] != -1) {
        out.push_back("node " + std::to_string(c) + " has two parents");
        shape_ok = false;
      }
      parent[c] = t;
    }
  }
  if (!shape_ok) return out;
  if (parent[dec.root] != -1) {
    out.push_back("root has a parent");
    return out;
  }
  {
    std::vector<char> seen(count, 0);
    std::vector<int> stack{dec.root};
    seen[dec.root] = 1;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      for (int c : dec.nodes[t].children) {
        if (!seen[c]) {
          seen[c] = 1;
          stack.push_back(c);
        }
      }
    }
    for (int t = 0; t < count; ++t) {
      if (!seen[t]) {
        out.push_back("node " + std::to_string(t) + " unreachable from root");
      }
    }
    if (!out.empty()) return out;
  }

  const auto bag_has = [&](int t, int v) {
    const auto& bag = dec.nodes[t].bag;
    return std::binary_search(bag.begin(), bag.end(), v);
  };
  for (int t = 0; t < count; ++t) {
    const auto& node = dec.nodes[t];
    switch (node.kind) {
      case NodeKind::kLeaf:
        if (!node.children.empty()) {
          out.push_back("leaf node " + std::to_string(t) + " has children");
        }
        if (!node.bag.empty()) {
          out.push_back("leaf node " + std::to_string(t) + " bag not empty");
        }
        break;
      case NodeKind::kIntroduce: {
        if (node.children.size() != 1) {
          out.push_back("introduce node " + std::to_string(t) +
                        " needs exactly one child");
          break;
        }
        const auto& child = dec.nodes[node.children[0]];
        if (!bag_has(t, node.vertex) ||
            bag_has(node.children[0], node.vertex) ||
            node.bag.size() != child.bag.size() + 1 ||
            !std::includes(node.bag.begin(), node.bag.end(),
                           child.bag.begin(), child.bag.end())) {
          out.push_back("introduce node " + std::to_string(t) +
                        " does not add exactly its vertex");
        }
        break;
      }
      case NodeKind::kForget: {
        if (node.children.size() != 1) {
          out.push_back("forget node " + std::to_string(t) +
                        " needs exactly one child");
          break;
        }
        const auto& child = dec.nodes[node.children[0]];
        if (bag_has(t, node.vertex) ||
            !bag_has(node.children[0], node.vertex) ||
            child.bag.size() != node.bag.size() + 1 ||
            !std::includes(child.bag.begin(), child.bag.end(),
                           node.bag.begin(), node.bag.end())) {
          out.push_back("forget node " + std::to_string(t) +
                        " does not drop exactly its vertex");
        }
        break;
      }
      case NodeKind::kJoin: {
        if (node.children.size() != 2) {
          out.push_back("join node " + std::to_string(t) +
                        " needs exactly two children");
          break;
        }
        if (dec.nodes[node.children[0]].bag != node.bag ||
            dec.nodes[node.children[1]].bag != node.bag) {
          out.push_back("join node " + std::to_string(t) +
                        " children bags differ from its own");
        }
        break;
      }
    }
  }
  if (!out.empty()) return out;

  // Agent coverage, sharing-edge coverage, and connectedness of each
  // agent's occurrence set (checked via the parent links: a connected
  // occurrence set has exactly one member whose parent lacks the agent).
  // Agents without any incident sharing edge may be left out entirely:
  // nothing about them is ever decided or compared.
  std::vector<int> occurrence_roots(inst.n, 0);
  std::vector<char> covered(inst.n, 0);
  for (int t = 0; t < count; ++t) {
    for (int v : dec.nodes[t].bag) {
      covered[v] = 1;
      if (t == dec.root || !bag_has(parent[t], v)) ++occurrence_roots[v];
    }
  }
  for (int v = 0; v < inst.n; ++v) {
    bool isolated = true;
    for (int x = 0; x < inst.n && isolated; ++x) {
      if (x != v && inst.sharing[v][x]) isolated = false;
    }
    if (!covered[v]) {
      if (!isolated) {
        out.push_back("agent " + std::to_string(v) + " appears in no bag");
      }
    } else if (occurrence_roots[v] != 1) {
      out.push_back("agent " + std::to_string(v) +
                    " occurs in a disconnected set of bags");
    }
  }
  for (const auto& [u, v] : inst.sharing_edge_list()) {
    bool found = false;
    for (int t = 0; t < count && !found; ++t) {
      found = bag_has(t, u) && bag_has(t, v);
    }
    if (!found) {
      out.push_back("sharing edge {" + std::to_string(u) + "," +
                    std::to_string(v) + "} covered by no bag");
    }
  }

  std::size_t largest = 0;
  for (int t = 0; t < count; ++t) {
    largest = std::max(largest, dec.nodes[t].bag.size());
  }
  if (static_cast<int>(largest) - 1 != dec.width) {
    out.push_back("declared width " + std::to_string(dec.width) +
                  " but bags give " + std::to_string(largest - 1));
  }
  return out;
}

namespace {

// Elimination orders. Eliminating a vertex joins its remaining neighbours
// into a clique; an order whose every vertex has at most w neighbours at
// its turn certifies treewidth <= w.

struct GiveUp {};

// Exact branch-and-bound over elimination orders for graphs on at most 64
// vertices. The residual graph after eliminating a set depends only on the
// set, so failed sets are memoised. Simplicial vertices of small degree
// are always safe to eliminate first, which settles paths, trees, and
// cliques without branching.
std::optional<std::vector<int>> exact_elimination_order(
    const std::vector<std::uint64_t>& adjacency, int n, int w) {
  std::unordered_set<std::uint64_t> failed;
  long states = 0;
  std::vector<int> order;
  const std::function<bool(const std::vector<std::uint64_t>&, std::uint64_t)>
      dfs = [&](const std::vector<std::uint64_t>& adj,
                std::uint64_t eliminated) -> bool {
    if (eliminated == (n == 64 ? ~0ULL : (1ULL << n) - 1)) return true;
    if (failed.count(eliminated)) return false;
    if (++states > 2'000'000) throw GiveUp{};

    std::vector<int> candidates;
    int simplicial = -1;
    for (int v = 0; v < n && simplicial < 0; ++v) {
      if (eliminated >> v & 1) continue;
      const std::uint64_t nbrs = adj[v] & ~eliminated;
      const int degree = __builtin_popcountll(nbrs);
      if (degree > w) continue;
      candidates.push_back(v);
      bool clique = true;
      for (int x = 0; x < n && clique; ++x) {
        if (!(nbrs >> x & 1)) continue;
        if ((nbrs & ~adj[x] & ~(1ULL << x)) != 0) clique = false;
      }
      if (clique) simplicial = v;
    }
    if (simplicial >= 0) candidates.assign(1, simplicial);
    for (int v : candidates) {
      std::vector<std::uint64_t> next = adj;
      const std::uint64_t nbrs = adj[v] & ~eliminated;
      for (int x = 0; x < n; ++x) {
        if (nbrs >> x & 1) next[x] |= nbrs & ~(1ULL << x);
      }
      order.push_back(v);
      if (dfs(next, eliminated | (1ULL << v))) return true;
      order.pop_back();
    }
    failed.insert(eliminated);
    return false;
  };
  try {
    if (dfs(adjacency, 0)) return order;
  } catch (const GiveUp&) {
  }
  return std::nullopt;
}

// Min-fill heuristic: repeatedly eliminate the vertex whose elimination
// adds the fewest edges (ties: lower degree, then lower id).
std::vector<int> min_fill_order(std::vector<std::vector<char>> adj, int n) {
  std::vector<int> order;
  std::vector<char> gone(n, 0);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long best_fill = 0, best_degree = 0;
    for (int v = 0; v < n; ++v) {
      if (gone[v]) continue;
      std::vector<int> nbrs;
      for (int x = 0; x < n; ++x) {
        if (!gone[x] && adj[v][x]) nbrs.push_back(x);
      }
      long fill = 0;
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
          if (!adj[nbrs[i]][nbrs[j]]) ++fill;
        }
      }
      const long degree = static_cast<long>(nbrs.size());
      if (best < 0 || fill < best_fill ||
          (fill == best_fill && degree < best_degree)) {
        best = v;
        best_fill = fill;
        best_degree = degree;
      }
    }
    std::vector<int> nbrs;
    for (int x = 0; x < n; ++x) {
      if (!gone[x] && adj[best][x]) nbrs.push_back(x);
    }
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        adj[nbrs[i]][nbrs[j]] = adj[nbrs[j]][nbrs[i]] = 1;
      }
    }
    gone[best] = 1;
    order.push_back(best);
  }
  return order;
}

}  // namespace

NiceTreeDecomposition build_nice_decomposition(const Instance& inst) {
  const int n = inst.n;
  NiceTreeDecomposition dec;

  if (n == 0) {
    dec.nodes.push_back({NodeKind::kLeaf, -1, {}, {}});
    dec.root = 0;
    dec.width = -1;
    return dec;
  }

  std::vector<int> order;
  if (n <= 64) {
    std::vector<std::uint64_t> masks(n, 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j && inst.sharing[i][j]) masks[i] |= 1ULL << j;
      }
    }
    for (int w = 0; w <= 4 && order.empty(); ++w) {
      if (auto found = exact_elimination_order(masks, n, w)) {
        order = std::move(*found);
      }
    }
  }
  if (order.empty()) {
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) adj[i][j] = inst.sharing[i][j];
    }
    order = min_fill_order(std::move(adj), n);
  }

  // Bags from the order: replay the elimination on a fill-in copy; the bag
  // of v is v plus its not-yet-eliminated neighbours, attached below the
  // earliest-eliminated of those (singleton bags hang off the last one).
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;
  std::vector<std::vector<char>> fill(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) fill[i][j] = inst.sharing[i][j];
  }
  std::vector<std::vector<int>> raw_bag(n);
  std::vector<int> raw_parent(n, -1);
  for (int step = 0; step < n; ++step) {
    const int v = order[step];
    std::vector<int> later;
    for (int x = 0; x < n; ++x) {
      if (fill[v][x] && position[x] > step) later.push_back(x);
    }
    for (std::size_t i = 0; i < later.size(); ++i) {
      for (std::size_t j = i + 1; j < later.size(); ++j) {
        fill[later[i]][later[j]] = fill[later[j]][later[i]] = 1;
      }
    }
    raw_bag[step] = later;
    raw_bag[step].push_back(v);
    std::sort(raw_bag[step].begin(), raw_bag[step].end());
    if (!later.empty()) {
      int next = later[0];
      for (int x : later) {
        if (position[x] < position[next]) next = x;
      }
      raw_parent[step] = position[next];
    } else if (step != n - 1) {
      raw_parent[step] = n - 1;
    }
  }
  std::vector<std::vector<int>> raw_children(n);
  for (int i = 0; i < n - 1; ++i) raw_children[raw_parent[i]].push_back(i);

  const auto add_node = [&](NodeKind kind, int vertex, std::vector<int> bag,
                            std::vector<int> children) {
    dec.nodes.push_back({kind, vertex, std::move(bag), std::move(children)});
    return static_cast<int>(dec.nodes.size()) - 1;
  };
  // Forget/introduce chains turning the bag on top of `below` into `to`.
  // (add_node may reallocate dec.nodes, so the start bag is copied.)
  const auto reshape = [&](int below, const std::vector<int>& to) {
    const std::vector<int> start = dec.nodes[below].bag;
    int top = below;
    std::vector<int> bag = start;
    for (int v : start) {
      if (!std::binary_search(to.begin(), to.end(), v)) {
        bag.erase(std::find(bag.begin(), bag.end(), v));
        top = add_node(NodeKind::kForget, v, bag, {top});
      }
    }
    for (int v : to) {
      if (!std::binary_search(start.begin(), start.end(), v)) {
        bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
        top = add_node(NodeKind::kIntroduce, v, bag, {top});
      }
    }
    return top;
  };
  const std::function<int(int)> build = [&](int raw) -> int {
    const auto& bag = raw_bag[raw];
    if (raw_children[raw].empty()) {
      int top = add_node(NodeKind::kLeaf, -1, {}, {});
      return reshape(top, bag);
    }
    int acc = -1;
    for (int child : raw_children[raw]) {
      const int shaped = reshape(build(child), bag);
      acc = acc < 0 ? shaped
                    : add_node(NodeKind::kJoin, -1, bag, {acc, shaped});
    }
    return acc;
  };
  dec.root = reshape(build(n - 1), {});

  std::size_t largest = 0;
  for (const auto& node : dec.nodes) {
    largest = std::max(largest, node.bag.size());
  }
  dec.width = static_cast<int>(largest) - 1;
  assert(validate_nice_decomposition(inst, dec).empty());
  return dec;
}

namespace {

// Role of one in-bag agent within the sharing being assembled: idle, or
// one endpoint of an arc carrying `resource` with `partner`.
struct AgentRole {
  int role = 0;  // 0 idle, 1 receives, 2 gives
  int partner = -1;
  int resource = -1;
  auto operator<=>(const AgentRole&) const = default;
};

using Conf = std::vector<AgentRole>;      // aligned with the bag, ascending
using TableKey = std::pair<Conf, std::uint32_t>;  // conf + envious-set mask

struct TableEntry {
  int count = 0;                 // envious agents settled so far
  std::vector<TableKey> from;    // child keys (0, 1, or 2 of them)
};

AgentRole mirrored(const AgentRole& s, int self) {
  return {s.role == 1 ? 2 : 1, self, s.resource};
}

Rat own_with_role(const Instance& inst, int agent, const AgentRole& s) {
  Rat value = initial_value(inst, agent);
  if (s.role == 1) {
    value += inst.ext.beta * Rat(inst.utility[agent][s.resource]);
  } else if (s.role == 2) {
    value -= (Rat(1) - inst.ext.alpha) * Rat(inst.utility[agent][s.resource]);
  }
  return value;
}

Rat seen_with_role(const Instance& inst, int viewer, int agent,
                   const AgentRole& s) {
  Rat value = initial_value_through(inst, viewer, agent);
  if (s.role == 1) {
    value += inst.ext.beta * Rat(inst.utility[viewer][s.resource]);
  } else if (s.role == 2) {
    value -= (Rat(1) - inst.ext.alpha) * Rat(inst.utility[viewer][s.resource]);
  }
  return value;
}

// Agents of the bag envious of another bag member under `conf`, as a mask.
std::uint32_t bag_envy_mask(const Instance& inst, const std::vector<int>& bag,
                            const Conf& conf) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < bag.size(); ++i) {
    const Rat own = own_with_role(inst, bag[i], conf[i]);
    for (std::size_t j = 0; j < bag.size() && !(mask >> i & 1); ++j) {
      if (i == j || !inst.attention[bag[i]][bag[j]]) continue;
      if (own < seen_with_role(inst, bag[i], bag[j], conf[j])) {
        mask |= 1u << i;
      }
    }
  }
  return mask;
}

}  // namespace

ErsaOptimum solve_ersa_treewidth(const Instance& inst,
                                 const NiceTreeDecomposition& dec, int k) {
  if (k < 0) throw InputError("negative envy bound k");
  if (inst.ext.budget.has_value()) {
    throw InputError(
        "tree-structured solver does not support sharing budgets (the cost "
        "cap is a global constraint)");
  }
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      if (i != j && inst.attention[i][j] && !inst.sharing[i][j]) {
        throw InputError(
            "tree-structured solver requires every attention arc to run "
            "along a sharing edge");
      }
    }
  }
  {
    const auto issues = validate_nice_decomposition(inst, dec);
    if (!issues.empty()) {
      throw InputError("invalid tree decomposition: " + issues.front());
    }
  }

  // f[node][(conf, mask)] = fewest envious agents among those settled in
  // the node's subtree, over sharings inducing `conf` on the bag whose
  // envious bag members are exactly `mask`. Processed children-first.
  std::vector<std::map<TableKey, TableEntry>> table(dec.nodes.size());
  std::vector<int> topo;
  {
    std::vector<int> stack{dec.root};
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      topo.push_back(t);
      for (int c : dec.nodes[t].children) stack.push_back(c);
    }
    std::reverse(topo.begin(), topo.end());
  }

  for (int t : topo) {
    const auto& node = dec.nodes[t];
    auto& out = table[t];
    const auto relax = [&](TableKey key, TableEntry entry) {
      auto it = out.find(key);
      if (it == out.end()) {
        out.emplace(std::move(key), std::move(entry));
      } else if (entry.count < it->second.count) {
        it->second = std::move(entry);
      }
    };
    switch (node.kind) {
      case NodeKind::kLeaf:
        out[{Conf{}, 0}] = TableEntry{0, {}};
        break;

      case NodeKind::kIntroduce: {
        const int child = node.children[0];
        const int v = node.vertex;
        const auto& bag = node.bag;
        const int pos =
            static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) -
                             bag.begin());
        // Candidate roles for v: idle, receive any neighbour's resource,
        // or give one of its own to any neighbour.
        std::vector<AgentRole> roles{{0, -1, -1}};
        for (int d = 0; d < inst.n; ++d) {
          if (d == v || !inst.sharing[v][d]) continue;
          for (int r : inst.bundle[d]) roles.push_back({1, d, r});
          for (int r : inst.bundle[v]) roles.push_back({2, d, r});
        }
        for (const auto& [child_key, child_entry] : table[child]) {
          const auto& [child_conf, child_mask] = child_key;
          for (const auto& role : roles) {
            // Mirror consistency with in-bag partners, both directions,
            // and one-assignment-per-resource within the bag.
            bool ok = true;
            for (std::size_t i = 0; i < child_conf.size() && ok; ++i) {
              const int agent = bag[static_cast<int>(i) >= pos ? i + 1 : i];
              const auto& other = child_conf[i];
              if (role.role != 0 && role.partner == agent &&
                  other != mirrored(role, v)) {
                ok = false;
              }
              if (other.role != 0 && other.partner == v &&
                  role != mirrored(other, agent)) {
                ok = false;
              }
              if (role.role != 0 && other.role != 0 &&
                  other.resource == role.resource && other.partner != v) {
                ok = false;
              }
            }
            if (!ok) continue;
            Conf conf = child_conf;
            conf.insert(conf.begin() + pos, role);
            const std::uint32_t prior =
                (child_mask & ((1u << pos) - 1)) |
                ((child_mask & ~((1u << pos) - 1)) << 1);
            const std::uint32_t envious = bag_envy_mask(inst, bag, conf);
            const std::uint32_t mask = prior | envious;
            const int count =
                child_entry.count + __builtin_popcount(envious & ~prior);
            relax({std::move(conf), mask}, TableEntry{count, {child_key}});
          }
        }
        break;
      }

      case NodeKind::kForget: {
        const int child = node.children[0];
        const auto& child_bag = dec.nodes[child].bag;
        const int pos = static_cast<int>(
            std::lower_bound(child_bag.begin(), child_bag.end(), node.vertex) -
            child_bag.begin());
        for (const auto& [child_key, child_entry] : table[child]) {
          Conf conf = child_key.first;
          conf.erase(conf.begin() + pos);
          const std::uint32_t below = child_key.second & ((1u << pos) - 1);
          const std::uint32_t above =
              (child_key.second >> (pos + 1)) << pos;
          relax({std::move(conf), below | above},
                TableEntry{child_entry.count, {child_key}});
        }
        break;
      }

      case NodeKind::kJoin: {
        // Equal confs merge; a bag member discovered envious on both sides
        // would be double-counted, and those are exactly the agents in
        // both masks (the subtrees overlap only in the bag).
        const auto& left = table[node.children[0]];
        const auto& right = table[node.children[1]];
        for (const auto& [lk, le] : left) {
          auto it = right.lower_bound({lk.first, 0});
          for (; it != right.end() && it->first.first == lk.first; ++it) {
            const std::uint32_t mask = lk.second | it->first.second;
            const int count = le.count + it->second.count -
                              __builtin_popcount(lk.second & it->first.second);
            relax({lk.first, mask}, TableEntry{count, {lk, it->first}});
          }
        }
        break;
      }
    }
  }

  ErsaOptimum result;
  result.witness.bound = 1;
  const auto& root_table = table[dec.root];
  auto best = root_table.end();
  for (auto it = root_table.begin(); it != root_table.end(); ++it) {
    if (best == root_table.end() || it->second.count < best->second.count) {
      best = it;
    }
  }
  assert(best != root_table.end());  // the all-idle completion always exists
  result.min_envy = best->second.count;
  result.yes = result.min_envy <= k;

  std::set<std::tuple<int, int, int>> triples;
  const std::function<void(int, const TableKey&)> walk =
      [&](int t, const TableKey& key) {
        const auto& node = dec.nodes[t];
        const auto& entry = table[t].at(key);
        switch (node.kind) {
          case NodeKind::kLeaf:
            break;
          case NodeKind::kIntroduce: {
            const auto& bag = node.bag;
            const int pos = static_cast<int>(
                std::lower_bound(bag.begin(), bag.end(), node.vertex) -
                bag.begin());
            const auto& role = key.first[pos];
            if (role.role != 0) {
              triples.emplace(std::min(node.vertex, role.partner),
                              std::max(node.vertex, role.partner),
                              role.resource);
            }
            walk(node.children[0], entry.from[0]);
            break;
          }
          case NodeKind::kForget:
            walk(node.children[0], entry.from[0]);
            break;
          case NodeKind::kJoin:
            walk(node.children[0], entry.from[0]);
            walk(node.children[1], entry.from[1]);
            break;
        }
      };
  walk(dec.root, best->first);
  for (const auto& [u, v, r] : triples) {
    result.witness.assignments.push_back({u, v, r});
  }
  normalize_sharing(result.witness);
#ifndef NDEBUG
  assert(validate_sharing(inst, result.witness).empty());
  assert(static_cast<int>(envious_agents(inst, result.witness).envious.size()) ==
         result.min_envy);
#endif
  return result;
}

}  // namespace sharing
