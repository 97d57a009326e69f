#include "sharing/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sharing/errors.hpp"

namespace sharing {

namespace {

// Normalized (u < v, sorted, duplicate-free) edge list plus an adjacency
// matrix; rejects malformed graphs.
struct CheckedGraph {
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<char>> adjacent;
};

CheckedGraph check_graph(const SourceGraph& graph, const char* where) {
  if (graph.n < 0) {
    throw InputError(std::string(where) + ": negative vertex count");
  }
  CheckedGraph out;
  out.adjacent.assign(graph.n, std::vector<char>(graph.n, 0));
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : graph.edges) {
    if (u < 0 || u >= graph.n || v < 0 || v >= graph.n) {
      throw InputError(std::string(where) + ": edge endpoint out of range");
    }
    if (u == v) {
      throw InputError(std::string(where) + ": loop edge");
    }
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) {
      throw InputError(std::string(where) + ": duplicate edge");
    }
    out.adjacent[u][v] = out.adjacent[v][u] = 1;
  }
  out.edges.assign(seen.begin(), seen.end());
  return out;
}

Instance blank_instance(int agents, int resources) {
  Instance inst;
  inst.n = agents;
  inst.m = resources;
  inst.utility.assign(agents, std::vector<Int>(resources, 0));
  inst.bundle.assign(agents, {});
  inst.sharing.assign(agents, std::vector<char>(agents, 0));
  inst.attention.assign(agents, std::vector<char>(agents, 0));
  return inst;
}

void make_clique(std::vector<std::vector<char>>& matrix) {
  const int n = static_cast<int>(matrix.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) matrix[i][j] = (i != j);
  }
}

void add_arc(Instance& inst, int from, int to) {
  inst.attention[from][to] = 1;
}

void sharing_from_attention(Instance& inst) {
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      if (inst.attention[i][j]) inst.sharing[i][j] = inst.sharing[j][i] = 1;
    }
  }
}

}  // namespace

ErsaGadget gen_independent_set_ersa(const SourceGraph& graph, int set_size) {
  const CheckedGraph g = check_graph(graph, "independent-set gadget");
  const int n = graph.n;
  if (set_size < 1 || set_size > n) {
    throw InputError(
        "independent-set gadget: set size must be between 1 and the vertex "
        "count");
  }

  // Agents: vertices, then set_size-1 providers, then the saturated
  // provider. Resources: vertex resources i, companion resources n+i,
  // provider resources 2n+j, the saturated provider's resource last.
  const int agents = n + set_size;
  const int resources = 2 * n + set_size;
  Instance inst = blank_instance(agents, resources);
  const int saturated = agents - 1;

  for (int i = 0; i < n; ++i) {
    inst.bundle[i] = {i, n + i};
    for (int j = 0; j < n; ++j) {
      inst.utility[i][j] = g.adjacent[i][j] ? 1 : 0;
    }
    for (int r = 2 * n; r < resources; ++r) inst.utility[i][r] = 3;
  }
  for (int p = n; p < saturated; ++p) {
    inst.bundle[p] = {2 * n + (p - n)};
    for (int r = 0; r < 2 * n; ++r) inst.utility[p][r] = 1;
    for (int r = 2 * n; r < resources; ++r) inst.utility[p][r] = 3;
  }
  inst.bundle[saturated] = {resources - 1};
  inst.utility[saturated][resources - 1] = 3;

  make_clique(inst.sharing);
  make_clique(inst.attention);
  finalize_instance(inst);
  return {std::move(inst), n - 1};
}

ErsaGadget gen_3sat_ersa(const CnfFormula& formula) {
  if (formula.variables < 0) {
    throw InputError("3-sat gadget: negative variable count");
  }
  for (const auto& clause : formula.clauses) {
    if (clause.empty()) {
      throw InputError("3-sat gadget: clause with no literals");
    }
    if (clause.size() > 3) {
      throw InputError("3-sat gadget: clause with more than three literals");
    }
    for (const int lit : clause) {
      if (lit == 0 || std::abs(lit) > formula.variables) {
        throw InputError("3-sat gadget: literal outside the variable range");
      }
    }
  }

  const int vars = formula.variables;
  int agents = 2 + 4 * vars;
  int resources = 1 + 3 * vars;
  for (const auto& clause : formula.clauses) {
    agents += 2 * static_cast<int>(clause.size()) + 1;
    resources += 3 * static_cast<int>(clause.size()) + 1;
  }
  Instance inst = blank_instance(agents, resources);

  // One unanimous utility function: resources carry intrinsic values.
  std::vector<Int> value(resources, 0);
  const int leader = 0;
  const int follower = 1;
  const auto true_agent = [](int v) { return 2 + 4 * v; };
  const auto false_agent = [](int v) { return 2 + 4 * v + 1; };

  value[0] = 2;
  inst.bundle[leader] = {0};
  add_arc(inst, follower, leader);

  for (int v = 0; v < vars; ++v) {
    const int rich_dummy = 2 + 4 * v + 2;   // holds the value-3 resource
    const int split_dummy = 2 + 4 * v + 3;  // holds value 1 and value 2
    const int base = 1 + 3 * v;
    value[base] = 3;
    value[base + 1] = 1;
    value[base + 2] = 2;
    inst.bundle[rich_dummy] = {base};
    inst.bundle[split_dummy] = {base + 1, base + 2};
    for (const int dummy : {rich_dummy, split_dummy}) {
      add_arc(inst, dummy, true_agent(v));
      add_arc(inst, dummy, false_agent(v));
    }
    add_arc(inst, true_agent(v), follower);
    add_arc(inst, false_agent(v), follower);
  }

  int next_agent = 2 + 4 * vars;
  int next_resource = 1 + 3 * vars;
  for (const auto& clause : formula.clauses) {
    const int root = next_agent + 2 * static_cast<int>(clause.size());
    for (const int lit : clause) {
      const int donor = next_agent;
      const int recipient = next_agent + 1;
      next_agent += 2;
      value[next_resource] = 1;
      inst.bundle[donor] = {next_resource++};
      value[next_resource] = 1;
      value[next_resource + 1] = 1;
      inst.bundle[recipient] = {next_resource, next_resource + 1};
      next_resource += 2;
      add_arc(inst, recipient, donor);
      add_arc(inst, root, recipient);
      const int v = std::abs(lit) - 1;
      add_arc(inst, recipient, lit > 0 ? true_agent(v) : false_agent(v));
    }
    value[next_resource] = 2;
    inst.bundle[root] = {next_resource++};
    next_agent += 1;
  }

  for (int a = 0; a < agents; ++a) inst.utility[a] = value;
  sharing_from_attention(inst);
  finalize_instance(inst);
  return {std::move(inst), 0};
}

ErsaGadget gen_multicolored_clique_ersa(const SourceGraph& graph,
                                        const std::vector<int>& coloring,
                                        int colors) {
  const CheckedGraph g = check_graph(graph, "multicolored-clique gadget");
  if (colors < 1) {
    throw InputError("multicolored-clique gadget: need at least one color");
  }
  if (static_cast<int>(coloring.size()) != graph.n) {
    throw InputError(
        "multicolored-clique gadget: coloring size differs from the vertex "
        "count");
  }
  std::vector<std::vector<int>> color_class(colors);
  for (int v = 0; v < graph.n; ++v) {
    if (coloring[v] < 0 || coloring[v] >= colors) {
      throw InputError("multicolored-clique gadget: color out of range");
    }
    color_class[coloring[v]].push_back(v);
  }
  if (graph.n % colors != 0) {
    throw InputError("multicolored-clique gadget: unbalanced coloring");
  }
  const int class_size = graph.n / colors;
  for (const auto& members : color_class) {
    if (static_cast<int>(members.size()) != class_size) {
      throw InputError("multicolored-clique gadget: unbalanced coloring");
    }
  }
  for (const auto& [u, v] : g.edges) {
    if (coloring[u] == coloring[v]) {
      throw InputError("multicolored-clique gadget: edge inside a color "
                       "class");
    }
  }

  // Cross-color vertex pairs that are not edges, in ascending
  // (color pair, class position, class position) order.
  struct Forbidden {
    int lo_vertex, hi_vertex;  // endpoints in the lower / higher color
    int lo_color, hi_color;
  };
  std::vector<Forbidden> forbidden;
  for (int i = 0; i < colors; ++i) {
    for (int j = i + 1; j < colors; ++j) {
      for (const int u : color_class[i]) {
        for (const int v : color_class[j]) {
          if (!g.adjacent[u][v]) forbidden.push_back({u, v, i, j});
        }
      }
    }
  }

  const int pairs = static_cast<int>(forbidden.size());
  const int agents = 3 * colors + 2 * pairs;
  const int per_color_resources = 4 + class_size;
  const int resources = colors * per_color_resources + 2 * pairs;
  Instance inst = blank_instance(agents, resources);

  const auto selector = [](int i) { return 3 * i; };
  const auto provider = [](int i) { return 3 * i + 1; };
  const auto dummy = [](int i) { return 3 * i + 2; };
  const auto selector_res = [&](int i, int t) {
    return i * per_color_resources + t;  // t in {0, 1}
  };
  const auto dummy_res = [&](int i, int t) {
    return i * per_color_resources + 2 + t;
  };
  // Vertex resources sit after the selector/dummy block of their color, in
  // class order; map each source vertex to its resource.
  std::vector<int> vertex_res(graph.n, -1);
  for (int i = 0; i < colors; ++i) {
    for (int q = 0; q < class_size; ++q) {
      vertex_res[color_class[i][q]] = i * per_color_resources + 4 + q;
    }
  }
  const int cert_base_agent = 3 * colors;
  const int cert_base_res = colors * per_color_resources;

  for (int i = 0; i < colors; ++i) {
    inst.bundle[selector(i)] = {selector_res(i, 0), selector_res(i, 1)};
    inst.bundle[dummy(i)] = {dummy_res(i, 0), dummy_res(i, 1)};
    for (const int v : color_class[i]) {
      inst.bundle[provider(i)].push_back(vertex_res[v]);
    }
    add_arc(inst, provider(i), selector(i));
    add_arc(inst, selector(i), dummy(i));

    // Selectors value every vertex resource 2 and every dummy resource 1;
    // providers and dummies value nothing.
    for (int v = 0; v < graph.n; ++v) inst.utility[selector(i)][vertex_res[v]] = 2;
    for (int h = 0; h < colors; ++h) {
      inst.utility[selector(i)][dummy_res(h, 0)] = 1;
      inst.utility[selector(i)][dummy_res(h, 1)] = 1;
    }
  }

  for (int t = 0; t < pairs; ++t) {
    const Forbidden& f = forbidden[t];
    const int lo_cert = cert_base_agent + 2 * t;
    const int hi_cert = cert_base_agent + 2 * t + 1;
    const int lo_res = cert_base_res + 2 * t;
    const int hi_res = cert_base_res + 2 * t + 1;
    inst.bundle[lo_cert] = {lo_res};
    inst.bundle[hi_cert] = {hi_res};
    add_arc(inst, hi_cert, lo_cert);
    add_arc(inst, lo_cert, selector(f.lo_color));
    add_arc(inst, hi_cert, selector(f.hi_color));

    for (const auto& [cert, watched, partner_res] :
         {std::tuple{lo_cert, f.lo_vertex, hi_res},
          std::tuple{hi_cert, f.hi_vertex, lo_res}}) {
      for (int v = 0; v < graph.n; ++v) {
        inst.utility[cert][vertex_res[v]] = (v == watched) ? 2 : 1;
      }
      for (int h = 0; h < colors; ++h) {
        inst.utility[cert][selector_res(h, 0)] = 1;
        inst.utility[cert][selector_res(h, 1)] = 1;
      }
      inst.utility[cert][partner_res] = 3;
    }
  }

  sharing_from_attention(inst);
  finalize_instance(inst);
  return {std::move(inst), pairs};
}

ErsaGadget gen_clique_ersa(const SourceGraph& graph, int clique_size) {
  const CheckedGraph g = check_graph(graph, "clique gadget");
  const int n = graph.n;
  const int m = static_cast<int>(g.edges.size());
  if (clique_size < 4 || clique_size >= n) {
    throw InputError(
        "clique gadget: clique size must satisfy 4 <= size < vertex count");
  }
  const int pairs = clique_size * (clique_size - 1) / 2;
  if (pairs > m) {
    throw InputError(
        "clique gadget: the graph has fewer edges than a clique of the "
        "requested size");
  }

  // Vertex agents, edge agents (input edge order after normalization),
  // 2m dummies, then one happy agent per resource.
  const int agents = n + 3 * m + pairs;
  Instance inst = blank_instance(agents, pairs);
  const int edge_base = n;
  const int dummy_base = n + m;
  const int happy_base = n + 3 * m;

  for (int a = 0; a < agents; ++a) {
    for (int r = 0; r < pairs; ++r) inst.utility[a][r] = 1;
  }
  for (int t = 0; t < pairs; ++t) inst.bundle[happy_base + t] = {t};

  for (int e = 0; e < m; ++e) {
    for (int t = 0; t < pairs; ++t) add_arc(inst, edge_base + e, happy_base + t);
    add_arc(inst, g.edges[e].first, edge_base + e);
    add_arc(inst, g.edges[e].second, edge_base + e);
  }
  for (int d = 0; d < 2 * m; ++d) {
    for (int v = 0; v < n; ++v) add_arc(inst, dummy_base + d, v);
  }

  make_clique(inst.sharing);
  finalize_instance(inst);
  return {std::move(inst), m - pairs + clique_size};
}

EwsaGadget gen_n3dm_ewsa(const std::vector<Int>& x, const std::vector<Int>& y,
                         const std::vector<Int>& z, const Int& t) {
  const int m = static_cast<int>(x.size());
  if (m < 1 || y.size() != x.size() || z.size() != x.size()) {
    throw InputError(
        "three-dimensional matching gadget: the three multisets must share "
        "one positive size");
  }
  if (t <= 0) {
    throw InputError("three-dimensional matching gadget: non-positive sum "
                     "target");
  }
  Int total = 0;
  for (const auto* side : {&x, &y, &z}) {
    for (const Int& e : *side) {
      if (e <= 0) {
        throw InputError(
            "three-dimensional matching gadget: elements must be positive");
      }
      if (e >= t) {
        throw InputError(
            "three-dimensional matching gadget: elements must be below the "
            "sum target");
      }
      total += e;
    }
  }
  const Int big = Int(m) * t;  // B
  if (total != big) {
    throw InputError(
        "three-dimensional matching gadget: elements must sum to size * "
        "target");
  }
  const Int target = (big * big + big + 1) * t;

  Instance inst = blank_instance(3 * m, 3 * m);
  for (int i = 0; i < m; ++i) {
    inst.bundle[i] = {i};
    inst.bundle[m + i] = {m + i};
    inst.bundle[2 * m + i] = {2 * m + i};
    for (int a = 0; a < 3 * m; ++a) {
      inst.utility[a][i] = (a == i) ? target : big * big * t + x[i];
      inst.utility[a][m + i] = (a == m + i) ? target : big * t + y[i];
      inst.utility[a][2 * m + i] = (a == 2 * m + i) ? z[i] : Int(0);
    }
  }
  make_clique(inst.sharing);
  finalize_instance(inst);
  return {std::move(inst), 2, target};
}

}  // namespace sharing
