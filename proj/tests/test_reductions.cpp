#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "sharing/envy.hpp"
#include "sharing/errors.hpp"
#include "sharing/model.hpp"
#include "sharing/oracle.hpp"
#include "sharing/reductions.hpp"
#include "sharing/treewidth.hpp"

using namespace sharing;
using helpers::bounded;

namespace {

// ---------------------------------------------------------------------------
// Brute-force answers on the source side. These operate on the original
// combinatorial objects only, never on the generated instances, so agreement
// with a solver run on the gadget checks the whole translation.
// ---------------------------------------------------------------------------

std::vector<std::vector<char>> adjacency(const SourceGraph& g) {
  std::vector<std::vector<char>> adj(g.n, std::vector<char>(g.n, 0));
  for (const auto& [u, v] : g.edges) adj[u][v] = adj[v][u] = 1;
  return adj;
}

std::optional<std::vector<int>> find_independent_set(const SourceGraph& g,
                                                     int size) {
  const auto adj = adjacency(g);
  for (unsigned mask = 0; mask < (1u << g.n); ++mask) {
    if (__builtin_popcount(mask) != size) continue;
    std::vector<int> chosen;
    for (int v = 0; v < g.n; ++v) {
      if (mask & (1u << v)) chosen.push_back(v);
    }
    bool independent = true;
    for (std::size_t a = 0; a < chosen.size() && independent; ++a) {
      for (std::size_t b = a + 1; b < chosen.size(); ++b) {
        if (adj[chosen[a]][chosen[b]]) {
          independent = false;
          break;
        }
      }
    }
    if (independent) return chosen;
  }
  return std::nullopt;
}

std::optional<std::vector<char>> find_satisfying_assignment(
    const CnfFormula& f) {
  for (unsigned mask = 0; mask < (1u << f.variables); ++mask) {
    std::vector<char> assign(f.variables, 0);
    for (int v = 0; v < f.variables; ++v) assign[v] = (mask >> v) & 1u;
    bool ok = true;
    for (const auto& clause : f.clauses) {
      bool satisfied = false;
      for (const int lit : clause) {
        const int v = std::abs(lit) - 1;
        if ((lit > 0) == static_cast<bool>(assign[v])) {
          satisfied = true;
          break;
        }
      }
      if (!satisfied) {
        ok = false;
        break;
      }
    }
    if (ok) return assign;
  }
  return std::nullopt;
}

// One vertex per color class, pairwise adjacent; result indexed by color.
std::optional<std::vector<int>> find_multicolored_clique(
    const SourceGraph& g, const std::vector<int>& coloring, int colors) {
  const auto adj = adjacency(g);
  std::vector<std::vector<int>> classes(colors);
  for (int v = 0; v < g.n; ++v) classes[coloring[v]].push_back(v);
  std::vector<int> pick(colors, 0);
  while (true) {
    std::vector<int> chosen(colors);
    for (int i = 0; i < colors; ++i) chosen[i] = classes[i][pick[i]];
    bool clique = true;
    for (int i = 0; i < colors && clique; ++i) {
      for (int j = i + 1; j < colors; ++j) {
        if (!adj[chosen[i]][chosen[j]]) {
          clique = false;
          break;
        }
      }
    }
    if (clique) return chosen;
    int at = colors - 1;
    while (at >= 0 &&
           pick[at] + 1 == static_cast<int>(classes[at].size())) {
      pick[at--] = 0;
    }
    if (at < 0) return std::nullopt;
    ++pick[at];
  }
}

std::optional<std::vector<int>> find_clique(const SourceGraph& g, int size) {
  const auto adj = adjacency(g);
  for (unsigned mask = 0; mask < (1u << g.n); ++mask) {
    if (__builtin_popcount(mask) != size) continue;
    std::vector<int> chosen;
    for (int v = 0; v < g.n; ++v) {
      if (mask & (1u << v)) chosen.push_back(v);
    }
    bool clique = true;
    for (std::size_t a = 0; a < chosen.size() && clique; ++a) {
      for (std::size_t b = a + 1; b < chosen.size(); ++b) {
        if (!adj[chosen[a]][chosen[b]]) {
          clique = false;
          break;
        }
      }
    }
    if (clique) return chosen;
  }
  return std::nullopt;
}

bool n3dm_has_matching(const std::vector<Int>& x, const std::vector<Int>& y,
                       const std::vector<Int>& z, const Int& t) {
  const int m = static_cast<int>(x.size());
  std::vector<int> sigma(m), tau(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    std::iota(tau.begin(), tau.end(), 0);
    do {
      bool ok = true;
      for (int i = 0; i < m; ++i) {
        if (x[i] + y[sigma[i]] + z[tau[i]] != t) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    } while (std::next_permutation(tau.begin(), tau.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return false;
}

// ---------------------------------------------------------------------------
// Forward-direction witnesses: turn a solution of the source problem into a
// simple sharing on the gadget and let envious_agents measure the result.
// Layout arithmetic deliberately mirrors the generators.
// ---------------------------------------------------------------------------

int count_envious(const Instance& inst, const Sharing& sharing) {
  return static_cast<int>(envious_agents(inst, sharing).envious.size());
}

// The i-th chosen vertex receives the i-th provider-block resource.
Sharing independent_set_witness(int n, const std::vector<int>& chosen) {
  Sharing s;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const int provider = n + static_cast<int>(i);
    const int res = 2 * n + static_cast<int>(i);
    s.assignments.push_back({std::min(chosen[i], provider),
                             std::max(chosen[i], provider), res});
  }
  normalize_sharing(s);
  return s;
}

// Follower takes the leader's resource; the value agent matching the
// assignment takes the 2-valued resource and its sibling the 3-valued one;
// in every clause one satisfied literal's recipient feeds the root and each
// falsified literal's recipient absorbs its donor's resource.
Sharing satisfying_witness(const CnfFormula& f,
                           const std::vector<char>& assign) {
  Sharing s;
  s.assignments.push_back({0, 1, 0});
  for (int v = 0; v < f.variables; ++v) {
    const int true_agent = 2 + 4 * v;
    const int false_agent = 2 + 4 * v + 1;
    const int rich_dummy = 2 + 4 * v + 2;
    const int split_dummy = 2 + 4 * v + 3;
    const int three_res = 1 + 3 * v;
    const int two_res = 1 + 3 * v + 2;
    const int gets_two = assign[v] ? true_agent : false_agent;
    const int gets_three = assign[v] ? false_agent : true_agent;
    s.assignments.push_back(
        {std::min(gets_two, split_dummy), std::max(gets_two, split_dummy),
         two_res});
    s.assignments.push_back(
        {std::min(gets_three, rich_dummy), std::max(gets_three, rich_dummy),
         three_res});
  }
  int next_agent = 2 + 4 * f.variables;
  int next_resource = 1 + 3 * f.variables;
  for (const auto& clause : f.clauses) {
    const int root = next_agent + 2 * static_cast<int>(clause.size());
    bool fed_root = false;
    for (const int lit : clause) {
      const int donor = next_agent;
      const int recipient = next_agent + 1;
      const int donor_res = next_resource;
      const int first_own = next_resource + 1;
      next_agent += 2;
      next_resource += 3;
      const int v = std::abs(lit) - 1;
      const bool literal_true = (lit > 0) == static_cast<bool>(assign[v]);
      if (literal_true && !fed_root) {
        s.assignments.push_back({recipient, root, first_own});
        fed_root = true;
      } else if (!literal_true) {
        s.assignments.push_back({donor, recipient, donor_res});
      }
    }
    next_resource += 1;  // the root's own resource
    next_agent += 1;
  }
  normalize_sharing(s);
  return s;
}

// Providers hand the selected vertex resources to their selectors; in every
// forbidden pair the certifier whose watched endpoint stayed unselected
// receives its partner's resource.
Sharing multicolored_clique_witness(const SourceGraph& g,
                                    const std::vector<int>& coloring,
                                    int colors,
                                    const std::vector<int>& chosen) {
  const auto adj = adjacency(g);
  std::vector<std::vector<int>> classes(colors);
  for (int v = 0; v < g.n; ++v) classes[coloring[v]].push_back(v);
  const int class_size = g.n / colors;
  const int per_color = 4 + class_size;
  std::vector<int> vertex_res(g.n, -1);
  for (int i = 0; i < colors; ++i) {
    for (int q = 0; q < class_size; ++q) {
      vertex_res[classes[i][q]] = i * per_color + 4 + q;
    }
  }
  Sharing s;
  for (int i = 0; i < colors; ++i) {
    s.assignments.push_back({3 * i, 3 * i + 1, vertex_res[chosen[i]]});
  }
  const int cert_base_agent = 3 * colors;
  const int cert_base_res = colors * per_color;
  int t = 0;
  for (int i = 0; i < colors; ++i) {
    for (int j = i + 1; j < colors; ++j) {
      for (const int u : classes[i]) {
        for (const int v : classes[j]) {
          if (adj[u][v]) continue;
          const int lo_cert = cert_base_agent + 2 * t;
          const int hi_cert = cert_base_agent + 2 * t + 1;
          const int lo_res = cert_base_res + 2 * t;
          const int hi_res = cert_base_res + 2 * t + 1;
          // A forbidden pair never has both endpoints selected. Rescue the
          // certifier on the unselected side; with neither selected either
          // one works and the lower donates.
          if (chosen[j] == v) {
            s.assignments.push_back({lo_cert, hi_cert, hi_res});
          } else {
            s.assignments.push_back({lo_cert, hi_cert, lo_res});
          }
          ++t;
        }
      }
    }
  }
  normalize_sharing(s);
  return s;
}

// Each happy agent hands its resource to one edge agent of the clique.
Sharing clique_cover_witness(const SourceGraph& g,
                             const std::vector<int>& clique) {
  std::vector<std::pair<int, int>> edges = g.edges;
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  const std::set<int> in_clique(clique.begin(), clique.end());
  const int n = g.n;
  const int m = static_cast<int>(edges.size());
  const int happy_base = n + 3 * m;
  Sharing s;
  int t = 0;
  for (int e = 0; e < m; ++e) {
    if (in_clique.count(edges[e].first) && in_clique.count(edges[e].second)) {
      s.assignments.push_back({n + e, happy_base + t, t});
      ++t;
    }
  }
  normalize_sharing(s);
  return s;
}

// ---------------------------------------------------------------------------
// Random source generators for the soundness corpora.
// ---------------------------------------------------------------------------

SourceGraph random_source_graph(std::mt19937_64& gen, int n, int percent) {
  SourceGraph g;
  g.n = n;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (bounded(gen, 1, 100) <= percent) g.edges.push_back({u, v});
    }
  }
  return g;
}

CnfFormula random_formula(std::mt19937_64& gen, int max_vars,
                          int max_clauses) {
  CnfFormula f;
  f.variables = bounded(gen, 1, max_vars);
  const int clauses = bounded(gen, 1, max_clauses);
  for (int c = 0; c < clauses; ++c) {
    std::vector<int> clause;
    const int lits = bounded(gen, 1, 3);
    for (int l = 0; l < lits; ++l) {
      const int v = bounded(gen, 1, f.variables);
      clause.push_back(bounded(gen, 0, 1) ? v : -v);
    }
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

}  // namespace

// ===========================================================================
// Independent set -> envy-bounded sharing
// ===========================================================================

TEST_CASE("independent-set gadget: structure and pinned decisions") {
  SUBCASE("two isolated vertices admit a sharing with one envious agent") {
    const SourceGraph g{2, {}};
    const ErsaGadget gadget = gen_independent_set_ersa(g, 2);
    CHECK(gadget.instance.n == 4);
    CHECK(gadget.instance.m == 6);
    CHECK(gadget.k == 1);
    CHECK(validate_instance(gadget.instance).empty());

    // Before any sharing exactly the vertex agents are envious.
    const EnvyReport initial = envious_agents(gadget.instance, Sharing{});
    CHECK(initial.envious == std::vector<int>{0, 1});

    const EnvyOptimum opt = min_envy_bruteforce(gadget.instance, 1);
    CHECK(opt.envy_count == 1);

    const Sharing witness = independent_set_witness(2, {0, 1});
    REQUIRE(validate_sharing(gadget.instance, witness).empty());
    CHECK(count_envious(gadget.instance, witness) == 1);
  }

  SUBCASE("a triangle has no independent pair, so envy stays above n-1") {
    const SourceGraph g{3, {{0, 1}, {1, 2}, {0, 2}}};
    const ErsaGadget gadget = gen_independent_set_ersa(g, 2);
    CHECK(gadget.instance.n == 5);
    CHECK(gadget.instance.m == 8);
    CHECK(gadget.k == 2);

    const EnvyOptimum opt = min_envy_bruteforce(gadget.instance, 1);
    CHECK(opt.envy_count > gadget.k);
    CHECK_FALSE(
        solve_ersa_bounded_shared(gadget.instance, gadget.k, 2).yes);
  }

  SUBCASE("set size one always works with a single saturated provider") {
    const SourceGraph g{3, {{0, 1}, {1, 2}, {0, 2}}};
    const ErsaGadget gadget = gen_independent_set_ersa(g, 1);
    CHECK(gadget.instance.n == 4);
    CHECK(gadget.instance.m == 7);
    const Sharing witness = independent_set_witness(3, {1});
    REQUIRE(validate_sharing(gadget.instance, witness).empty());
    CHECK(count_envious(gadget.instance, witness) == gadget.k);
  }
}

TEST_CASE("independent-set gadget: random sources agree with the solver") {
  std::mt19937_64 gen(4242);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = bounded(gen, 2, 4);
    const SourceGraph g = random_source_graph(gen, n, bounded(gen, 0, 100));
    const int set_size = bounded(gen, 1, n);
    const ErsaGadget gadget = gen_independent_set_ersa(g, set_size);

    CAPTURE(trial);
    CAPTURE(n);
    CAPTURE(set_size);
    REQUIRE(gadget.instance.n == n + set_size);
    REQUIRE(gadget.instance.m == 2 * n + set_size);
    REQUIRE(gadget.k == n - 1);
    REQUIRE(validate_instance(gadget.instance).empty());
    REQUIRE(count_envious(gadget.instance, Sharing{}) == n);

    const auto chosen = find_independent_set(g, set_size);
    const int cap = gadget.instance.n / 2;
    const ErsaResult res =
        solve_ersa_bounded_shared(gadget.instance, gadget.k, cap);
    REQUIRE(res.yes == chosen.has_value());
    if (chosen.has_value()) {
      REQUIRE(count_envious(gadget.instance, res.witness) <= gadget.k);
      const Sharing witness = independent_set_witness(n, *chosen);
      REQUIRE(validate_sharing(gadget.instance, witness).empty());
      REQUIRE(count_envious(gadget.instance, witness) == gadget.k);
    }
  }
}

TEST_CASE("independent-set gadget: input validation") {
  const SourceGraph ok{3, {{0, 1}}};
  CHECK_THROWS_AS(gen_independent_set_ersa(ok, 0), InputError);
  CHECK_THROWS_AS(gen_independent_set_ersa(ok, 4), InputError);
  CHECK_THROWS_AS(gen_independent_set_ersa({3, {{0, 0}}}, 2), InputError);
  CHECK_THROWS_AS(gen_independent_set_ersa({3, {{0, 3}}}, 2), InputError);
  CHECK_THROWS_AS(gen_independent_set_ersa({3, {{0, 1}, {1, 0}}}, 2),
                  InputError);
  CHECK_THROWS_AS(gen_independent_set_ersa({-1, {}}, 1), InputError);
}

// ===========================================================================
// 3-CNF satisfiability -> zero-envy sharing
// ===========================================================================

TEST_CASE("satisfiability gadget: structure and pinned formulas") {
  SUBCASE("a single satisfiable clause admits an envy-free sharing") {
    const CnfFormula f{3, {{1, 2, 3}}};
    const ErsaGadget gadget = gen_3sat_ersa(f);
    CHECK(gadget.instance.n == 2 + 12 + 7);
    CHECK(gadget.instance.m == 1 + 9 + 10);
    CHECK(gadget.k == 0);
    CHECK(validate_instance(gadget.instance).empty());

    // Only the empty-handed follower is envious at the start.
    const EnvyReport initial = envious_agents(gadget.instance, Sharing{});
    CHECK(initial.envious == std::vector<int>{1});

    const Sharing witness = satisfying_witness(f, {1, 1, 1});
    REQUIRE(validate_sharing(gadget.instance, witness).empty());
    CHECK(count_envious(gadget.instance, witness) == 0);

    const NiceTreeDecomposition dec =
        build_nice_decomposition(gadget.instance);
    REQUIRE(validate_nice_decomposition(gadget.instance, dec).empty());
    CHECK(solve_ersa_treewidth(gadget.instance, dec, 0).yes);
  }

  SUBCASE("a contradiction pair stays envious under every simple sharing") {
    const CnfFormula f{1, {{1}, {-1}}};
    const ErsaGadget gadget = gen_3sat_ersa(f);
    CHECK(gadget.instance.n == 2 + 4 + 3 + 3);
    CHECK(gadget.instance.m == 1 + 3 + 4 + 4);
    CHECK_FALSE(solve_ersa_fpt_agents(gadget.instance, 0).yes);

    const NiceTreeDecomposition dec =
        build_nice_decomposition(gadget.instance);
    REQUIRE(validate_nice_decomposition(gadget.instance, dec).empty());
    CHECK_FALSE(solve_ersa_treewidth(gadget.instance, dec, 0).yes);
  }

  SUBCASE("a formula with no clauses only needs the leader's donation") {
    const CnfFormula f{1, {}};
    const ErsaGadget gadget = gen_3sat_ersa(f);
    CHECK(gadget.instance.n == 6);
    const Sharing witness = satisfying_witness(f, {0});
    REQUIRE(validate_sharing(gadget.instance, witness).empty());
    CHECK(count_envious(gadget.instance, witness) == 0);
  }
}

TEST_CASE("satisfiability gadget: random formulas agree with the solver") {
  std::mt19937_64 gen(91199);
  for (int trial = 0; trial < 25; ++trial) {
    const CnfFormula f = random_formula(gen, 2, 2);
    const ErsaGadget gadget = gen_3sat_ersa(f);

    CAPTURE(trial);
    int literals = 0;
    for (const auto& clause : f.clauses) {
      literals += static_cast<int>(clause.size());
    }
    REQUIRE(gadget.instance.n ==
            2 + 4 * f.variables + 2 * literals +
                static_cast<int>(f.clauses.size()));
    REQUIRE(gadget.instance.m ==
            1 + 3 * f.variables + 3 * literals +
                static_cast<int>(f.clauses.size()));
    REQUIRE(validate_instance(gadget.instance).empty());
    REQUIRE(envious_agents(gadget.instance, Sharing{}).envious ==
            std::vector<int>{1});

    const auto assign = find_satisfying_assignment(f);
    const NiceTreeDecomposition dec =
        build_nice_decomposition(gadget.instance);
    REQUIRE(validate_nice_decomposition(gadget.instance, dec).empty());
    const ErsaOptimum res = solve_ersa_treewidth(gadget.instance, dec, 0);
    REQUIRE(res.yes == assign.has_value());
    if (assign.has_value()) {
      REQUIRE(res.min_envy == 0);
      const Sharing witness = satisfying_witness(f, *assign);
      REQUIRE(validate_sharing(gadget.instance, witness).empty());
      REQUIRE(count_envious(gadget.instance, witness) == 0);
    }
  }
}

TEST_CASE("satisfiability gadget: input validation") {
  CHECK_THROWS_AS(gen_3sat_ersa({1, {{}}}), InputError);
  CHECK_THROWS_AS(gen_3sat_ersa({2, {{1, 2, -1, -2}}}), InputError);
  CHECK_THROWS_AS(gen_3sat_ersa({2, {{0}}}), InputError);
  CHECK_THROWS_AS(gen_3sat_ersa({2, {{3}}}), InputError);
  CHECK_THROWS_AS(gen_3sat_ersa({-1, {}}), InputError);
}

// ===========================================================================
// Multicolored clique -> envy-bounded sharing
// ===========================================================================

TEST_CASE("multicolored-clique gadget: structure and pinned decisions") {
  const std::vector<int> coloring{0, 0, 1, 1};

  SUBCASE("a single cross edge forms the clique and meets the bound") {
    const SourceGraph g{4, {{0, 2}}};
    const ErsaGadget gadget = gen_multicolored_clique_ersa(g, coloring, 2);
    const int pairs = 3;  // four cross pairs, one of them an edge
    CHECK(gadget.k == pairs);
    CHECK(gadget.instance.n == 6 + 2 * pairs);
    CHECK(gadget.instance.m == 2 * 6 + 2 * pairs);
    CHECK(validate_instance(gadget.instance).empty());

    // Selectors and certifiers all start envious.
    CHECK(count_envious(gadget.instance, Sharing{}) == 2 + 2 * pairs);

    const Sharing witness =
        multicolored_clique_witness(g, coloring, 2, {0, 2});
    REQUIRE(validate_sharing(gadget.instance, witness).empty());
    CHECK(count_envious(gadget.instance, witness) == gadget.k);

    const NiceTreeDecomposition dec =
        build_nice_decomposition(gadget.instance);
    REQUIRE(validate_nice_decomposition(gadget.instance, dec).empty());
    CHECK(solve_ersa_treewidth(gadget.instance, dec, gadget.k).yes);
  }

  SUBCASE("with no edges at all the bound is unreachable") {
    const SourceGraph g{4, {}};
    const ErsaGadget gadget = gen_multicolored_clique_ersa(g, coloring, 2);
    CHECK(gadget.k == 4);
    const NiceTreeDecomposition dec =
        build_nice_decomposition(gadget.instance);
    REQUIRE(validate_nice_decomposition(gadget.instance, dec).empty());
    CHECK_FALSE(solve_ersa_treewidth(gadget.instance, dec, gadget.k).yes);
  }

  SUBCASE("singleton classes cross-checked with the target-set solver") {
    const SourceGraph edge{2, {{0, 1}}};
    const ErsaGadget yes = gen_multicolored_clique_ersa(edge, {0, 1}, 2);
    CHECK(yes.k == 0);
    CHECK(solve_ersa_fpt_agents(yes.instance, yes.k).yes);

    const SourceGraph bare{2, {}};
    const ErsaGadget no = gen_multicolored_clique_ersa(bare, {0, 1}, 2);
    CHECK(no.k == 1);
    CHECK_FALSE(solve_ersa_fpt_agents(no.instance, no.k).yes);
  }
}

TEST_CASE("multicolored-clique gadget: random sources agree with the solver") {
  std::mt19937_64 gen(5511);
  for (int trial = 0; trial < 25; ++trial) {
    const int colors = trial % 5 == 4 ? 3 : 2;
    const int class_size = colors == 3 ? 1 : bounded(gen, 1, 2);
    const int n = colors * class_size;
    std::vector<int> coloring(n);
    for (int v = 0; v < n; ++v) coloring[v] = v / class_size;
    SourceGraph g;
    g.n = n;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (coloring[u] != coloring[v] && bounded(gen, 0, 1)) {
          g.edges.push_back({u, v});
        }
      }
    }
    const ErsaGadget gadget =
        gen_multicolored_clique_ersa(g, coloring, colors);

    CAPTURE(trial);
    CAPTURE(colors);
    CAPTURE(class_size);
    const int cross_pairs =
        colors * (colors - 1) / 2 * class_size * class_size;
    const int pairs = cross_pairs - static_cast<int>(g.edges.size());
    REQUIRE(gadget.k == pairs);
    REQUIRE(gadget.instance.n == 3 * colors + 2 * pairs);
    REQUIRE(gadget.instance.m ==
            colors * (4 + class_size) + 2 * pairs);
    REQUIRE(validate_instance(gadget.instance).empty());
    REQUIRE(count_envious(gadget.instance, Sharing{}) == colors + 2 * pairs);

    const auto chosen = find_multicolored_clique(g, coloring, colors);
    const NiceTreeDecomposition dec =
        build_nice_decomposition(gadget.instance);
    REQUIRE(validate_nice_decomposition(gadget.instance, dec).empty());
    const ErsaOptimum res =
        solve_ersa_treewidth(gadget.instance, dec, gadget.k);
    REQUIRE(res.yes == chosen.has_value());
    if (chosen.has_value()) {
      const Sharing witness =
          multicolored_clique_witness(g, coloring, colors, *chosen);
      REQUIRE(validate_sharing(gadget.instance, witness).empty());
      REQUIRE(count_envious(gadget.instance, witness) == gadget.k);
    }
  }
}

TEST_CASE("multicolored-clique gadget: input validation") {
  const SourceGraph g{4, {{0, 2}}};
  CHECK_THROWS_AS(gen_multicolored_clique_ersa(g, {0, 0, 1}, 2), InputError);
  CHECK_THROWS_AS(gen_multicolored_clique_ersa(g, {0, 0, 1, 2}, 2),
                  InputError);
  CHECK_THROWS_AS(gen_multicolored_clique_ersa(g, {0, 0, 0, 1}, 2),
                  InputError);
  CHECK_THROWS_AS(gen_multicolored_clique_ersa(g, {0, 0, 1, 1}, 0),
                  InputError);
  const SourceGraph intra{4, {{0, 1}}};
  CHECK_THROWS_AS(gen_multicolored_clique_ersa(intra, {0, 0, 1, 1}, 2),
                  InputError);
}

// ===========================================================================
// Clique -> envy-bounded sharing with unit resources
// ===========================================================================

TEST_CASE("clique gadget: structure and pinned decisions") {
  SUBCASE("a four-clique plus an isolated vertex meets the bound exactly") {
    const SourceGraph g{
        5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    const ErsaGadget gadget = gen_clique_ersa(g, 4);
    CHECK(gadget.instance.n == 5 + 18 + 6);
    CHECK(gadget.instance.m == 6);
    CHECK(gadget.k == 6 - 6 + 4);
    CHECK(validate_instance(gadget.instance).empty());

    // The edge agents are exactly the initially envious ones.
    const EnvyReport initial = envious_agents(gadget.instance, Sharing{});
    REQUIRE(initial.envious.size() == 6);
    CHECK(initial.envious.front() == 5);
    CHECK(initial.envious.back() == 10);

    const auto clique = find_clique(g, 4);
    REQUIRE(clique.has_value());
    const Sharing witness = clique_cover_witness(g, *clique);
    REQUIRE(witness.assignments.size() == 6);
    REQUIRE(validate_sharing(gadget.instance, witness).empty());
    CHECK(count_envious(gadget.instance, witness) == gadget.k);

    CHECK(solve_ersa_bounded_shared(gadget.instance, gadget.k, 6).yes);
  }

  SUBCASE("a house graph has six edges but no four-clique") {
    const SourceGraph g{
        5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {1, 4}}};
    REQUIRE_FALSE(find_clique(g, 4).has_value());
    const ErsaGadget gadget = gen_clique_ersa(g, 4);
    CHECK(gadget.k == 4);
    CHECK_FALSE(solve_ersa_bounded_shared(gadget.instance, gadget.k, 6).yes);
  }

  SUBCASE("a five-cycle cannot even pay for the happy agents") {
    const SourceGraph g{5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}};
    CHECK_THROWS_AS(gen_clique_ersa(g, 4), InputError);
  }
}

TEST_CASE("clique gadget: random graphs agree with the solver") {
  std::mt19937_64 gen(2026);
  int yes_seen = 0;
  int no_seen = 0;
  // Alternate planted four-cliques (fast yes answers) with sparse six-edge
  // draws (cheap no answers); the denser no-instances run in the
  // long-running acceptance corpus instead.
  for (int trial = 0; trial < 10; ++trial) {
    SourceGraph g;
    g.n = 5;
    if (trial % 2 == 0) {
      const int skip = bounded(gen, 0, 4);
      std::vector<int> quad;
      for (int v = 0; v < 5; ++v) {
        if (v != skip) quad.push_back(v);
      }
      for (std::size_t a = 0; a < quad.size(); ++a) {
        for (std::size_t b = a + 1; b < quad.size(); ++b) {
          g.edges.push_back({quad[a], quad[b]});
        }
      }
      g.edges.push_back({skip, quad[bounded(gen, 0, 3)]});
    } else {
      do {
        g.edges.clear();
        for (int u = 0; u < 5; ++u) {
          for (int v = u + 1; v < 5; ++v) {
            if (bounded(gen, 1, 100) <= 60) g.edges.push_back({u, v});
          }
        }
      } while (g.edges.size() != 6);
    }
    const int m = static_cast<int>(g.edges.size());
    const ErsaGadget gadget = gen_clique_ersa(g, 4);

    CAPTURE(trial);
    CAPTURE(m);
    REQUIRE(gadget.instance.n == 5 + 3 * m + 6);
    REQUIRE(gadget.instance.m == 6);
    REQUIRE(gadget.k == m - 6 + 4);
    REQUIRE(validate_instance(gadget.instance).empty());
    REQUIRE(count_envious(gadget.instance, Sharing{}) == m);

    const auto clique = find_clique(g, 4);
    const ErsaResult res =
        solve_ersa_bounded_shared(gadget.instance, gadget.k, 6);
    REQUIRE(res.yes == clique.has_value());
    if (clique.has_value()) {
      ++yes_seen;
      const Sharing witness = clique_cover_witness(g, *clique);
      REQUIRE(validate_sharing(gadget.instance, witness).empty());
      REQUIRE(count_envious(gadget.instance, witness) == gadget.k);
    } else {
      ++no_seen;
    }
  }
  REQUIRE(yes_seen >= 3);
  REQUIRE(no_seen >= 3);
}

TEST_CASE("clique gadget: input validation") {
  const SourceGraph g{
      5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  CHECK_THROWS_AS(gen_clique_ersa(g, 3), InputError);
  CHECK_THROWS_AS(gen_clique_ersa(g, 5), InputError);
  CHECK_THROWS_AS(gen_clique_ersa({6, {{0, 1}, {1, 1}}}, 4), InputError);
}

// ===========================================================================
// Numerical three-dimensional matching -> egalitarian welfare at bound two
// ===========================================================================

TEST_CASE("three-dimensional matching gadget: pinned instances") {
  SUBCASE("the singleton instance reaches its target exactly") {
    const EwsaGadget gadget = gen_n3dm_ewsa({1}, {1}, {1}, 3);
    CHECK(gadget.bound == 2);
    CHECK(gadget.target == Int(39));  // (9 + 3 + 1) * 3
    CHECK(gadget.instance.n == 3);
    CHECK(gadget.instance.m == 3);
    CHECK(validate_instance(gadget.instance).empty());

    const WelfareOptimum opt = max_welfare_bruteforce(gadget.instance, 2);
    CHECK(opt.egalitarian == Rat(39));
    CHECK(opt.egalitarian < Rat(40));
  }

  SUBCASE("a pair instance without any valid triple stays short") {
    // 1+1+1 = 3 and 3+1+1 = 5 never hit the target sum 4.
    const EwsaGadget gadget = gen_n3dm_ewsa({1, 3}, {1, 1}, {1, 1}, 4);
    REQUIRE_FALSE(n3dm_has_matching({1, 3}, {1, 1}, {1, 1}, 4));
    const WelfareOptimum opt = max_welfare_bruteforce(gadget.instance, 2);
    CHECK(opt.egalitarian < Rat(gadget.target));
  }
}

TEST_CASE("three-dimensional matching gadget: random multisets") {
  std::mt19937_64 gen(777);

  SUBCASE("constructed yes-instances reach the target exactly") {
    for (int trial = 0; trial < 12; ++trial) {
      const int m = bounded(gen, 1, 2);
      const int t = bounded(gen, 3, 6);
      std::vector<Int> x, y, z;
      for (int i = 0; i < m; ++i) {
        const int xi = bounded(gen, 1, t - 2);
        const int yi = bounded(gen, 1, t - 1 - xi);
        x.push_back(xi);
        y.push_back(yi);
        z.push_back(t - xi - yi);
      }
      std::shuffle(y.begin(), y.end(), gen);
      std::shuffle(z.begin(), z.end(), gen);
      REQUIRE(n3dm_has_matching(x, y, z, t));

      const EwsaGadget gadget = gen_n3dm_ewsa(x, y, z, t);
      CAPTURE(trial);
      CAPTURE(m);
      CAPTURE(t);
      const Int big = Int(m) * t;
      REQUIRE(gadget.target == (big * big + big + 1) * t);
      REQUIRE(gadget.instance.n == 3 * m);
      REQUIRE(gadget.instance.m == 3 * m);
      const WelfareOptimum opt = max_welfare_bruteforce(gadget.instance, 2);
      REQUIRE(opt.egalitarian == Rat(gadget.target));
    }
  }

  SUBCASE("rejection-sampled instances agree in both directions") {
    int checked = 0, negatives = 0;
    for (int attempt = 0; attempt < 400 && checked < 10; ++attempt) {
      const int m = 2;
      const int t = bounded(gen, 4, 6);
      std::vector<int> flat;
      int total = 0;
      for (int i = 0; i < 3 * m - 1; ++i) {
        flat.push_back(bounded(gen, 1, t - 1));
        total += flat.back();
      }
      const int last = m * t - total;
      if (last < 1 || last >= t) continue;
      flat.push_back(last);
      const std::vector<Int> x{flat[0], flat[1]};
      const std::vector<Int> y{flat[2], flat[3]};
      const std::vector<Int> z{flat[4], flat[5]};
      ++checked;
      const bool solvable = n3dm_has_matching(x, y, z, t);
      negatives += solvable ? 0 : 1;

      const EwsaGadget gadget = gen_n3dm_ewsa(x, y, z, t);
      CAPTURE(attempt);
      CAPTURE(t);
      const WelfareOptimum opt = max_welfare_bruteforce(gadget.instance, 2);
      REQUIRE(opt.egalitarian <= Rat(gadget.target));
      REQUIRE((opt.egalitarian == Rat(gadget.target)) == solvable);
    }
    REQUIRE(checked == 10);
    REQUIRE(negatives > 0);  // the sample must exercise the no-side
  }
}

TEST_CASE("three-dimensional matching gadget: input validation") {
  CHECK_THROWS_AS(gen_n3dm_ewsa({}, {}, {}, 3), InputError);
  CHECK_THROWS_AS(gen_n3dm_ewsa({1}, {1, 2}, {1}, 3), InputError);
  CHECK_THROWS_AS(gen_n3dm_ewsa({1}, {1}, {1}, 0), InputError);
  // Sum 6 over one triple needs target 6, not 3.
  CHECK_THROWS_AS(gen_n3dm_ewsa({2}, {2}, {2}, 3), InputError);
  // An element equal to the target sum cannot sit in any triple.
  CHECK_THROWS_AS(gen_n3dm_ewsa({1}, {1}, {3}, 3), InputError);
  // Zero elements are rejected before the sum check.
  CHECK_THROWS_AS(gen_n3dm_ewsa({0, 2}, {1, 1}, {1, 1}, 3), InputError);
}
