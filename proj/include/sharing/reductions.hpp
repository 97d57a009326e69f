#pragma once

#include <utility>
#include <vector>

#include "sharing/model.hpp"
#include "sharing/numeric.hpp"

namespace sharing {

// Hardness-gadget generators: each one turns an instance of a classic
// combinatorial problem into a sharing-allocation instance whose answer
// matches the source's. They double as a structured test corpus (solve the
// source by brute force, solve the gadget with an exact engine, compare)
// and as a demonstration of what the envy machinery can encode. Every
// generator validates its preconditions with InputError and returns an
// instance that passes the model's structural checks.

// A simple undirected source graph: vertices 0..n-1, edges as unordered
// pairs (loops and duplicates are rejected by the generators).
struct SourceGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

// A CNF formula with at most three literals per clause. Literals use the
// DIMACS convention: +v is variable v, -v its negation, v in 1..variables.
struct CnfFormula {
  int variables = 0;
  std::vector<std::vector<int>> clauses;
};

// A decision gadget: does some simple sharing leave at most k agents
// envious?
struct ErsaGadget {
  Instance instance;
  int k = 0;
};

// A welfare gadget: can a `bound`-bounded sharing raise the egalitarian
// welfare to at least `target`?
struct EwsaGadget {
  Instance instance;
  int bound = 2;
  Int target;
};

// Encodes "does `graph` contain an independent set of `set_size` vertices?".
// Layout: one agent per vertex (agent i = vertex i, holding resources i and
// n+i), then set_size-1 providers (resource 2n+j each), then one saturated
// provider holding resource 2n+set_size-1. A vertex agent values a vertex
// resource 1 exactly when the owning vertex is a neighbor, provider
// resources 3; providers value every vertex-agent resource 1 and provider
// resources 3; the saturated provider only values its own resource. Both
// graphs are cliques and k = n - 1: initially all n vertex agents are
// envious, and one of them can be calmed exactly when enough pairwise
// non-adjacent agents can each take a distinct provider's resource.
// Throws InputError unless 1 <= set_size <= n.
ErsaGadget gen_independent_set_ersa(const SourceGraph& graph, int set_size);

// Encodes satisfiability of `formula` as "can envy be cleared entirely?"
// (k = 0). All agents share one utility function, so resources have
// intrinsic values. Layout: leader (agent 0, one value-2 resource) watched
// by an empty-handed follower (agent 1); per variable, agents 2+4v..2+4v+3:
// a true-agent and a false-agent (empty-handed, both watching the
// follower), a dummy holding a value-3 resource and a dummy holding
// value-1 and value-2 resources, both dummies watching both value agents;
// per clause, consecutive donor (value-1 resource) / recipient (two
// value-1 resources) pairs per literal followed by the clause's root agent
// (value-2 resource): each recipient watches its donor and its literal's
// value agent, the root watches the recipients. The sharing graph is the
// attention graph without directions. Initially exactly the follower is
// envious; clearing it forces every value agent to take a value-2 or
// value-3 resource, and roots stay calm only when some literal's value
// agent took the value-2 one — i.e. when the clause is satisfied.
// Throws InputError on an empty clause, more than three literals in a
// clause, or a literal outside 1..variables.
ErsaGadget gen_3sat_ersa(const CnfFormula& formula);

// Encodes "does `graph` (vertices partitioned into `colors` equal classes,
// edges only across classes) contain a clique with one vertex per color?".
// Layout per color i: selector 3i, provider 3i+1, dummy 3i+2; the provider
// holds one resource per vertex of that color, selector and dummy hold two
// each. Then, for every cross-color vertex pair that is NOT an edge (in
// ascending (color pair, vertex, vertex) order), two certification agents
// holding one resource each. Selectors value vertex resources 2 and dummy
// resources 1; a certification agent values its pair's selector bundle at
// 1 per resource, its watched vertex resource 2 (other vertex resources
// 1), and its partner's resource 3. k = (colors choose 2) * class_size^2 -
// |E|, the number of non-edges: each non-edge pair keeps at least one of
// its two certification agents envious, and all of them can be held to
// exactly one exactly when the selected vertices are pairwise adjacent.
// Throws InputError on unbalanced classes or an intra-class edge.
ErsaGadget gen_multicolored_clique_ersa(const SourceGraph& graph,
                                        const std::vector<int>& coloring,
                                        int colors);

// Encodes "does `graph` contain a clique of `clique_size` vertices?" with
// unit utilities, single-resource initial bundles, and a clique sharing
// graph. Layout: vertex agents 0..n-1, edge agents n..n+m-1 (input edge
// order), 2m dummy agents, then (clique_size choose 2) happy agents each
// holding one unit-value resource. Edge agents watch all happy agents,
// vertex agents watch their incident edge agents, dummies watch all vertex
// agents. k = m - (clique_size choose 2) + clique_size: handing the
// resources to the edge agents of a clique calms (clique_size choose 2)
// edge agents at the price of clique_size newly envious vertex agents, and
// no other shape does better. Throws InputError unless
// 4 <= clique_size < n and (clique_size choose 2) <= m.
ErsaGadget gen_clique_ersa(const SourceGraph& graph, int clique_size);

// Encodes numerical three-dimensional matching: can X, Y, Z (equal-size
// multisets of positive integers below t summing to |X|*t) be split into
// triples, one element from each set, each summing to exactly t? Agents
// 0..m-1 hold one high-value resource each (worth target to the owner,
// B^2*t + x_i to everyone else, B = m*t), agents m..2m-1 one mid-value
// resource (target to the owner, B*t + y_i to others), agents 2m..3m-1 one
// low resource (z_i to the owner, 0 to others); the sharing graph is a
// clique and the egalitarian target is (B^2+B+1)*t, reachable exactly when
// every low agent can be handed one high and one mid resource completing a
// t-sum — two incoming shares, hence the bound of 2. Throws InputError on
// size or sum precondition violations.
EwsaGadget gen_n3dm_ewsa(const std::vector<Int>& x, const std::vector<Int>& y,
                         const std::vector<Int>& z, const Int& t);

}  // namespace sharing
