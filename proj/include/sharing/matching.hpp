#pragma once

#include <utility>
#include <vector>

#include "sharing/numeric.hpp"

namespace sharing {

// Exact matching substrate used by the welfare and envy solvers. All
// weights are arbitrary-precision integers: the reductions that sit on top
// pad graphs with sentinel weights like "sum of all weights plus one", which
// must never overflow or round.

struct WeightedEdge {
  int u = 0;
  int v = 0;
  Int weight{0};
};

struct WeightedGraph {
  int vertex_count = 0;
  std::vector<WeightedEdge> edges;  // u < v, no duplicates, no self-loops
};

// Throws InputError on loops, duplicate edges, bad endpoints or negative
// weights.
void validate_graph(const WeightedGraph& g);

struct Matching {
  std::vector<std::pair<int, int>> edges;  // u < v, sorted
  Int total_weight{0};
  int cardinality = 0;
};

// Maximum total weight over all matchings (not necessarily of maximum
// cardinality: zero-gain edges may be left out). Deterministic: processes
// vertices and edges in index order.
Matching max_weight_matching(const WeightedGraph& g);

// Maximum cardinality matching of a bipartite graph. Edges are (left index,
// right index) pairs; the returned Matching encodes right vertex j as
// left_size + j and counts each edge with weight 1.
Matching max_cardinality_bipartite_matching(
    int left_size, int right_size,
    const std::vector<std::pair<int, int>>& edges);

struct MatchingDecision {
  bool yes = false;
  Matching witness;  // meaningful only when yes
};

// Is there a matching with |M| <= max_size and w(M) >= min_weight?
// Implemented by padding: vertex_count - 2*max_size fresh vertices joined to
// every original vertex at weight (sum of weights + 1) force the optimum to
// leave at most 2*max_size original vertices for original edges; one
// max-weight-matching call then reads off the best size-capped matching.
// max_size larger than vertex_count/2 imposes no constraint and is clamped.
MatchingDecision solve_sbmwm(const WeightedGraph& g, int max_size,
                             const Int& min_weight);

// Is there a matching with w(M) <= max_weight and |M| >= min_size?
// Weights are flipped (w' = max weight - w) so small original weight means
// large flipped weight, then boosted by a constant larger than any flipped
// total so that cardinality dominates, and the same padding bounds the size
// from above by min_size. The padded optimum therefore restricts to the
// minimum-original-weight matching among those of size exactly min_size, if
// any exists; the decision compares that weight against max_weight.
// min_size exceeding vertex_count/2 is an immediate no.
MatchingDecision solve_wbmm(const WeightedGraph& g, const Int& max_weight,
                            int min_size);

}  // namespace sharing
