#pragma once

#include <string>
#include <vector>

#include "sharing/envy.hpp"
#include "sharing/errors.hpp"
#include "sharing/model.hpp"

namespace sharing {

// Envy minimization by dynamic programming over a nice tree decomposition
// of the sharing graph, for instances whose attention graph has the sharing
// graph as its underlying undirected graph. Every attention arc is then
// covered by some bag, so envy can be accounted for locally.

struct NiceTreeDecomposition {
  enum class NodeKind { kLeaf, kIntroduce, kForget, kJoin };

  struct Node {
    NodeKind kind = NodeKind::kLeaf;
    int vertex = -1;            // the agent introduced or forgotten
    std::vector<int> bag;       // ascending agent ids
    std::vector<int> children;  // node indices; 0, 1 or 2 per kind
  };

  std::vector<Node> nodes;
  int root = -1;
  int width = 0;  // max bag size - 1 over all nodes (-1 for an empty tree)
};

// Structural checks; returns human-readable violation strings (empty =
// valid): the nodes form a tree rooted at `root` with the child counts and
// bag deltas their kinds demand (leaf bags empty, introduce/forget change
// the child bag by exactly the named vertex, join children repeat the bag),
// every agent with an incident sharing edge appears in some bag, the bags
// containing any fixed agent form a connected subtree, every sharing edge
// is inside some bag, and `width` matches the bags.
std::vector<std::string> validate_nice_decomposition(
    const Instance& inst, const NiceTreeDecomposition& dec);

// Builds a nice tree decomposition of the sharing graph with an empty root
// bag: a branch-and-bound elimination search yields an optimal-width
// decomposition when the treewidth is at most 4 (and the state space stays
// small), otherwise the min-fill heuristic supplies a valid decomposition
// whose width may exceed the optimum - correctness of the DP never depends
// on optimality, only its running time does.
NiceTreeDecomposition build_nice_decomposition(const Instance& inst);

// Exact minimum number of envious agents over all simple sharings, by a
// bottom-up table per decomposition node. A table key is a bundle
// configuration (per bag agent: idle, receives resource r from a named
// neighbor, or donates resource r to one) plus the subset of bag agents
// envious somewhere in the processed subtree; the value is the least number
// of envious agents in that subtree. Introduce nodes check the new agent's
// state against its partners in the bag, forget nodes drop an agent and
// keep its envy counted, join nodes add tables and subtract the overlap of
// the children's envy subsets. Witnesses are rebuilt by walking the choice
// pointers back down. Loss parameters are supported exactly (both sides of
// an envy comparison live in one bag); cost budgets are not (a budget is a
// global constraint), so budget-carrying instances are rejected. Throws
// InputError on k < 0, a budget, an attention arc that does not run along
// a sharing edge (its envy comparison would cross bags), or an invalid
// decomposition.
ErsaOptimum solve_ersa_treewidth(const Instance& inst,
                                 const NiceTreeDecomposition& dec, int k);

}  // namespace sharing
