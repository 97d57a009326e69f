#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sharing/numeric.hpp"

namespace sharing {

// Loss/cost parameters. Defaults reproduce the base model exactly:
// alpha = beta = 1, all edge costs 0, no budget.
//   alpha — fraction of a shared resource's utility retained by its owner;
//   beta  — fraction gained by the agent it is shared with;
//   edge_cost / budget — per-edge price of activating a sharing and the
//   total amount the authority may spend (no limit when unset).
struct ExtensionParams {
  Rat alpha{1};
  Rat beta{1};
  std::optional<Int> budget;  // nullopt = unbounded
};

// A problem instance: agents 0..n-1, resources 0..m-1, additive integer
// utilities, a complete initial allocation (every resource owned by exactly
// one agent), an undirected sharing graph (who may share with whom) and a
// directed attention graph (who compares itself against whom).
struct Instance {
  int n = 0;
  int m = 0;
  std::vector<std::vector<Int>> utility;   // n x m
  std::vector<std::vector<int>> bundle;    // per agent, sorted resource ids
  std::vector<int> owner;                  // per resource, owning agent
  std::vector<std::vector<char>> sharing;  // n x n, symmetric, no loops
  std::vector<std::vector<char>> attention;  // n x n, attention[i][j] = i -> j
  std::vector<std::vector<Int>> edge_cost;   // n x n, symmetric, defaults 0
  ExtensionParams ext;

  bool base_parameters() const {
    return ext.alpha == 1 && ext.beta == 1 && !ext.budget.has_value();
  }
  std::vector<std::pair<int, int>> sharing_edge_list() const;  // u < v, sorted
  std::vector<int> sharing_neighbors(int a) const;             // ascending
};

// Rebuilds owner[] from bundle[] and zero-fills missing matrices; call after
// constructing an Instance by hand. Throws InputError if the allocation is
// not a partition of the resources.
void finalize_instance(Instance& inst);

// Structural checks beyond what finalize_instance enforces; returns
// human-readable violation strings (empty = valid).
std::vector<std::string> validate_instance(const Instance& inst);

// One activated sharing: resource `resource` travels across sharing edge
// {u, v} (u < v canonically). The donor is always owner(resource); the other
// endpoint is the receiver. The same edge may appear in several assignments
// carrying distinct resources — that is how an agent pair shares more than
// one resource when the per-agent bound allows it.
struct Assignment {
  int u = 0;
  int v = 0;
  int resource = 0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct Sharing {
  int bound = 1;  // per-agent cap on participations (b)
  std::vector<Assignment> assignments;
};

// Canonical order: by edge (u, v), then resource. Solvers emit witnesses in
// this order so fixtures and round-trips are stable.
void normalize_sharing(Sharing& sharing);

enum class ViolationKind {
  kBadIndex,        // agent/resource index out of range
  kEdgeNotInGraph,  // assignment uses a pair that is not a sharing edge
  kOwnership,       // resource owned by neither endpoint
  kTripleAccess,    // resource assigned more than once (would reach 3 bundles)
  kPerAgentBound,   // an agent participates in more than `bound` assignments
};

struct Violation {
  ViolationKind kind;
  std::string detail;
};

const char* violation_kind_name(ViolationKind kind);

// Checks a sharing against an instance. Violations are data, not errors:
// an empty result means the sharing is a valid bound-respecting 2-sharing.
std::vector<Violation> validate_sharing(const Instance& inst,
                                        const Sharing& sharing);

// Per-agent split of the final bundles: kept ∪ donated = initial bundle,
// received = resources shared to the agent. In the base model a donor keeps
// full use of what it shares, so bundles only ever grow.
struct SharingAllocation {
  std::vector<std::vector<int>> kept;
  std::vector<std::vector<int>> received;
  std::vector<std::vector<int>> donated;
};

// Throws InputError when validate_sharing reports violations.
SharingAllocation derive_bundles(const Instance& inst, const Sharing& sharing);

// Value of agent i's own final bundle:
//   sum(kept) + alpha * sum(donated) + beta * sum(received), all through u_i.
Rat own_utility(const Instance& inst, const SharingAllocation& bundles, int i);

// Value of agent j's final bundle through agent i's utility function. The
// envied side mirrors the owner side: j's kept resources count in full, what
// j received counts at weight beta, what j donated at weight alpha.
// Precondition i != j (no self-comparison; graphs have no loops).
Rat perceived_value(const Instance& inst, const SharingAllocation& bundles,
                    int viewer, int about);

struct EnvyReport {
  std::vector<int> envious;  // ascending agent ids
  // witness_arcs[t] = (i, j): envious[t] == i and i values j's bundle above
  // its own across attention arc (i, j).
  std::vector<std::pair<int, int>> witness_arcs;
};

// Agent i is envious iff some attention arc (i, j) points at a bundle i
// values strictly above its own.
EnvyReport envious_agents(const Instance& inst, const Sharing& sharing);

// (utilitarian, egalitarian) = (sum, min) of own_utility over all agents.
std::pair<Rat, Rat> welfare(const Instance& inst, const Sharing& sharing);

// Sum of edge costs over the distinct edges that carry at least one
// assignment (an edge carrying two resources pays once). 0 for the empty
// sharing.
Int sharing_cost(const Instance& inst, const Sharing& sharing);

}  // namespace sharing
