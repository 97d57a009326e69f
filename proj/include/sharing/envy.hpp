#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sharing/errors.hpp"
#include "sharing/model.hpp"
#include "sharing/numeric.hpp"

namespace sharing {

// Envy-minimization solvers. The central question ("can a simple sharing
// leave at most k agents envious?") is NP-hard in general, so this module
// offers one exact engine per structural escape hatch: a fixed-parameter
// search over target agent sets, a polynomial algorithm for identical
// utilities on a bidirectional attention clique, an exact enumeration over
// sharings with few shared resources, and (in treewidth.hpp) a dynamic
// program over tree decompositions of the sharing graph.

// A target set C of agents that must end up envy-free, plus a set M of
// vertex-disjoint donor -> receiver arcs describing who shares toward whom.
// Arcs must run along sharing edges and point INTO the target set; donors
// may be targets or outsiders. Vertex-disjointness means every agent touches
// at most one arc, so any selection of carried resources is automatically a
// simple sharing.
struct SharingConfiguration {
  std::vector<int> targets;               // ascending, unique agent ids
  std::vector<std::pair<int, int>> arcs;  // (donor, receiver) pairs
};

// Structural checks; returns human-readable violation strings (empty =
// valid): indices in range, targets sorted/unique, every arc a sharing edge
// whose receiver is a target, and no agent on two arcs.
std::vector<std::string> validate_configuration(
    const Instance& inst, const SharingConfiguration& config);

// Which feasibility routine to run. The base routine is the plain
// fixpoint-pruning algorithm and insists on unit loss parameters and no
// budget; the extended routine handles loss parameters and a cost budget
// (rejecting configurations whose arc edges already cost more than the
// budget) at the price of a small exact search over the surviving options.
enum class FeasibilityVariant {
  kBase,
  kExtended,
};

// The per-target option sets the feasibility fixpoint ends with, kept for
// inspection: possible[t] lists the resources target t may still receive
// (or, when t is a donor under the extended variant, donate), with -1
// standing for the dummy "take part in no sharing" option. threshold[t] is
// the own-bundle value target t must reach so as not to envy any agent
// outside the target set whose bundle is fixed.
struct PossibleResourceSets {
  static constexpr int kDummy = -1;

  std::vector<std::vector<int>> possible;  // aligned with config.targets
  std::vector<Rat> threshold;              // aligned with config.targets
  int fixpoint_passes = 0;                 // forbidden-pruning iterations
};

struct RealizationResult {
  bool yes = false;
  // Aligned with config.arcs: the resource carried by each arc, or nullopt
  // for arcs the witness leaves unused.
  std::vector<std::optional<int>> choice;
  Sharing witness;  // the chosen assignments, bound 1
  PossibleResourceSets sets;
};

// Decides whether the arcs of `config` can carry resources so that no
// target agent is envious (unused arcs are allowed). Options are pruned by
// the envy threshold toward agents outside the target set, then by a
// fixpoint deleting options that would force some target to envy another no
// matter what; base instances conclude directly (each receiver takes its
// own-best survivor), while the extended variant finishes with an exact
// search over the surviving per-arc options because one arc's resource sets
// both endpoints' values. Throws InputError on a malformed configuration or
// when the variant does not match the instance parameters (kBase requires
// alpha = beta = 1 and no budget).
RealizationResult feasible_realization_exists(
    const Instance& inst, const SharingConfiguration& config,
    FeasibilityVariant variant, NodeBudget* budget = nullptr);

struct ErsaResult {
  bool yes = false;
  Sharing witness;  // when yes: a simple sharing with <= k envious agents
};

// Exact decision "some simple sharing leaves at most k agents envious",
// fixed-parameter in the number of agents: enumerates target sets of size
// exactly n - k (colex order) and, per set, every sharing configuration
// (DFS over vertex-disjoint arcs), accepting on the first feasible pair.
// For loss alpha < 1 the answer is sound but may be no although a sharing
// exists: configurations only aim arcs at targets, and when donating costs
// utility a solution may additionally need arcs between non-targets that
// shrink an envied bystander's bundle. No acceptance path exercises that
// regime; callers who need it exactly use the oracle. Throws InputError on
// k < 0; prints one cost-estimate warning to stderr when the search space
// bound (2n)^n is astronomical; node budget exhaustion throws
// SearchBudgetError ("too large for the target-set search").
ErsaResult solve_ersa_fpt_agents(const Instance& inst, int k,
                                 NodeBudget* budget = nullptr);

struct ErsaOptimum {
  bool yes = false;
  int min_envy = 0;
  Sharing witness;  // attains min_envy
};

// Minimum envy when all agents share one utility function and the
// attention graph is a bidirectional clique (everyone compares with
// everyone, so the unenvious agents are exactly those whose final value
// matches the maximum). Sweeps the candidate top values u* upward from the
// initial maximum; for each one counts the agents already there plus a
// maximum matching over sharing edges that lift one more agent to exactly
// u*; when donating costs utility (alpha < 1) agents already at u* never
// donate, and under a cost budget the matching is the cost-bounded one.
// Among equally good top values the smallest wins, so flat instances
// return the empty sharing. Exact whenever alpha = 1; with alpha < 1 the
// optimum can instead level everyone below the initial maximum (top agents
// donating away), a regime this sweep does not visit, so the result is
// then the exact optimum among sharings whose final maximum does not drop.
// Throws InputError when the preconditions fail or k < 0.
ErsaOptimum solve_ersa_identical_clique(const Instance& inst, int k);

// Exact decision over all simple sharings that use at most s_max shared
// resources (any simple sharing uses at most min(n/2, m), so that cap makes
// the search complete). Depth-first over (edge, resource) candidates in
// lexicographic order; when alpha = 1 a sound lower bound prunes branches
// in which the agents that are already envious and cannot all be fixed by
// the remaining candidates outnumber k. Throws InputError on k < 0 or
// s_max < 0; node budget exhaustion throws SearchBudgetError ("too large
// for the bounded-shared search").
ErsaResult solve_ersa_bounded_shared(const Instance& inst, int k, int s_max,
                                     NodeBudget* budget = nullptr);

struct ErsaDispatch {
  bool yes = false;
  Sharing witness;
  std::string algorithm;  // engine that produced the answer
};

// Picks the cheapest exact engine the instance structure allows:
// identical-utility bidirectional-clique instances go to the sweep solver;
// budget-free instances whose attention graph underlies the sharing graph
// and admit a width <= 4 decomposition go to the treewidth DP; small agent
// counts go to the target-set search; a small candidate space goes to the
// bounded-shared enumeration; everything else runs the target-set search
// under its node budget. Throws InputError on k < 0 and surfaces the chosen
// engine's errors.
ErsaDispatch solve_ersa_auto(const Instance& inst, int k);

}  // namespace sharing
