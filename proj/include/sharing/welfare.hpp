#pragma once

#include "sharing/errors.hpp"
#include "sharing/model.hpp"
#include "sharing/numeric.hpp"

namespace sharing {

// Welfare-maximizing solvers. The two polynomial routines reduce to matching
// (utilitarian welfare for any bound via a weighted matching on per-resource
// vertex copies; egalitarian welfare for simple sharings via bipartite
// saturation of the agents below the target). The bounded egalitarian
// problem is NP-hard for bound >= 2, so that solver is an exact pruned
// search guarded by a node budget.

struct UwsaResult {
  bool yes = false;
  // Maximum utilitarian welfare over bound-respecting sharings. Rational
  // only because loss parameters are; integral whenever alpha and beta are.
  Rat optimum;
  Sharing witness;  // attains `optimum`; never mentions synthetic resources
};

// Decides whether some bound-respecting sharing reaches utilitarian welfare
// `target`, and reports the exact optimum plus a witness attaining it.
// Rejects bound < 1, and rejects instances carrying a cost budget (a budget
// constraint breaks the reduction to one maximum-weight matching; loss
// parameters alpha/beta are fully supported). `target` only enters the
// final comparison.
UwsaResult solve_uwsa(const Instance& inst, int bound, const Rat& target);

struct EwsaResult {
  bool yes = false;
  Sharing witness;  // when yes: a simple sharing with every agent >= target
};

// Decides whether some simple (bound-1) sharing reaches egalitarian welfare
// `target`. Polynomial: agents below the target must each be matched to a
// distinct sharing-neighbor that can lift them to the target without itself
// dropping below it; with a cost budget the saturating matching must also be
// affordable (weight-bounded matching decision).
EwsaResult solve_ewsa_simple(const Instance& inst, const Rat& target);

struct EwsaOptimum {
  Rat optimum;
  Sharing witness;
};

// Maximum egalitarian welfare over simple sharings (affordable ones when a
// cost budget is set). Every agent's final value lies in a small candidate
// set (initial value, initial plus a weighted gain, initial minus a donation
// loss), so the optimum is the largest candidate the decision accepts.
EwsaOptimum maximize_ewsa_simple(const Instance& inst);

// Exact decision for egalitarian welfare under a per-agent bound >= 2 (the
// regime where the problem is NP-hard): depth-first search over sharings,
// visiting assignments whose receivers have the smallest initial value
// first, pruning branches in which some agent can no longer reach the
// target. Rejects bound < 2 (use solve_ewsa_simple for bound 1). Throws
// SearchBudgetError ("too large for exact b-EWSA") when the node budget is
// exhausted; pass `budget` to raise or lower the default cap.
EwsaResult solve_ewsa_bounded_exact(const Instance& inst, int bound,
                                    const Rat& target,
                                    NodeBudget* budget = nullptr);

}  // namespace sharing
