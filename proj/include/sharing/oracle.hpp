#pragma once

#include <functional>
#include <vector>

#include "sharing/errors.hpp"
#include "sharing/model.hpp"
#include "sharing/numeric.hpp"

namespace sharing {

// Exhaustive ground truth for small instances. Everything here exists to be
// obviously correct, not fast: solvers and tests compare against it.

// Visits every valid bound-respecting 2-sharing exactly once, starting with
// the empty sharing. Deterministic order: candidate (edge, resource) pairs
// sorted by edge lexicographically then resource ascending; the recursion
// extends a sharing only with candidates after the last one taken, so each
// sharing is produced once, in subset-prefix order. The visitor returns
// false to stop the enumeration early.
//
// One budget tick is spent per visited sharing (pass nullptr for a default
// budget); exhausting it throws SearchBudgetError.
void enumerate_sharings(const Instance& inst, int bound,
                        const std::function<bool(const Sharing&)>& visit,
                        NodeBudget* budget = nullptr);

// Collects the full enumeration. Tiny instances only.
std::vector<Sharing> all_sharings(const Instance& inst, int bound,
                                  NodeBudget* budget = nullptr);

struct EnvyOptimum {
  int envy_count = 0;
  Sharing witness;
};

// Minimum number of envious agents over all bound-respecting sharings; the
// witness is the first optimum in enumeration order. Stops as soon as a
// zero-envy sharing appears. When the instance carries a cost budget, only
// sharings the authority can afford compete.
EnvyOptimum min_envy_bruteforce(const Instance& inst, int bound,
                                NodeBudget* budget = nullptr);

struct WelfareOptimum {
  Rat utilitarian;
  Rat egalitarian;
  Sharing utilitarian_witness;
  Sharing egalitarian_witness;
};

// Exact maxima of both welfare notions over all bound-respecting sharings;
// each witness is the first sharing attaining its maximum. When the instance
// carries a cost budget, only sharings the authority can afford compete.
WelfareOptimum max_welfare_bruteforce(const Instance& inst, int bound,
                                      NodeBudget* budget = nullptr);

}  // namespace sharing
