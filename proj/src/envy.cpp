#include "sharing/envy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sharing/matching.hpp"
#include "sharing/treewidth.hpp"

namespace sharing {
namespace {

Rat initial_value(const Instance& inst, int agent) {
  Rat value = 0;
  for (int r : inst.bundle[agent]) value += Rat(inst.utility[agent][r]);
  return value;
}

// u_viewer(pi(about)): the initial bundle of `about` through `viewer`'s eyes.
Rat initial_value_through(const Instance& inst, int viewer, int about) {
  Rat value = 0;
  for (int r : inst.bundle[about]) value += Rat(inst.utility[viewer][r]);
  return value;
}

void warn_search_estimate(const char* what, double estimate) {
  if (estimate > 1e12) {
    std::cerr << "note: " << what << " may visit about " << estimate
              << " states; consider another engine or a smaller instance\n";
  }
}

}  // namespace

std::vector<std::string> validate_configuration(
    const Instance& inst, const SharingConfiguration& config) {
  std::vector<std::string> out;
  std::vector<char> in_target(inst.n, 0);
  int prev = -1;
  for (int t : config.targets) {
    if (t < 0 || t >= inst.n) {
      out.push_back("target agent " + std::to_string(t) + " out of range");
      continue;
    }
    if (t <= prev) {
      out.push_back("targets not strictly ascending at agent " +
                    std::to_string(t));
    }
    prev = t;
    in_target[t] = 1;
  }
  std::vector<char> on_arc(inst.n, 0);
  for (const auto& [donor, receiver] : config.arcs) {
    if (donor < 0 || donor >= inst.n || receiver < 0 || receiver >= inst.n) {
      out.push_back("arc endpoint out of range");
      continue;
    }
    if (donor == receiver) {
      out.push_back("arc loops at agent " + std::to_string(donor));
      continue;
    }
    if (!in_target[receiver]) {
      out.push_back("arc receiver " + std::to_string(receiver) +
                    " is not a target");
    }
    if (!inst.sharing[donor][receiver]) {
      out.push_back("arc {" + std::to_string(donor) + "," +
                    std::to_string(receiver) + "} is not a sharing edge");
    }
    if (on_arc[donor] || on_arc[receiver]) {
      out.push_back("agent on two arcs near {" + std::to_string(donor) +
                    "," + std::to_string(receiver) + "}");
    }
    on_arc[donor] = on_arc[receiver] = 1;
  }
  return out;
}

namespace {

// Working state of the feasibility routine. Every target views one option
// list: receivers (and, under the extended variant, donors) view their
// arc's list - one list per arc, because one arc carries one resource for
// both endpoints - and everyone else views a private dummy-only list.
struct FeasibilityState {
  const Instance& inst;
  const SharingConfiguration& config;
  bool extended;

  std::vector<char> in_target;        // per agent
  std::vector<int> target_index;      // per agent, -1 when not a target
  std::vector<int> recv_arc;          // per target, arc received on or -1
  std::vector<int> give_arc;          // per target, arc donated on or -1
  std::vector<char> arc_donor_agent;  // per agent: donates on some arc

  // Arc option lists: options[a] = {-1, resources of the donor's bundle
  // ascending}; alive[a] marks the survivors.
  std::vector<std::vector<int>> options;
  std::vector<std::vector<char>> alive;
  std::vector<char> dummy_alive;  // per target without an arc view

  std::vector<Rat> init_own;  // per agent

  FeasibilityState(const Instance& inst_, const SharingConfiguration& cfg,
                   bool extended_)
      : inst(inst_), config(cfg), extended(extended_) {
    in_target.assign(inst.n, 0);
    target_index.assign(inst.n, -1);
    for (std::size_t t = 0; t < cfg.targets.size(); ++t) {
      in_target[cfg.targets[t]] = 1;
      target_index[cfg.targets[t]] = static_cast<int>(t);
    }
    recv_arc.assign(cfg.targets.size(), -1);
    give_arc.assign(cfg.targets.size(), -1);
    arc_donor_agent.assign(inst.n, 0);
    for (std::size_t a = 0; a < cfg.arcs.size(); ++a) {
      const auto& [donor, receiver] = cfg.arcs[a];
      recv_arc[target_index[receiver]] = static_cast<int>(a);
      if (in_target[donor]) give_arc[target_index[donor]] = static_cast<int>(a);
      arc_donor_agent[donor] = 1;
    }
    options.resize(cfg.arcs.size());
    alive.resize(cfg.arcs.size());
    for (std::size_t a = 0; a < cfg.arcs.size(); ++a) {
      options[a].push_back(PossibleResourceSets::kDummy);
      for (int r : inst.bundle[cfg.arcs[a].first]) options[a].push_back(r);
      alive[a].assign(options[a].size(), 1);
    }
    dummy_alive.assign(cfg.targets.size(), 1);
    init_own.resize(inst.n);
    for (int i = 0; i < inst.n; ++i) init_own[i] = initial_value(inst, i);
  }

  // The arc whose option list target t views, or -1 for the dummy-only view.
  int view_arc(int t) const {
    if (recv_arc[t] >= 0) return recv_arc[t];
    if (extended && give_arc[t] >= 0) return give_arc[t];
    return -1;
  }

  // Target t's own-bundle value when its viewed option is `r` (kDummy =
  // take part in nothing). Receivers gain, donors lose (extended only).
  Rat own_value(int t, int r) const {
    const int agent = config.targets[t];
    Rat value = init_own[agent];
    if (r < 0) return value;
    const Rat u(inst.utility[agent][r]);
    if (recv_arc[t] >= 0) {
      value += extended ? inst.ext.beta * u : u;
    } else {
      value -= (Rat(1) - inst.ext.alpha) * u;  // extended donor view
    }
    return value;
  }

  // Target t's bundle value through observer's eyes under option `r`.
  Rat perceived_value_of(int observer, int t, int r) const {
    const int agent = config.targets[t];
    Rat value = initial_value_through(inst, observer, agent);
    if (r < 0) return value;
    const Rat u(inst.utility[observer][r]);
    if (recv_arc[t] >= 0) {
      value += extended ? inst.ext.beta * u : u;
    } else {
      value -= (Rat(1) - inst.ext.alpha) * u;
    }
    return value;
  }

  bool view_empty(int t) const {
    const int a = view_arc(t);
    if (a < 0) return !dummy_alive[t];
    return std::none_of(alive[a].begin(), alive[a].end(),
                        [](char c) { return c != 0; });
  }

  Rat max_own(int t) const {
    const int a = view_arc(t);
    if (a < 0) return init_own[config.targets[t]];
    bool seen = false;
    Rat best = 0;
    for (std::size_t i = 0; i < options[a].size(); ++i) {
      if (!alive[a][i]) continue;
      const Rat v = own_value(t, options[a][i]);
      if (!seen || v > best) best = v, seen = true;
    }
    return best;  // callers check view_empty first
  }
};

}  // namespace

RealizationResult feasible_realization_exists(
    const Instance& inst, const SharingConfiguration& config,
    FeasibilityVariant variant, NodeBudget* budget) {
  const auto issues = validate_configuration(inst, config);
  if (!issues.empty()) {
    throw InputError("sharing configuration invalid: " + issues.front());
  }
  const bool extended = variant == FeasibilityVariant::kExtended;
  if (!extended && !inst.base_parameters()) {
    throw InputError(
        "base feasibility variant requires unit loss parameters and no "
        "budget");
  }

  RealizationResult result;
  result.choice.assign(config.arcs.size(), std::nullopt);
  result.witness.bound = 1;

  // Extended variant, budget precheck: a configuration is priced by its arc
  // edges (vertex-disjoint arcs never reuse an edge).
  if (extended && inst.ext.budget.has_value()) {
    Int arc_cost = 0;
    for (const auto& [donor, receiver] : config.arcs) {
      arc_cost += inst.edge_cost[donor][receiver];
    }
    if (arc_cost > *inst.ext.budget) return result;
  }

  FeasibilityState state(inst, config, extended);
  const int t_count = static_cast<int>(config.targets.size());

  // Thresholds: the value each target must hold so as not to envy agents
  // outside the target set. Outsiders keep their initial bundles, except
  // that under the extended variant an outside donor's bundle depends on
  // the resource its arc ends up carrying - those comparisons move to the
  // final search instead.
  result.sets.threshold.assign(t_count, Rat(0));
  for (int t = 0; t < t_count; ++t) {
    const int agent = config.targets[t];
    Rat threshold = 0;
    for (int j = 0; j < inst.n; ++j) {
      if (j == agent || state.in_target[j] || !inst.attention[agent][j]) {
        continue;
      }
      if (extended && state.arc_donor_agent[j]) continue;
      threshold = std::max(threshold, initial_value_through(inst, agent, j));
    }
    result.sets.threshold[t] = threshold;
    const int a = state.view_arc(t);
    if (a < 0) {
      if (state.init_own[agent] < threshold) state.dummy_alive[t] = 0;
      continue;
    }
    for (std::size_t i = 0; i < state.options[a].size(); ++i) {
      if (state.own_value(t, state.options[a][i]) < threshold) {
        state.alive[a][i] = 0;
      }
    }
  }

  // Fixpoint: delete options that would force some observing target to be
  // envious no matter which of its own surviving options it takes. Passes
  // prune simultaneously against the sets as they stood when the pass
  // began; each non-final pass deletes at least one option.
  bool all_nonempty = true;
  while (true) {
    ++result.sets.fixpoint_passes;
    for (int t = 0; t < t_count && all_nonempty; ++t) {
      if (state.view_empty(t)) all_nonempty = false;
    }
    if (!all_nonempty) break;
    std::vector<Rat> best(t_count);
    for (int t = 0; t < t_count; ++t) best[t] = state.max_own(t);

    std::vector<std::vector<char>> kill_arc(config.arcs.size());
    for (std::size_t a = 0; a < config.arcs.size(); ++a) {
      kill_arc[a].assign(state.options[a].size(), 0);
    }
    std::vector<char> kill_dummy(t_count, 0);
    bool removed = false;
    for (int t = 0; t < t_count; ++t) {
      const int agent = config.targets[t];
      const int a = state.view_arc(t);
      const int option_count =
          a < 0 ? 1 : static_cast<int>(state.options[a].size());
      for (int idx = 0; idx < option_count; ++idx) {
        if (a >= 0 && !state.alive[a][idx]) continue;
        if (a < 0 && !state.dummy_alive[t]) continue;
        const int r = a < 0 ? PossibleResourceSets::kDummy
                            : state.options[a][idx];
        bool forbidden = false;
        for (int o = 0; o < t_count && !forbidden; ++o) {
          if (o == t) continue;
          const int observer = config.targets[o];
          if (!inst.attention[observer][agent]) continue;
          if (best[o] < state.perceived_value_of(observer, t, r)) {
            forbidden = true;
          }
        }
        if (!forbidden) continue;
        removed = true;
        if (a < 0) {
          kill_dummy[t] = 1;
        } else {
          kill_arc[a][idx] = 1;
        }
      }
    }
    if (!removed) break;
    for (std::size_t a = 0; a < config.arcs.size(); ++a) {
      for (std::size_t idx = 0; idx < state.options[a].size(); ++idx) {
        if (kill_arc[a][idx]) state.alive[a][idx] = 0;
      }
    }
    for (int t = 0; t < t_count; ++t) {
      if (kill_dummy[t]) state.dummy_alive[t] = 0;
    }
  }

  // Expose the surviving sets regardless of the outcome.
  result.sets.possible.assign(t_count, {});
  for (int t = 0; t < t_count; ++t) {
    const int a = state.view_arc(t);
    if (a < 0) {
      if (state.dummy_alive[t]) {
        result.sets.possible[t].push_back(PossibleResourceSets::kDummy);
      }
      continue;
    }
    for (std::size_t idx = 0; idx < state.options[a].size(); ++idx) {
      if (state.alive[a][idx]) {
        result.sets.possible[t].push_back(state.options[a][idx]);
      }
    }
  }
  if (!all_nonempty) return result;

  const auto emit_witness = [&](const std::vector<int>& arc_choice) {
    result.yes = true;
    for (std::size_t a = 0; a < config.arcs.size(); ++a) {
      if (arc_choice[a] < 0) continue;
      result.choice[a] = arc_choice[a];
      const auto& [donor, receiver] = config.arcs[a];
      result.witness.assignments.push_back({std::min(donor, receiver),
                                            std::max(donor, receiver),
                                            arc_choice[a]});
    }
    normalize_sharing(result.witness);
  };

  if (!extended) {
    // Every receiver takes its own-best survivor; donors keep full value of
    // what they give, so no choice can hurt them. Ties prefer the dummy
    // (fewer sharings), then the smallest resource id; the option lists are
    // stored dummy-first ascending, so a strict comparison does both.
    std::vector<int> arc_choice(config.arcs.size(), -1);
    for (int t = 0; t < t_count; ++t) {
      const int a = state.recv_arc[t];
      if (a < 0) continue;
      bool seen = false;
      Rat best_value = 0;
      for (std::size_t idx = 0; idx < state.options[a].size(); ++idx) {
        if (!state.alive[a][idx]) continue;
        const Rat v = state.own_value(t, state.options[a][idx]);
        if (!seen || v > best_value) {
          best_value = v;
          arc_choice[a] = state.options[a][idx];
          seen = true;
        }
      }
    }
    emit_witness(arc_choice);
#ifndef NDEBUG
    const auto report = envious_agents(inst, result.witness);
    for (int e : report.envious) assert(!state.in_target[e]);
#endif
    return result;
  }

  // Extended variant: one arc's resource sets both endpoints' values (and
  // an outside donor's perceived value), so surviving options are searched
  // exactly. Choices are tried dummy-first in stored order; partial
  // assignments are rejected as soon as two settled agents witness a target
  // envying, and accepted leaves are confirmed with the full envy report.
  NodeBudget fallback;
  NodeBudget* ticks = budget != nullptr ? budget : &fallback;
  const int arc_count = static_cast<int>(config.arcs.size());
  std::vector<int> arc_choice(arc_count, -1);
  std::vector<int> agent_arc(inst.n, -1);
  for (int a = 0; a < arc_count; ++a) {
    agent_arc[config.arcs[a].first] = a;
    agent_arc[config.arcs[a].second] = a;
  }

  // Own/perceived values once an agent's arc (if any) is decided up to
  // `depth`. Applies to every agent, targets and outsiders alike.
  const auto settled = [&](int agent, int depth) {
    return agent_arc[agent] < 0 || agent_arc[agent] < depth;
  };
  const auto own_of = [&](int agent) -> Rat {
    Rat value = state.init_own[agent];
    const int a = agent_arc[agent];
    if (a < 0 || arc_choice[a] < 0) return value;
    const Rat u(inst.utility[agent][arc_choice[a]]);
    if (config.arcs[a].second == agent) return value + inst.ext.beta * u;
    return value - (Rat(1) - inst.ext.alpha) * u;
  };
  const auto perceived_of = [&](int observer, int about) -> Rat {
    Rat value = initial_value_through(inst, observer, about);
    const int a = agent_arc[about];
    if (a < 0 || arc_choice[a] < 0) return value;
    const Rat u(inst.utility[observer][arc_choice[a]]);
    if (config.arcs[a].second == about) return value + inst.ext.beta * u;
    return value - (Rat(1) - inst.ext.alpha) * u;
  };
  // Would any target provably envy once the pair (observer, about) is
  // settled? Checked incrementally for pairs touching the newest arc.
  const auto target_envies = [&](int observer, int about) {
    return state.in_target[observer] && inst.attention[observer][about] &&
           own_of(observer) < perceived_of(observer, about);
  };

  const std::function<bool(int)> search = [&](int depth) -> bool {
    ticks->tick("realization search");
    if (depth == arc_count) {
      Sharing trial;
      trial.bound = 1;
      for (int a = 0; a < arc_count; ++a) {
        if (arc_choice[a] < 0) continue;
        const auto& [donor, receiver] = config.arcs[a];
        trial.assignments.push_back({std::min(donor, receiver),
                                     std::max(donor, receiver),
                                     arc_choice[a]});
      }
      const auto report = envious_agents(inst, trial);
      for (int e : report.envious) {
        if (state.in_target[e]) return false;
      }
      return true;
    }
    const auto& [donor, receiver] = config.arcs[depth];
    for (std::size_t idx = 0; idx < state.options[depth].size(); ++idx) {
      if (!state.alive[depth][idx]) continue;
      arc_choice[depth] = state.options[depth][idx];
      bool clash = false;
      for (int endpoint : {donor, receiver}) {
        for (int other = 0; other < inst.n && !clash; ++other) {
          if (other == endpoint || !settled(other, depth + 1)) continue;
          if (target_envies(endpoint, other) ||
              target_envies(other, endpoint)) {
            clash = true;
          }
        }
      }
      if (!clash && search(depth + 1)) return true;
    }
    arc_choice[depth] = -1;
    return false;
  };

  if (search(0)) {
    emit_witness(arc_choice);
  }
  return result;
}

ErsaResult solve_ersa_fpt_agents(const Instance& inst, int k,
                                 NodeBudget* budget) {
  if (k < 0) throw InputError("negative envy bound k");
  ErsaResult result;
  result.witness.bound = 1;
  if (k >= inst.n) {
    result.yes = true;
    return result;
  }
  warn_search_estimate("the target-set search",
                       std::pow(2.0 * inst.n, inst.n));
  NodeBudget fallback;
  NodeBudget* ticks = budget != nullptr ? budget : &fallback;
  const auto variant = inst.base_parameters() ? FeasibilityVariant::kBase
                                              : FeasibilityVariant::kExtended;

  const int size = inst.n - k;
  std::vector<int> combo(size);
  for (int i = 0; i < size; ++i) combo[i] = i;

  try {
    while (true) {
      SharingConfiguration config;
      config.targets = combo;
      std::vector<char> in_target(inst.n, 0);
      for (int t : combo) in_target[t] = 1;

      // Eligible arcs, receivers ascending then donors ascending.
      std::vector<std::pair<int, int>> eligible;
      for (int receiver : combo) {
        for (int donor = 0; donor < inst.n; ++donor) {
          if (donor != receiver && inst.sharing[donor][receiver]) {
            eligible.emplace_back(donor, receiver);
          }
        }
      }

      std::vector<char> on_arc(inst.n, 0);
      bool found = false;
      const std::function<bool(std::size_t)> grow =
          [&](std::size_t from) -> bool {
        ticks->tick("target-set search");
        const auto res =
            feasible_realization_exists(inst, config, variant, ticks);
        if (res.yes) {
          result.yes = true;
          result.witness = res.witness;
          return true;
        }
        for (std::size_t i = from; i < eligible.size(); ++i) {
          const auto& [donor, receiver] = eligible[i];
          if (on_arc[donor] || on_arc[receiver]) continue;
          on_arc[donor] = on_arc[receiver] = 1;
          config.arcs.push_back(eligible[i]);
          if (grow(i + 1)) return true;
          config.arcs.pop_back();
          on_arc[donor] = on_arc[receiver] = 0;
        }
        return false;
      };
      found = grow(0);
      if (found) return result;

      // Advance the target set in colex order: bump the lowest index that
      // can move, reset everything below it.
      bool advanced = false;
      for (int j = 0; j < size && !advanced; ++j) {
        const int limit = (j + 1 < size) ? combo[j + 1] : inst.n;
        if (combo[j] + 1 < limit) {
          ++combo[j];
          for (int t = 0; t < j; ++t) combo[t] = t;
          advanced = true;
        }
      }
      if (!advanced) break;
    }
  } catch (const SearchBudgetError&) {
    throw SearchBudgetError(
        "instance too large for the target-set search: search node budget "
        "exhausted (raise the node cap to search further)");
  }
  return result;
}

ErsaOptimum solve_ersa_identical_clique(const Instance& inst, int k) {
  if (k < 0) throw InputError("negative envy bound k");
  for (int i = 1; i < inst.n; ++i) {
    if (inst.utility[i] != inst.utility[0]) {
      throw InputError(
          "identical-utility solver requires every agent to share one "
          "utility function");
    }
  }
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      if (i != j && !inst.attention[i][j]) {
        throw InputError(
            "identical-utility solver requires a bidirectional attention "
            "clique");
      }
    }
  }

  ErsaOptimum result;
  result.witness.bound = 1;
  if (inst.n == 0) {
    result.yes = true;
    return result;
  }

  std::vector<Rat> init(inst.n);
  for (int i = 0; i < inst.n; ++i) init[i] = initial_value(inst, i);
  const Rat top_initial = *std::max_element(init.begin(), init.end());

  // Candidate top values: the initial maximum plus every reachable
  // one-sharing value at least that high (with everyone comparing with
  // everyone, the unenvious agents are exactly those at the final maximum,
  // and the maximum never drops below the initial one).
  std::set<Rat> candidates;
  candidates.insert(top_initial);
  for (int i = 0; i < inst.n; ++i) {
    for (int r = 0; r < inst.m; ++r) {
      const Rat lifted = init[i] + inst.ext.beta * Rat(inst.utility[i][r]);
      if (lifted >= top_initial) candidates.insert(lifted);
    }
  }

  const bool donors_keep_value = inst.ext.alpha == 1;
  int best_count = -1;
  Rat best_target;
  std::vector<std::pair<int, int>> best_pairs;

  // The smallest resource of `donor` that lifts `receiver` to exactly the
  // target value, or -1. Receivers at the target already never qualify.
  const auto lift_resource = [&](int receiver, int donor,
                                 const Rat& target) {
    if (init[receiver] == target) return -1;
    if (!donors_keep_value && init[donor] == target) return -1;
    for (int r : inst.bundle[donor]) {
      if (init[receiver] + inst.ext.beta * Rat(inst.utility[receiver][r]) ==
          target) {
        return r;
      }
    }
    return -1;
  };

  for (const Rat& target : candidates) {
    int at_target = 0;
    for (int i = 0; i < inst.n; ++i) {
      if (init[i] == target) ++at_target;
    }
    WeightedGraph graph;
    graph.vertex_count = inst.n;
    for (int i = 0; i < inst.n; ++i) {
      for (int j = i + 1; j < inst.n; ++j) {
        if (!inst.sharing[i][j]) continue;
        if (lift_resource(i, j, target) < 0 &&
            lift_resource(j, i, target) < 0) {
          continue;
        }
        graph.edges.push_back(
            {i, j,
             inst.ext.budget.has_value() ? inst.edge_cost[i][j] : Int(1)});
      }
    }
    int lifted = 0;
    std::vector<std::pair<int, int>> pairs;
    if (!inst.ext.budget.has_value()) {
      const Matching matching = max_weight_matching(graph);
      lifted = matching.cardinality;
      pairs = matching.edges;
    } else {
      for (int size = std::min<int>(graph.edges.size(), inst.n / 2);
           size >= 0; --size) {
        const auto decision = solve_wbmm(graph, *inst.ext.budget, size);
        if (decision.yes) {
          lifted = size;
          pairs = decision.witness.edges;
          break;
        }
      }
    }
    if (at_target + lifted > best_count) {
      best_count = at_target + lifted;
      best_target = target;
      best_pairs = pairs;
    }
  }

  result.min_envy = inst.n - best_count;
  result.yes = result.min_envy <= k;
  for (const auto& [i, j] : best_pairs) {
    int receiver = i;
    int resource = lift_resource(i, j, best_target);
    if (resource < 0) {
      receiver = j;
      resource = lift_resource(j, i, best_target);
    }
    assert(resource >= 0);
    (void)receiver;
    result.witness.assignments.push_back({i, j, resource});
  }
  normalize_sharing(result.witness);
  return result;
}

ErsaResult solve_ersa_bounded_shared(const Instance& inst, int k, int s_max,
                                     NodeBudget* budget) {
  if (k < 0) throw InputError("negative envy bound k");
  if (s_max < 0) throw InputError("negative shared-resource cap");
  NodeBudget fallback;
  NodeBudget* ticks = budget != nullptr ? budget : &fallback;

  const bool monotone = inst.ext.alpha == 1;  // bundles only ever grow

  // At alpha = 1, sharing with a receiver that attends nobody is dominated:
  // the receiver can never be envious, dropping the share only lowers what
  // its observers perceive, and the donor's values are unchanged, so any
  // sharing reaching the target still reaches it with the share removed.
  std::vector<char> attends_anyone(inst.n, 0);
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      if (i != j && inst.attention[i][j]) attends_anyone[i] = 1;
    }
  }

  struct Candidate {
    int u, v, resource, donor, receiver;
  };
  std::vector<Candidate> candidates;
  for (const auto& [u, v] : inst.sharing_edge_list()) {
    for (int r = 0; r < inst.m; ++r) {
      if (inst.owner[r] == u || inst.owner[r] == v) {
        const int donor = inst.owner[r];
        const int receiver = donor == u ? v : u;
        if (monotone && !attends_anyone[receiver]) continue;
        candidates.push_back({u, v, r, donor, receiver});
      }
    }
  }
  {
    double estimate = 1.0, term = 1.0;
    for (int s = 1; s <= s_max && s <= static_cast<int>(candidates.size());
         ++s) {
      term *= static_cast<double>(candidates.size() - s + 1) / s;
      estimate += term;
    }
    warn_search_estimate("the bounded-shared search", estimate);
  }

  std::vector<char> used(inst.n, 0);
  std::vector<Rat> own(inst.n);
  std::vector<std::vector<Rat>> perceived(inst.n, std::vector<Rat>(inst.n));
  for (int i = 0; i < inst.n; ++i) {
    own[i] = initial_value(inst, i);
    for (int j = 0; j < inst.n; ++j) {
      if (i != j) perceived[i][j] = initial_value_through(inst, i, j);
    }
  }
  Int cost = 0;

  ErsaResult result;
  result.witness.bound = 1;
  Sharing current;
  current.bound = 1;

  // Sound pruning bound, only valid while bundles are monotone (alpha = 1):
  // own and perceived values never decrease, so an agent that is envious
  // now stays envious unless it still receives a resource lifting it over
  // every perceived value it currently sees. Each remaining candidate fixes
  // at most one such agent, and only `room` more candidates fit, so
  //   stuck + max(0, |fixable| - min(matching, room))
  // agents are envious in every extension of the current sharing.
  const auto lower_bound = [&](std::size_t from, int room) {
    int stuck = 0;
    std::vector<int> fixable;
    std::vector<Rat> need;
    for (int i = 0; i < inst.n; ++i) {
      bool envious = false;
      Rat worst = 0;
      for (int j = 0; j < inst.n; ++j) {
        if (i == j || !inst.attention[i][j]) continue;
        if (perceived[i][j] > own[i]) {
          envious = true;
          worst = std::max(worst, perceived[i][j]);
        }
      }
      if (!envious) continue;
      if (used[i]) {
        ++stuck;
      } else {
        fixable.push_back(i);
        need.push_back(worst);
      }
    }
    if (fixable.empty()) return stuck;
    // Even a perfect matching fixes at most min(room, |fixable|) agents, so
    // this cheaper bound already holds; only build the matching when the
    // caller needs the refinement.
    const int optimistic =
        stuck + static_cast<int>(fixable.size()) -
        std::min(room, static_cast<int>(fixable.size()));
    if (optimistic > k) return optimistic;
    std::vector<std::pair<int, int>> edges;
    for (std::size_t c = from; c < candidates.size(); ++c) {
      const auto& cand = candidates[c];
      if (used[cand.u] || used[cand.v]) continue;
      for (std::size_t f = 0; f < fixable.size(); ++f) {
        if (cand.receiver != fixable[f]) continue;
        const Rat gain =
            inst.ext.beta * Rat(inst.utility[cand.receiver][cand.resource]);
        if (own[cand.receiver] + gain >= need[f]) {
          edges.emplace_back(static_cast<int>(f), static_cast<int>(c - from));
        }
      }
    }
    const Matching fixes = max_cardinality_bipartite_matching(
        static_cast<int>(fixable.size()),
        static_cast<int>(candidates.size() - from), edges);
    const int fixed = std::min(fixes.cardinality, room);
    return stuck + static_cast<int>(fixable.size()) - fixed;
  };

  const std::function<bool(std::size_t)> visit =
      [&](std::size_t from) -> bool {
    ticks->tick("bounded-shared search");
    const bool affordable =
        !inst.ext.budget.has_value() || cost <= *inst.ext.budget;
    if (affordable) {
      int envy = 0;
      for (int i = 0; i < inst.n; ++i) {
        for (int j = 0; j < inst.n; ++j) {
          if (i != j && inst.attention[i][j] && perceived[i][j] > own[i]) {
            ++envy;
            break;
          }
        }
      }
      if (envy <= k) {
        result.yes = true;
        result.witness = current;
        normalize_sharing(result.witness);
        return true;
      }
    } else {
      return false;  // extensions only add cost
    }
    const int room = s_max - static_cast<int>(current.assignments.size());
    if (room == 0) return false;
    if (monotone && lower_bound(from, room) > k) return false;
    for (std::size_t c = from; c < candidates.size(); ++c) {
      const auto& cand = candidates[c];
      if (used[cand.u] || used[cand.v]) continue;
      used[cand.u] = used[cand.v] = 1;
      const Rat recv_gain =
          inst.ext.beta * Rat(inst.utility[cand.receiver][cand.resource]);
      const Rat donor_loss = (Rat(1) - inst.ext.alpha) *
                             Rat(inst.utility[cand.donor][cand.resource]);
      own[cand.receiver] += recv_gain;
      own[cand.donor] -= donor_loss;
      for (int o = 0; o < inst.n; ++o) {
        if (o != cand.receiver) {
          perceived[o][cand.receiver] +=
              inst.ext.beta * Rat(inst.utility[o][cand.resource]);
        }
        if (o != cand.donor) {
          perceived[o][cand.donor] -= (Rat(1) - inst.ext.alpha) *
                                      Rat(inst.utility[o][cand.resource]);
        }
      }
      cost += inst.edge_cost[cand.u][cand.v];
      current.assignments.push_back({cand.u, cand.v, cand.resource});

      const bool done = visit(c + 1);

      current.assignments.pop_back();
      cost -= inst.edge_cost[cand.u][cand.v];
      own[cand.receiver] -= recv_gain;
      own[cand.donor] += donor_loss;
      for (int o = 0; o < inst.n; ++o) {
        if (o != cand.receiver) {
          perceived[o][cand.receiver] -=
              inst.ext.beta * Rat(inst.utility[o][cand.resource]);
        }
        if (o != cand.donor) {
          perceived[o][cand.donor] += (Rat(1) - inst.ext.alpha) *
                                      Rat(inst.utility[o][cand.resource]);
        }
      }
      used[cand.u] = used[cand.v] = 0;
      if (done) return true;
    }
    return false;
  };

  try {
    visit(0);
  } catch (const SearchBudgetError&) {
    throw SearchBudgetError(
        "instance too large for the bounded-shared search: search node "
        "budget exhausted (raise the node cap to search further)");
  }
  return result;
}

ErsaDispatch solve_ersa_auto(const Instance& inst, int k) {
  if (k < 0) throw InputError("negative envy bound k");
  ErsaDispatch out;

  bool identical = true;
  for (int i = 1; i < inst.n && identical; ++i) {
    identical = inst.utility[i] == inst.utility[0];
  }
  bool attention_clique = true;
  for (int i = 0; i < inst.n && attention_clique; ++i) {
    for (int j = 0; j < inst.n && attention_clique; ++j) {
      if (i != j && !inst.attention[i][j]) attention_clique = false;
    }
  }
  // The identical-utility route levels everyone at or above the initial
  // maximum; once donors lose value (alpha < 1) the optimum can sit below
  // that, so lossy instances fall through to a complete engine.
  if (identical && attention_clique && inst.ext.alpha == 1) {
    const auto opt = solve_ersa_identical_clique(inst, k);
    return {opt.yes, opt.witness, "identical-clique"};
  }

  bool graphs_match = true;
  for (int i = 0; i < inst.n && graphs_match; ++i) {
    for (int j = i + 1; j < inst.n && graphs_match; ++j) {
      const bool underlying = inst.attention[i][j] || inst.attention[j][i];
      if (underlying != (inst.sharing[i][j] != 0)) graphs_match = false;
    }
  }
  if (graphs_match && !inst.ext.budget.has_value()) {
    const auto dec = build_nice_decomposition(inst);
    if (dec.width <= 4) {
      const auto opt = solve_ersa_treewidth(inst, dec, k);
      return {opt.yes, opt.witness, "treewidth"};
    }
  }

  // The bounded-shared enumeration is complete at s_max = min(n/2, m); how
  // big that search is decides between it and the target-set engine. When
  // donating costs utility the target-set engine can miss solutions, so
  // the complete enumeration gets first refusal.
  int candidate_count = 0;
  for (const auto& [u, v] : inst.sharing_edge_list()) {
    for (int r = 0; r < inst.m; ++r) {
      if (inst.owner[r] == u || inst.owner[r] == v) ++candidate_count;
    }
  }
  const int s_cap = std::min(inst.n / 2, inst.m);
  double estimate = 1.0, term = 1.0;
  for (int s = 1; s <= s_cap && s <= candidate_count; ++s) {
    term *= static_cast<double>(candidate_count - s + 1) / s;
    estimate += term;
  }
  const bool enumerable = estimate <= 2e6;
  const bool lossy = inst.ext.alpha != 1;

  if (inst.n <= 9 && !(lossy && enumerable)) {
    const auto res = solve_ersa_fpt_agents(inst, k);
    return {res.yes, res.witness, "fpt-agents"};
  }
  if (enumerable) {
    const auto res = solve_ersa_bounded_shared(inst, k, s_cap);
    return {res.yes, res.witness, "bounded-shared"};
  }
  const auto res = solve_ersa_fpt_agents(inst, k);
  return {res.yes, res.witness, "fpt-agents"};
}

}  // namespace sharing
