#include "sharing/oracle.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <tuple>
#include <utility>

namespace sharing {

namespace {

class Enumerator {
 public:
  Enumerator(const Instance& inst, int bound,
             const std::function<bool(const Sharing&)>& visit,
             NodeBudget& budget)
      : inst_(inst), bound_(bound), visit_(visit), budget_(budget) {
    for (const auto& [u, v] : inst.sharing_edge_list()) {
      for (int r = 0; r < inst.m; ++r) {
        if (inst.owner[r] == u || inst.owner[r] == v) {
          candidates_.push_back({u, v, r});
        }
      }
    }
    std::sort(candidates_.begin(), candidates_.end(),
              [](const Assignment& a, const Assignment& b) {
                return std::tie(a.u, a.v, a.resource) <
                       std::tie(b.u, b.v, b.resource);
              });
    agent_uses_.assign(inst.n, 0);
    resource_used_.assign(inst.m, 0);
    current_.bound = bound;
  }

  void run() { descend(0); }

 private:
  void descend(std::size_t next) {
    budget_.tick("sharing enumeration");
    if (!visit_(current_)) {
      stopped_ = true;
      return;
    }
    for (std::size_t i = next; i < candidates_.size() && !stopped_; ++i) {
      const Assignment& c = candidates_[i];
      if (resource_used_[c.resource]) continue;
      if (agent_uses_[c.u] >= bound_ || agent_uses_[c.v] >= bound_) continue;
      resource_used_[c.resource] = 1;
      ++agent_uses_[c.u];
      ++agent_uses_[c.v];
      current_.assignments.push_back(c);
      descend(i + 1);
      current_.assignments.pop_back();
      resource_used_[c.resource] = 0;
      --agent_uses_[c.u];
      --agent_uses_[c.v];
    }
  }

  const Instance& inst_;
  const int bound_;
  const std::function<bool(const Sharing&)>& visit_;
  NodeBudget& budget_;
  std::vector<Assignment> candidates_;
  std::vector<int> agent_uses_;
  std::vector<char> resource_used_;
  Sharing current_;
  bool stopped_ = false;
};

// Extension 2: optimizers only consider sharings the authority can afford.
// The empty sharing costs 0, so an affordable sharing always exists (budgets
// are validated non-negative) and the optima below are well defined.
bool affordable(const Instance& inst, const Sharing& s) {
  return !inst.ext.budget.has_value() ||
         sharing_cost(inst, s) <= *inst.ext.budget;
}

}  // namespace

void enumerate_sharings(const Instance& inst, int bound,
                        const std::function<bool(const Sharing&)>& visit,
                        NodeBudget* budget) {
  NodeBudget local;
  Enumerator e(inst, bound, visit, budget ? *budget : local);
  e.run();
}

std::vector<Sharing> all_sharings(const Instance& inst, int bound,
                                  NodeBudget* budget) {
  std::vector<Sharing> out;
  enumerate_sharings(
      inst, bound,
      [&out](const Sharing& s) {
        out.push_back(s);
        return true;
      },
      budget);
  return out;
}

EnvyOptimum min_envy_bruteforce(const Instance& inst, int bound,
                                NodeBudget* budget) {
  std::optional<EnvyOptimum> best;
  enumerate_sharings(
      inst, bound,
      [&](const Sharing& s) {
        if (!affordable(inst, s)) return true;
        const int envy =
            static_cast<int>(envious_agents(inst, s).envious.size());
        if (!best.has_value() || envy < best->envy_count) {
          best = EnvyOptimum{envy, s};
        }
        return best->envy_count > 0;  // nothing can beat zero envy
      },
      budget);
  return *best;
}

WelfareOptimum max_welfare_bruteforce(const Instance& inst, int bound,
                                      NodeBudget* budget) {
  std::optional<WelfareOptimum> best;
  enumerate_sharings(
      inst, bound,
      [&](const Sharing& s) {
        if (!affordable(inst, s)) return true;
        const auto [uw, ew] = welfare(inst, s);
        if (!best.has_value()) {
          best = WelfareOptimum{uw, ew, s, s};
          return true;
        }
        if (uw > best->utilitarian) {
          best->utilitarian = uw;
          best->utilitarian_witness = s;
        }
        if (ew > best->egalitarian) {
          best->egalitarian = ew;
          best->egalitarian_witness = s;
        }
        return true;
      },
      budget);
  return *best;
}

}  // namespace sharing
