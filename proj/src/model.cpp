#include "sharing/model.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>

#include "sharing/errors.hpp"

namespace sharing {

std::vector<std::pair<int, int>> Instance::sharing_edge_list() const {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (sharing[u][v]) edges.emplace_back(u, v);
    }
  }
  return edges;
}

std::vector<int> Instance::sharing_neighbors(int a) const {
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if (v != a && sharing[a][v]) out.push_back(v);
  }
  return out;
}

namespace {

template <typename T>
void resize_square(std::vector<std::vector<T>>& matrix, int n, T fill) {
  matrix.resize(n);
  for (auto& row : matrix) row.resize(n, fill);
}

}  // namespace

void finalize_instance(Instance& inst) {
  if (inst.n <= 0) throw InputError("instance needs at least one agent");
  if (inst.m < 0) throw InputError("negative resource count");

  inst.utility.resize(inst.n);
  for (auto& row : inst.utility) row.resize(inst.m, Int(0));

  inst.bundle.resize(inst.n);
  inst.owner.assign(inst.m, -1);
  for (int a = 0; a < inst.n; ++a) {
    std::sort(inst.bundle[a].begin(), inst.bundle[a].end());
    for (int r : inst.bundle[a]) {
      if (r < 0 || r >= inst.m) {
        throw InputError("allocation of agent " + std::to_string(a) +
                         " mentions unknown resource " + std::to_string(r));
      }
      if (inst.owner[r] != -1) {
        throw InputError("resource " + std::to_string(r) +
                         " allocated to both agent " +
                         std::to_string(inst.owner[r]) + " and agent " +
                         std::to_string(a));
      }
      inst.owner[r] = a;
    }
  }
  for (int r = 0; r < inst.m; ++r) {
    if (inst.owner[r] == -1) {
      throw InputError("resource " + std::to_string(r) +
                       " is not allocated to any agent");
    }
  }

  resize_square(inst.sharing, inst.n, char(0));
  resize_square(inst.attention, inst.n, char(0));
  resize_square(inst.edge_cost, inst.n, Int(0));
  for (int u = 0; u < inst.n; ++u) {
    for (int v = u + 1; v < inst.n; ++v) {
      const char joined = inst.sharing[u][v] || inst.sharing[v][u];
      inst.sharing[u][v] = inst.sharing[v][u] = joined;
      Int& cuv = inst.edge_cost[u][v];
      Int& cvu = inst.edge_cost[v][u];
      if (cuv != cvu) {
        if (cuv != 0 && cvu != 0) {
          throw InputError("conflicting costs on edge {" + std::to_string(u) +
                           "," + std::to_string(v) + "}");
        }
        const Int joined_cost = (cuv != 0) ? cuv : cvu;
        cuv = cvu = joined_cost;
      }
    }
  }

  const std::vector<std::string> problems = validate_instance(inst);
  if (!problems.empty()) {
    std::ostringstream msg;
    msg << "invalid instance:";
    for (const auto& p : problems) msg << "\n  - " << p;
    throw InputError(msg.str());
  }
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  if (inst.n <= 0) {
    out.push_back("instance needs at least one agent");
    return out;
  }
  if (inst.m < 0) {
    out.push_back("negative resource count");
    return out;
  }

  bool shapes_ok = true;
  const auto check_square = [&](const auto& matrix, const char* name) {
    if (static_cast<int>(matrix.size()) != inst.n) {
      out.push_back(std::string(name) + " matrix is not n x n");
      shapes_ok = false;
      return;
    }
    for (const auto& row : matrix) {
      if (static_cast<int>(row.size()) != inst.n) {
        out.push_back(std::string(name) + " matrix is not n x n");
        shapes_ok = false;
        return;
      }
    }
  };
  if (static_cast<int>(inst.utility.size()) != inst.n) {
    out.push_back("utility matrix is not n x m");
    shapes_ok = false;
  } else {
    for (const auto& row : inst.utility) {
      if (static_cast<int>(row.size()) != inst.m) {
        out.push_back("utility matrix is not n x m");
        shapes_ok = false;
        break;
      }
    }
  }
  check_square(inst.sharing, "sharing");
  check_square(inst.attention, "attention");
  check_square(inst.edge_cost, "edge cost");
  if (static_cast<int>(inst.bundle.size()) != inst.n) {
    out.push_back("allocation does not list one bundle per agent");
    shapes_ok = false;
  }
  if (static_cast<int>(inst.owner.size()) != inst.m) {
    out.push_back("owner table does not list one agent per resource");
    shapes_ok = false;
  }
  if (!shapes_ok) return out;

  for (int i = 0; i < inst.n; ++i) {
    for (int r = 0; r < inst.m; ++r) {
      if (inst.utility[i][r] < 0) {
        out.push_back("negative utility u_" + std::to_string(i) + "(r_" +
                      std::to_string(r) + ")");
      }
    }
  }

  std::vector<int> seen(inst.m, 0);
  for (int a = 0; a < inst.n; ++a) {
    for (int r : inst.bundle[a]) {
      if (r < 0 || r >= inst.m) {
        out.push_back("allocation of agent " + std::to_string(a) +
                      " mentions unknown resource " + std::to_string(r));
        continue;
      }
      ++seen[r];
      if (inst.owner[r] != a) {
        out.push_back("owner table disagrees with allocation on resource " +
                      std::to_string(r));
      }
    }
  }
  for (int r = 0; r < inst.m; ++r) {
    if (seen[r] != 1) {
      out.push_back("resource " + std::to_string(r) + " appears in " +
                    std::to_string(seen[r]) + " bundles (needs exactly 1)");
    }
  }

  for (int i = 0; i < inst.n; ++i) {
    if (inst.sharing[i][i]) {
      out.push_back("sharing graph has a self-loop at agent " +
                    std::to_string(i));
    }
    if (inst.attention[i][i]) {
      out.push_back("attention graph has a self-loop at agent " +
                    std::to_string(i));
    }
    for (int j = i + 1; j < inst.n; ++j) {
      if (inst.sharing[i][j] != inst.sharing[j][i]) {
        out.push_back("sharing graph is not symmetric on {" +
                      std::to_string(i) + "," + std::to_string(j) + "}");
      }
      if (inst.edge_cost[i][j] != inst.edge_cost[j][i]) {
        out.push_back("edge costs are not symmetric on {" + std::to_string(i) +
                      "," + std::to_string(j) + "}");
      }
      if (inst.edge_cost[i][j] < 0) {
        out.push_back("negative cost on edge {" + std::to_string(i) + "," +
                      std::to_string(j) + "}");
      }
      if (inst.edge_cost[i][j] != 0 && !inst.sharing[i][j]) {
        out.push_back("cost assigned to non-edge {" + std::to_string(i) + "," +
                      std::to_string(j) + "}");
      }
    }
  }

  if (inst.ext.alpha < 0 || inst.ext.alpha > 1) {
    out.push_back("alpha outside [0, 1]");
  }
  if (inst.ext.beta < 0 || inst.ext.beta > 1) {
    out.push_back("beta outside [0, 1]");
  }
  if (inst.ext.budget.has_value() && *inst.ext.budget < 0) {
    out.push_back("negative budget");
  }
  return out;
}

void normalize_sharing(Sharing& sharing) {
  for (auto& a : sharing.assignments) {
    if (a.u > a.v) std::swap(a.u, a.v);
  }
  std::sort(sharing.assignments.begin(), sharing.assignments.end(),
            [](const Assignment& lhs, const Assignment& rhs) {
              return std::tie(lhs.u, lhs.v, lhs.resource) <
                     std::tie(rhs.u, rhs.v, rhs.resource);
            });
}

const char* violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kBadIndex:
      return "bad-index";
    case ViolationKind::kEdgeNotInGraph:
      return "edge-not-in-graph";
    case ViolationKind::kOwnership:
      return "ownership";
    case ViolationKind::kTripleAccess:
      return "triple-access";
    case ViolationKind::kPerAgentBound:
      return "per-agent-bound";
  }
  return "unknown";
}

std::vector<Violation> validate_sharing(const Instance& inst,
                                        const Sharing& sharing) {
  std::vector<Violation> out;
  if (sharing.bound < 0) {
    out.push_back(
        {ViolationKind::kPerAgentBound, "declared bound is negative"});
  }

  std::vector<int> resource_uses(inst.m, 0);
  std::vector<int> agent_uses(inst.n, 0);
  for (std::size_t t = 0; t < sharing.assignments.size(); ++t) {
    const Assignment& a = sharing.assignments[t];
    const std::string where = "assignment #" + std::to_string(t);
    if (a.u < 0 || a.u >= inst.n || a.v < 0 || a.v >= inst.n || a.u == a.v) {
      out.push_back({ViolationKind::kBadIndex,
                     where + ": endpoints {" + std::to_string(a.u) + "," +
                         std::to_string(a.v) + "} are not two distinct agents"});
      continue;
    }
    if (a.resource < 0 || a.resource >= inst.m) {
      out.push_back({ViolationKind::kBadIndex,
                     where + ": resource " + std::to_string(a.resource) +
                         " out of range"});
      continue;
    }
    const int u = std::min(a.u, a.v);
    const int v = std::max(a.u, a.v);
    if (!inst.sharing[u][v]) {
      out.push_back({ViolationKind::kEdgeNotInGraph,
                     where + ": {" + std::to_string(u) + "," +
                         std::to_string(v) + "} is not a sharing edge"});
    }
    if (inst.owner[a.resource] != u && inst.owner[a.resource] != v) {
      out.push_back({ViolationKind::kOwnership,
                     where + ": resource " + std::to_string(a.resource) +
                         " is owned by neither endpoint"});
    }
    ++resource_uses[a.resource];
    ++agent_uses[u];
    ++agent_uses[v];
  }

  for (int r = 0; r < inst.m; ++r) {
    if (resource_uses[r] > 1) {
      out.push_back({ViolationKind::kTripleAccess,
                     "resource " + std::to_string(r) + " appears in " +
                         std::to_string(resource_uses[r]) +
                         " assignments (at most 1 allowed)"});
    }
  }
  for (int i = 0; i < inst.n; ++i) {
    if (agent_uses[i] > sharing.bound) {
      out.push_back({ViolationKind::kPerAgentBound,
                     "agent " + std::to_string(i) + " participates in " +
                         std::to_string(agent_uses[i]) +
                         " sharings, bound is " +
                         std::to_string(sharing.bound)});
    }
  }
  return out;
}

SharingAllocation derive_bundles(const Instance& inst, const Sharing& sharing) {
  const std::vector<Violation> violations = validate_sharing(inst, sharing);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid sharing:";
    for (const auto& v : violations) {
      msg << "\n  [" << violation_kind_name(v.kind) << "] " << v.detail;
    }
    throw InputError(msg.str());
  }

  SharingAllocation out;
  out.kept = inst.bundle;
  out.received.resize(inst.n);
  out.donated.resize(inst.n);
  for (const Assignment& a : sharing.assignments) {
    const int donor = inst.owner[a.resource];
    const int receiver = (donor == a.u) ? a.v : a.u;
    auto& kept = out.kept[donor];
    kept.erase(std::find(kept.begin(), kept.end(), a.resource));
    out.donated[donor].push_back(a.resource);
    out.received[receiver].push_back(a.resource);
  }
  for (int i = 0; i < inst.n; ++i) {
    std::sort(out.kept[i].begin(), out.kept[i].end());
    std::sort(out.received[i].begin(), out.received[i].end());
    std::sort(out.donated[i].begin(), out.donated[i].end());
  }
  return out;
}

namespace {

// kept + alpha * donated + beta * received, all valued through `eyes`'s
// utility row. Shared by the own-value and perceived-value computations: the
// envied side mirrors the owner side by design.
Rat weighted_bundle_value(const Instance& inst, const SharingAllocation& b,
                          int eyes, int holder) {
  Int kept = 0;
  Int donated = 0;
  Int received = 0;
  for (int r : b.kept[holder]) kept += inst.utility[eyes][r];
  for (int r : b.donated[holder]) donated += inst.utility[eyes][r];
  for (int r : b.received[holder]) received += inst.utility[eyes][r];
  return Rat(kept) + inst.ext.alpha * Rat(donated) +
         inst.ext.beta * Rat(received);
}

}  // namespace

Rat own_utility(const Instance& inst, const SharingAllocation& bundles,
                int i) {
  return weighted_bundle_value(inst, bundles, i, i);
}

Rat perceived_value(const Instance& inst, const SharingAllocation& bundles,
                    int viewer, int about) {
  if (viewer == about) {
    throw InputError("perceived value needs two distinct agents");
  }
  return weighted_bundle_value(inst, bundles, viewer, about);
}

EnvyReport envious_agents(const Instance& inst, const Sharing& sharing) {
  const SharingAllocation bundles = derive_bundles(inst, sharing);
  EnvyReport report;
  for (int i = 0; i < inst.n; ++i) {
    const Rat own = own_utility(inst, bundles, i);
    for (int j = 0; j < inst.n; ++j) {
      if (j == i || !inst.attention[i][j]) continue;
      if (own < perceived_value(inst, bundles, i, j)) {
        report.envious.push_back(i);
        report.witness_arcs.emplace_back(i, j);
        break;
      }
    }
  }
  return report;
}

std::pair<Rat, Rat> welfare(const Instance& inst, const Sharing& sharing) {
  const SharingAllocation bundles = derive_bundles(inst, sharing);
  Rat total = 0;
  Rat lowest = 0;
  for (int i = 0; i < inst.n; ++i) {
    const Rat value = own_utility(inst, bundles, i);
    total += value;
    if (i == 0 || value < lowest) lowest = value;
  }
  return {total, lowest};
}

Int sharing_cost(const Instance& inst, const Sharing& sharing) {
  std::set<std::pair<int, int>> edges;
  for (const Assignment& a : sharing.assignments) {
    edges.emplace(std::min(a.u, a.v), std::max(a.u, a.v));
  }
  Int total = 0;
  for (const auto& [u, v] : edges) total += inst.edge_cost[u][v];
  return total;
}

}  // namespace sharing
