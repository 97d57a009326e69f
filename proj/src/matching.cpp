#include "sharing/matching.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>

#include "sharing/errors.hpp"

namespace sharing {

void validate_graph(const WeightedGraph& g) {
  if (g.vertex_count < 0) throw InputError("negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : g.edges) {
    if (e.u < 0 || e.u >= g.vertex_count || e.v < 0 ||
        e.v >= g.vertex_count) {
      throw InputError("edge endpoint out of range");
    }
    if (e.u >= e.v) {
      throw InputError("edges must satisfy u < v (no self-loops)");
    }
    if (!seen.insert({e.u, e.v}).second) {
      throw InputError("duplicate edge {" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + "}");
    }
    if (e.weight < 0) throw InputError("negative edge weight");
  }
}

namespace {

// Blossom algorithm for maximum weight matching on general graphs, in the
// primal-dual formulation with per-vertex and per-blossom dual variables.
// The search alternates breadth-first growth of alternating trees with dual
// adjustments; odd cycles are shrunk into blossom pseudo-vertices which are
// expanded again when their dual reaches zero.
//
// Bookkeeping conventions:
//   - Edge k has two directed "endpoint codes" 2k and 2k+1; endpoint_[p]
//     is the vertex that code p points at, and p ^ 1 is the opposite end.
//   - Ids 0..n-1 are vertices, ids n..2n-1 are blossom slots.
//   - label 1 = S (even side of a tree), 2 = T (odd side), 0 = free;
//     bit 4 marks breadcrumbs while tracing paths toward a common root.
//
// Slack of edge (i, j) is dual_i + dual_j - 2*w(i, j) with duals initialized
// to the maximum edge weight; in this doubled-dual formulation all duals
// stay exact integers for integer weights, and the S-S slacks halved during
// dual adjustment stay even (asserted below).
class BlossomMatcher {
 public:
  BlossomMatcher(int n, const std::vector<WeightedEdge>& edges)
      : n_(n), edges_(edges) {
    const int m = static_cast<int>(edges_.size());
    max_weight_ = 0;
    for (const auto& e : edges_) max_weight_ = std::max(max_weight_, e.weight);
    endpoint_.reserve(2 * m);
    for (const auto& e : edges_) {
      endpoint_.push_back(e.u);
      endpoint_.push_back(e.v);
    }
    neighb_ends_.assign(n_, {});
    for (int k = 0; k < m; ++k) {
      neighb_ends_[edges_[k].u].push_back(2 * k + 1);
      neighb_ends_[edges_[k].v].push_back(2 * k);
    }
    mate_.assign(n_, -1);
    label_.assign(2 * n_, 0);
    label_end_.assign(2 * n_, -1);
    in_blossom_.resize(n_);
    for (int v = 0; v < n_; ++v) in_blossom_[v] = v;
    blossom_parent_.assign(2 * n_, -1);
    blossom_childs_.assign(2 * n_, {});
    blossom_base_.assign(2 * n_, -1);
    for (int v = 0; v < n_; ++v) blossom_base_[v] = v;
    blossom_endps_.assign(2 * n_, {});
    best_edge_.assign(2 * n_, -1);
    blossom_best_edges_.assign(2 * n_, std::nullopt);
    for (int b = 2 * n_ - 1; b >= n_; --b) unused_blossoms_.push_back(b);
    dual_.assign(2 * n_, Int(0));
    for (int v = 0; v < n_; ++v) dual_[v] = max_weight_;
    allow_edge_.assign(m, false);
  }

  // mate per vertex (partner id or -1).
  std::vector<int> solve() {
    if (n_ == 0 || edges_.empty()) return std::vector<int>(n_, -1);
    for (int stage = 0; stage < n_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(best_edge_.begin(), best_edge_.end(), -1);
      for (int b = n_; b < 2 * n_; ++b) blossom_best_edges_[b].reset();
      std::fill(allow_edge_.begin(), allow_edge_.end(), false);
      queue_.clear();

      for (int v = 0; v < n_; ++v) {
        if (mate_[v] == -1 && label_[in_blossom_[v]] == 0) {
          assign_label(v, 1, -1);
        }
      }

      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          assert(label_[in_blossom_[v]] == 1);
          for (const int p : neighb_ends_[v]) {
            const int k = p / 2;
            const int w = endpoint_[p];
            if (in_blossom_[v] == in_blossom_[w]) continue;
            Int kslack;
            if (!allow_edge_[k]) {
              kslack = slack(k);
              if (kslack <= 0) allow_edge_[k] = true;
            }
            if (allow_edge_[k]) {
              if (label_[in_blossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[in_blossom_[w]] == 1) {
                const int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                assert(label_[in_blossom_[w]] == 2);
                label_[w] = 2;
                label_end_[w] = p ^ 1;
              }
            } else if (label_[in_blossom_[w]] == 1) {
              const int b = in_blossom_[v];
              if (best_edge_[b] == -1 || kslack < slack(best_edge_[b])) {
                best_edge_[b] = k;
              }
            } else if (label_[w] == 0) {
              if (best_edge_[w] == -1 || kslack < slack(best_edge_[w])) {
                best_edge_[w] = k;
              }
            }
          }
        }
        if (augmented) break;

        // No augmenting path with the current duals; adjust them by the
        // largest step that keeps the solution dual-feasible.
        int delta_type = 1;
        Int delta = dual_[0];
        for (int v = 1; v < n_; ++v) delta = std::min(delta, dual_[v]);
        int delta_edge = -1;
        int delta_blossom = -1;
        for (int v = 0; v < n_; ++v) {
          if (label_[in_blossom_[v]] == 0 && best_edge_[v] != -1) {
            const Int d = slack(best_edge_[v]);
            if (d < delta) {
              delta = d;
              delta_type = 2;
              delta_edge = best_edge_[v];
            }
          }
        }
        for (int b = 0; b < 2 * n_; ++b) {
          if (blossom_parent_[b] == -1 && label_[b] == 1 &&
              best_edge_[b] != -1) {
            const Int kslack = slack(best_edge_[b]);
            assert(kslack % 2 == 0);
            const Int d = kslack / 2;
            if (d < delta) {
              delta = d;
              delta_type = 3;
              delta_edge = best_edge_[b];
            }
          }
        }
        for (int b = n_; b < 2 * n_; ++b) {
          if (blossom_base_[b] >= 0 && blossom_parent_[b] == -1 &&
              label_[b] == 2 && dual_[b] < delta) {
            delta = dual_[b];
            delta_type = 4;
            delta_blossom = b;
          }
        }

        for (int v = 0; v < n_; ++v) {
          if (label_[in_blossom_[v]] == 1) {
            dual_[v] -= delta;
          } else if (label_[in_blossom_[v]] == 2) {
            dual_[v] += delta;
          }
        }
        for (int b = n_; b < 2 * n_; ++b) {
          if (blossom_base_[b] >= 0 && blossom_parent_[b] == -1) {
            if (label_[b] == 1) {
              dual_[b] += delta;
            } else if (label_[b] == 2) {
              dual_[b] -= delta;
            }
          }
        }

        if (delta_type == 1) {
          break;  // optimum reached
        } else if (delta_type == 2) {
          allow_edge_[delta_edge] = true;
          int i = edges_[delta_edge].u;
          if (label_[in_blossom_[i]] == 0) i = edges_[delta_edge].v;
          assert(label_[in_blossom_[i]] == 1);
          queue_.push_back(i);
        } else if (delta_type == 3) {
          allow_edge_[delta_edge] = true;
          assert(label_[in_blossom_[edges_[delta_edge].u]] == 1);
          queue_.push_back(edges_[delta_edge].u);
        } else {
          expand_blossom(delta_blossom, false);
        }
      }

      if (!augmented) break;

      for (int b = n_; b < 2 * n_; ++b) {
        if (blossom_parent_[b] == -1 && blossom_base_[b] >= 0 &&
            label_[b] == 1 && dual_[b] == 0) {
          expand_blossom(b, true);
        }
      }
    }

    std::vector<int> result(n_, -1);
    for (int v = 0; v < n_; ++v) {
      if (mate_[v] >= 0) result[v] = endpoint_[mate_[v]];
    }
    for (int v = 0; v < n_; ++v) {
      assert(result[v] == -1 || result[result[v]] == v);
    }
    return result;
  }

 private:
  Int slack(int k) const {
    return dual_[edges_[k].u] + dual_[edges_[k].v] - 2 * edges_[k].weight;
  }

  void blossom_leaves(int b, std::vector<int>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (const int child : blossom_childs_[b]) blossom_leaves(child, out);
  }

  void assign_label(int w, int t, int p) {
    const int b = in_blossom_[w];
    assert(label_[w] == 0 && label_[b] == 0);
    label_[w] = label_[b] = t;
    label_end_[w] = label_end_[b] = p;
    best_edge_[w] = best_edge_[b] = -1;
    if (t == 1) {
      std::vector<int> leaves;
      blossom_leaves(b, leaves);
      queue_.insert(queue_.end(), leaves.begin(), leaves.end());
    } else {
      const int base = blossom_base_[b];
      assert(mate_[base] >= 0);
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  // Trace back from both ends of an S-S edge; returns the base of the new
  // blossom if the paths meet, or -1 if they reach two distinct roots
  // (an augmenting path).
  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = in_blossom_[v];
      if (label_[b] & 4) {
        base = blossom_base_[b];
        break;
      }
      assert(label_[b] == 1);
      path.push_back(b);
      label_[b] = 5;
      assert(label_end_[b] == mate_[blossom_base_[b]]);
      if (label_end_[b] == -1) {
        v = -1;  // reached a root
      } else {
        v = endpoint_[label_end_[b]];
        b = in_blossom_[v];
        assert(label_[b] == 2);
        assert(label_end_[b] >= 0);
        v = endpoint_[label_end_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (const int b : path) label_[b] = 1;
    return base;
  }

  // Shrink the odd cycle through edge k and the two tree paths to `base`
  // into a fresh blossom slot; the new blossom is an S-blossom.
  void add_blossom(int base, int k) {
    int v = edges_[k].u;
    int w = edges_[k].v;
    const int bb = in_blossom_[base];
    int bv = in_blossom_[v];
    int bw = in_blossom_[w];
    const int b = unused_blossoms_.back();
    unused_blossoms_.pop_back();
    blossom_base_[b] = base;
    blossom_parent_[b] = -1;
    blossom_parent_[bb] = b;
    std::vector<int> path;
    std::vector<int> endps;
    while (bv != bb) {
      blossom_parent_[bv] = b;
      path.push_back(bv);
      endps.push_back(label_end_[bv]);
      assert(label_[bv] == 2 ||
             (label_[bv] == 1 &&
              label_end_[bv] == mate_[blossom_base_[bv]]));
      assert(label_end_[bv] >= 0);
      v = endpoint_[label_end_[bv]];
      bv = in_blossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossom_parent_[bw] = b;
      path.push_back(bw);
      endps.push_back(label_end_[bw] ^ 1);
      assert(label_[bw] == 2 ||
             (label_[bw] == 1 &&
              label_end_[bw] == mate_[blossom_base_[bw]]));
      assert(label_end_[bw] >= 0);
      w = endpoint_[label_end_[bw]];
      bw = in_blossom_[w];
    }
    blossom_childs_[b] = path;
    blossom_endps_[b] = endps;
    assert(label_[bb] == 1);
    label_[b] = 1;
    label_end_[b] = label_end_[bb];
    dual_[b] = 0;
    std::vector<int> leaves;
    blossom_leaves(b, leaves);
    for (const int leaf : leaves) {
      if (label_[in_blossom_[leaf]] == 2) queue_.push_back(leaf);
      in_blossom_[leaf] = b;
    }

    // Merge the per-subblossom least-slack edge lists into one for b.
    std::vector<int> best_edge_to(2 * n_, -1);
    for (const int sub : path) {
      std::vector<std::vector<int>> nblists;
      if (!blossom_best_edges_[sub].has_value()) {
        std::vector<int> sub_leaves;
        blossom_leaves(sub, sub_leaves);
        for (const int leaf : sub_leaves) {
          std::vector<int> ks;
          ks.reserve(neighb_ends_[leaf].size());
          for (const int p : neighb_ends_[leaf]) ks.push_back(p / 2);
          nblists.push_back(std::move(ks));
        }
      } else {
        nblists.push_back(*blossom_best_edges_[sub]);
      }
      for (const auto& nblist : nblists) {
        for (const int ek : nblist) {
          int j = edges_[ek].v;
          if (in_blossom_[j] == b) j = edges_[ek].u;
          const int bj = in_blossom_[j];
          if (bj != b && label_[bj] == 1 &&
              (best_edge_to[bj] == -1 ||
               slack(ek) < slack(best_edge_to[bj]))) {
            best_edge_to[bj] = ek;
          }
        }
      }
      blossom_best_edges_[sub].reset();
      best_edge_[sub] = -1;
    }
    std::vector<int> merged;
    for (const int ek : best_edge_to) {
      if (ek != -1) merged.push_back(ek);
    }
    best_edge_[b] = -1;
    for (const int ek : merged) {
      if (best_edge_[b] == -1 || slack(ek) < slack(best_edge_[b])) {
        best_edge_[b] = ek;
      }
    }
    blossom_best_edges_[b] = std::move(merged);
  }

  int child_at(int b, int j) const {
    const int len = static_cast<int>(blossom_childs_[b].size());
    return blossom_childs_[b][((j % len) + len) % len];
  }

  int endp_at(int b, int j) const {
    const int len = static_cast<int>(blossom_endps_[b].size());
    return blossom_endps_[b][((j % len) + len) % len];
  }

  // Undo a shrink. During a stage (endstage false) this happens when a
  // T-blossom's dual hits zero: the cycle is cut open and its pieces are
  // relabeled so the alternating tree stays consistent. At the end of a
  // stage the structure is simply dismantled.
  void expand_blossom(int b, bool endstage) {
    for (const int s : blossom_childs_[b]) {
      blossom_parent_[s] = -1;
      if (s < n_) {
        in_blossom_[s] = s;
      } else if (endstage && dual_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        std::vector<int> leaves;
        blossom_leaves(s, leaves);
        for (const int leaf : leaves) in_blossom_[leaf] = s;
      }
    }

    if (!endstage && label_[b] == 2) {
      assert(label_end_[b] >= 0);
      const int entry_child = in_blossom_[endpoint_[label_end_[b] ^ 1]];
      int j = 0;
      const int len = static_cast<int>(blossom_childs_[b].size());
      for (int t = 0; t < len; ++t) {
        if (blossom_childs_[b][t] == entry_child) {
          j = t;
          break;
        }
      }
      int jstep;
      int endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = label_end_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[endp_at(b, j - endptrick) ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allow_edge_[endp_at(b, j - endptrick) / 2] = true;
        j += jstep;
        p = endp_at(b, j - endptrick) ^ endptrick;
        allow_edge_[p / 2] = true;
        j += jstep;
      }
      const int bv = child_at(b, j);
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      label_end_[endpoint_[p ^ 1]] = label_end_[bv] = p;
      best_edge_[bv] = -1;
      j += jstep;
      while (child_at(b, j) != entry_child) {
        const int bw = child_at(b, j);
        if (label_[bw] == 1) {
          j += jstep;
          continue;
        }
        std::vector<int> leaves;
        blossom_leaves(bw, leaves);
        int labeled = -1;
        for (const int leaf : leaves) {
          if (label_[leaf] != 0) {
            labeled = leaf;
            break;
          }
        }
        if (labeled != -1) {
          assert(label_[labeled] == 2);
          assert(in_blossom_[labeled] == bw);
          label_[labeled] = 0;
          label_[endpoint_[mate_[blossom_base_[bw]]]] = 0;
          assign_label(labeled, 2, label_end_[labeled]);
        }
        j += jstep;
      }
    }

    label_[b] = -1;
    label_end_[b] = -1;
    blossom_childs_[b].clear();
    blossom_endps_[b].clear();
    blossom_base_[b] = -1;
    blossom_best_edges_[b].reset();
    best_edge_[b] = -1;
    unused_blossoms_.push_back(b);
  }

  // Swap matched and unmatched edges along the path inside blossom b from
  // vertex v to the blossom base, then rotate the child list so v becomes
  // the base.
  void augment_blossom(int b, int v) {
    int t = v;
    while (blossom_parent_[t] != b) t = blossom_parent_[t];
    if (t >= n_) augment_blossom(t, v);
    const int len = static_cast<int>(blossom_childs_[b].size());
    int i = 0;
    for (int q = 0; q < len; ++q) {
      if (blossom_childs_[b][q] == t) {
        i = q;
        break;
      }
    }
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      int child = child_at(b, j);
      const int p = endp_at(b, j - endptrick) ^ endptrick;
      if (child >= n_) augment_blossom(child, endpoint_[p]);
      j += jstep;
      child = child_at(b, j);
      if (child >= n_) augment_blossom(child, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(blossom_childs_[b].begin(), blossom_childs_[b].begin() + i,
                blossom_childs_[b].end());
    std::rotate(blossom_endps_[b].begin(), blossom_endps_[b].begin() + i,
                blossom_endps_[b].end());
    blossom_base_[b] = blossom_base_[blossom_childs_[b][0]];
    assert(blossom_base_[b] == v);
  }

  // Swap matched and unmatched edges along the augmenting path through
  // edge k, from both of its ends up to the tree roots.
  void augment_matching(int k) {
    const int ku = edges_[k].u;
    const int kv = edges_[k].v;
    const std::pair<int, int> starts[2] = {{ku, 2 * k + 1}, {kv, 2 * k}};
    for (const auto& [start_s, start_p] : starts) {
      int s = start_s;
      int p = start_p;
      while (true) {
        const int bs = in_blossom_[s];
        assert(label_[bs] == 1);
        assert(label_end_[bs] == mate_[blossom_base_[bs]]);
        if (bs >= n_) augment_blossom(bs, s);
        mate_[s] = p;
        if (label_end_[bs] == -1) break;  // reached a root
        const int t = endpoint_[label_end_[bs]];
        const int bt = in_blossom_[t];
        assert(label_[bt] == 2);
        assert(label_end_[bt] >= 0);
        s = endpoint_[label_end_[bt]];
        const int j = endpoint_[label_end_[bt] ^ 1];
        assert(blossom_base_[bt] == t);
        if (bt >= n_) augment_blossom(bt, j);
        mate_[j] = label_end_[bt];
        p = label_end_[bt] ^ 1;
      }
    }
  }

  int n_;
  std::vector<WeightedEdge> edges_;
  Int max_weight_{0};
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighb_ends_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> label_end_;
  std::vector<int> in_blossom_;
  std::vector<int> blossom_parent_;
  std::vector<std::vector<int>> blossom_childs_;
  std::vector<int> blossom_base_;
  std::vector<std::vector<int>> blossom_endps_;
  std::vector<int> best_edge_;
  std::vector<std::optional<std::vector<int>>> blossom_best_edges_;
  std::vector<int> unused_blossoms_;
  std::vector<Int> dual_;
  std::vector<bool> allow_edge_;
  std::vector<int> queue_;
};

Matching collect_matching(const WeightedGraph& g, const std::vector<int>& mate) {
  Matching result;
  for (const auto& e : g.edges) {
    if (mate[e.u] == e.v) {
      result.edges.emplace_back(e.u, e.v);
      result.total_weight += e.weight;
    }
  }
  std::sort(result.edges.begin(), result.edges.end());
  result.cardinality = static_cast<int>(result.edges.size());
  return result;
}

}  // namespace

Matching max_weight_matching(const WeightedGraph& g) {
  validate_graph(g);
  BlossomMatcher matcher(g.vertex_count, g.edges);
  return collect_matching(g, matcher.solve());
}

Matching max_cardinality_bipartite_matching(
    int left_size, int right_size,
    const std::vector<std::pair<int, int>>& edges) {
  if (left_size < 0 || right_size < 0) {
    throw InputError("negative side size");
  }
  std::vector<std::vector<int>> adj(left_size);
  for (const auto& [l, r] : edges) {
    if (l < 0 || l >= left_size || r < 0 || r >= right_size) {
      throw InputError("bipartite edge endpoint out of range");
    }
    adj[l].push_back(r);
  }

  // Hopcroft-Karp: repeat (layered BFS from free left vertices, then DFS
  // along the layers) until no augmenting path remains.
  const int kInf = 1 << 30;
  std::vector<int> match_l(left_size, -1), match_r(right_size, -1);
  std::vector<int> dist(left_size, 0);

  const auto bfs = [&]() {
    std::queue<int> q;
    bool found = false;
    for (int l = 0; l < left_size; ++l) {
      if (match_l[l] == -1) {
        dist[l] = 0;
        q.push(l);
      } else {
        dist[l] = kInf;
      }
    }
    while (!q.empty()) {
      const int l = q.front();
      q.pop();
      for (const int r : adj[l]) {
        const int next = match_r[r];
        if (next == -1) {
          found = true;
        } else if (dist[next] == kInf) {
          dist[next] = dist[l] + 1;
          q.push(next);
        }
      }
    }
    return found;
  };

  const std::function<bool(int)> try_augment = [&](int l) {
    for (const int r : adj[l]) {
      const int next = match_r[r];
      if (next == -1 || (dist[next] == dist[l] + 1 && try_augment(next))) {
        match_l[l] = r;
        match_r[r] = l;
        return true;
      }
    }
    dist[l] = kInf;
    return false;
  };

  while (bfs()) {
    for (int l = 0; l < left_size; ++l) {
      if (match_l[l] == -1) try_augment(l);
    }
  }

  Matching result;
  for (int l = 0; l < left_size; ++l) {
    if (match_l[l] != -1) {
      result.edges.emplace_back(l, left_size + match_l[l]);
    }
  }
  result.cardinality = static_cast<int>(result.edges.size());
  result.total_weight = result.cardinality;
  return result;
}

namespace {

// Shared padding step: add `pad_count` fresh vertices joined to every
// original vertex at weight C = (sum of g's weights) + 1, solve once, and
// return the optimum restricted to original edges. Because C exceeds any
// combination of original weights, the optimum saturates all pad vertices,
// which caps how many original vertices remain for original edges.
Matching padded_optimum(const WeightedGraph& g, int pad_count) {
  WeightedGraph padded = g;
  Int pad_weight = 1;
  for (const auto& e : g.edges) pad_weight += e.weight;
  for (int t = 0; t < pad_count; ++t) {
    const int pv = g.vertex_count + t;
    for (int u = 0; u < g.vertex_count; ++u) {
      padded.edges.push_back({u, pv, pad_weight});
    }
  }
  padded.vertex_count = g.vertex_count + pad_count;
  const Matching full = max_weight_matching(padded);

  Matching restricted;
  std::set<std::pair<int, int>> chosen(full.edges.begin(), full.edges.end());
  for (const auto& e : g.edges) {
    if (chosen.count({e.u, e.v})) {
      restricted.edges.emplace_back(e.u, e.v);
      restricted.total_weight += e.weight;
    }
  }
  std::sort(restricted.edges.begin(), restricted.edges.end());
  restricted.cardinality = static_cast<int>(restricted.edges.size());
  return restricted;
}

}  // namespace

MatchingDecision solve_sbmwm(const WeightedGraph& g, int max_size,
                             const Int& min_weight) {
  validate_graph(g);
  if (max_size < 0 || min_weight < 0) {
    throw InputError("size cap and weight floor must be non-negative");
  }
  const int k1 = std::min(max_size, g.vertex_count / 2);
  const Matching best = padded_optimum(g, g.vertex_count - 2 * k1);
  assert(best.cardinality <= k1);
  if (best.total_weight >= min_weight) return {true, best};
  return {false, {}};
}

MatchingDecision solve_wbmm(const WeightedGraph& g, const Int& max_weight,
                            int min_size) {
  validate_graph(g);
  if (max_weight < 0 || min_size < 0) {
    throw InputError("weight cap and size floor must be non-negative");
  }
  if (min_size == 0) return {true, {}};
  if (min_size > g.vertex_count / 2) return {false, {}};

  Int top{0};
  for (const auto& e : g.edges) top = std::max(top, e.weight);
  Int boost = 1;
  for (const auto& e : g.edges) boost += top - e.weight;

  // Flipped-and-boosted weights: maximizing (boost + top - w) per edge makes
  // cardinality dominate, then minimizes the original weight.
  WeightedGraph flipped;
  flipped.vertex_count = g.vertex_count;
  for (const auto& e : g.edges) {
    flipped.edges.push_back({e.u, e.v, boost + top - e.weight});
  }
  const Matching flipped_best =
      padded_optimum(flipped, g.vertex_count - 2 * min_size);
  if (flipped_best.cardinality != min_size) {
    return {false, {}};  // no matching of the required size exists
  }

  Matching witness;
  std::set<std::pair<int, int>> chosen(flipped_best.edges.begin(),
                                       flipped_best.edges.end());
  for (const auto& e : g.edges) {
    if (chosen.count({e.u, e.v})) {
      witness.edges.emplace_back(e.u, e.v);
      witness.total_weight += e.weight;
    }
  }
  std::sort(witness.edges.begin(), witness.edges.end());
  witness.cardinality = static_cast<int>(witness.edges.size());
  if (witness.total_weight <= max_weight) return {true, witness};
  return {false, {}};
}

}  // namespace sharing
