// Copyright 2026 The GSPP Toolkit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GSPP_MATCHING_HPP
#define GSPP_MATCHING_HPP

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gspp/cost.hpp"

namespace gspp {

struct Edge {
  int u = 0;
  int v = 0;
  Cost weight = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph with nonnegative fixed-point edge weights.
struct WeightedGraph {
  int n = 0;
  std::vector<Edge> edges;

  WeightedGraph() = default;
  explicit WeightedGraph(int vertices) : n(vertices) {}

  void add_edge(int u, int v, Cost weight) {
    if (u > v) std::swap(u, v);
    edges.push_back({u, v, weight});
  }

  /// Throws ContractError on self-loops, parallel edges, bad endpoints or
  /// negative weights.
  void validate() const {
    if (n < 0) throw ContractError("graph: negative vertex count");
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges) {
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
        throw ContractError("graph: edge endpoint out of range");
      }
      if (e.u == e.v) throw ContractError("graph: self-loop");
      if (e.weight < 0) throw ContractError("graph: negative edge weight");
      if (e.weight > kMaxFiniteCost * 2) {
        throw ContractError("graph: edge weight too large");
      }
      auto key = std::minmax(e.u, e.v);
      if (!seen.insert(key).second) throw ContractError("graph: parallel edge");
    }
  }
};

struct Matching {
  std::vector<Edge> edges;  // u < v, sorted
  Cost weight = 0;
};

/// Maximum-weight (not necessarily perfect) matching on a general graph.
///
/// Edmonds' primal-dual blossom method in the O(n^3) formulation with
/// explicit blossom bookkeeping. Vertex duals start at max weight and edge
/// slack is du + dv - 2w, i.e. all duals are carried at twice their value so
/// integer weights keep every dual integral. Buffers are reused across calls;
/// one instance per thread.
class MatchingSolver {
 public:
  /// Returns mate[v] (vertex or -1). Input must already be a valid graph.
  const std::vector<int>& solve(int n, std::span<const Edge> edges) {
    init(n, edges);
    if (!edges.empty()) run();
    for (int v = 0; v < nvertex_; ++v) {
      matched_edge_[v] = mate_[v] >= 0 ? mate_[v] / 2 : -1;
      if (mate_[v] >= 0) mate_[v] = endpoint_[mate_[v]];
    }
    return mate_;
  }

  /// Edge index matched at each vertex after solve(), or -1.
  const std::vector<int>& matched_edge() const { return matched_edge_; }

  Cost max_weight(int n, std::span<const Edge> edges) {
    solve(n, edges);
    Cost total = 0;
    for (int v = 0; v < nvertex_; ++v) {
      if (mate_[v] > v) total += edges[matched_edge_[v]].weight;
    }
    return total;
  }

 private:
  void init(int n, std::span<const Edge> edges) {
    edges_ = edges;
    nvertex_ = n;
    nedge_ = static_cast<int>(edges.size());
    const auto n2 = static_cast<std::size_t>(2 * n);
    Cost maxweight = 0;
    for (const Edge& e : edges) maxweight = std::max(maxweight, e.weight);
    endpoint_.resize(static_cast<std::size_t>(2 * nedge_));
    neighbend_.assign(static_cast<std::size_t>(n), {});
    for (int k = 0; k < nedge_; ++k) {
      endpoint_[2 * k] = edges[k].u;
      endpoint_[2 * k + 1] = edges[k].v;
      neighbend_[edges[k].u].push_back(2 * k + 1);
      neighbend_[edges[k].v].push_back(2 * k);
    }
    mate_.assign(static_cast<std::size_t>(n), -1);
    matched_edge_.assign(static_cast<std::size_t>(n), -1);
    label_.assign(n2, 0);
    labelend_.assign(n2, -1);
    inblossom_.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) inblossom_[v] = v;
    blossomparent_.assign(n2, -1);
    blossomchilds_.assign(n2, {});
    blossomendps_.assign(n2, {});
    blossombase_.assign(n2, -1);
    for (int v = 0; v < n; ++v) blossombase_[v] = v;
    bestedge_.assign(n2, -1);
    blossombestedges_.assign(n2, {});
    has_bestedges_.assign(n2, 0);
    unusedblossoms_.clear();
    for (int b = n; b < 2 * n; ++b) unusedblossoms_.push_back(b);
    dualvar_.assign(n2, 0);
    for (int v = 0; v < n; ++v) dualvar_[v] = maxweight;
    allowedge_.assign(static_cast<std::size_t>(nedge_), 0);
    queue_.clear();
  }

  Cost slack(int k) const {
    const Edge& e = edges_[k];
    return dualvar_[e.u] + dualvar_[e.v] - 2 * e.weight;
  }

  void leaves(int b, std::vector<int>& out) const {
    if (b < nvertex_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[b]) leaves(t, out);
  }

  static int wrap(int j, std::size_t len) {
    return j < 0 ? j + static_cast<int>(len) : j;
  }

  void assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      leaves(b, queue_);
    } else if (t == 2) {
      const int base = blossombase_[b];
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      path.push_back(b);
      label_[b] = 5;
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = edges_[k].u;
    int w = edges_[k].v;
    const int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    const int b = unusedblossoms_.back();
    unusedblossoms_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    auto& path = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;
    std::vector<int> lv;
    leaves(b, lv);
    for (int x : lv) {
      if (label_[inblossom_[x]] == 2) queue_.push_back(x);
      inblossom_[x] = b;
    }

    std::vector<int> bestedgeto(static_cast<std::size_t>(2 * nvertex_), -1);
    auto consider = [&](int kk) {
      int i = edges_[kk].u;
      int j = edges_[kk].v;
      if (inblossom_[j] == b) std::swap(i, j);
      const int bj = inblossom_[j];
      if (bj != b && label_[bj] == 1 &&
          (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
        bestedgeto[bj] = kk;
      }
    };
    for (int sub : path) {
      if (!has_bestedges_[sub]) {
        std::vector<int> sl;
        leaves(sub, sl);
        for (int x : sl) {
          for (int p : neighbend_[x]) consider(p / 2);
        }
      } else {
        for (int kk : blossombestedges_[sub]) consider(kk);
      }
      blossombestedges_[sub].clear();
      has_bestedges_[sub] = 0;
      bestedge_[sub] = -1;
    }
    auto& best = blossombestedges_[b];
    best.clear();
    for (int kk : bestedgeto) {
      if (kk != -1) best.push_back(kk);
    }
    has_bestedges_[b] = 1;
    bestedge_[b] = -1;
    for (int kk : best) {
      if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) {
        bestedge_[b] = kk;
      }
    }
  }

  void expand_blossom(int b, bool endstage) {
    const std::vector<int> childs = blossomchilds_[b];
    for (int s : childs) {
      blossomparent_[s] = -1;
      if (s < nvertex_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        std::vector<int> lv;
        leaves(s, lv);
        for (int x : lv) inblossom_[x] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      const auto& endps = blossomendps_[b];
      const std::size_t len = childs.size();
      const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      int j = static_cast<int>(
          std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
      int jstep;
      int endptrick;
      if (j & 1) {
        j -= static_cast<int>(len);
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[endps[wrap(j - endptrick, len)] ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[endps[wrap(j - endptrick, len)] / 2] = 1;
        j += jstep;
        p = endps[wrap(j - endptrick, len)] ^ endptrick;
        allowedge_[p / 2] = 1;
        j += jstep;
      }
      int bv = childs[wrap(j, len)];
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (childs[wrap(j, len)] != entrychild) {
        bv = childs[wrap(j, len)];
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        std::vector<int> lv;
        leaves(bv, lv);
        for (int x : lv) {
          if (label_[x] != 0) {
            label_[x] = 0;
            label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
            assign_label(x, 2, labelend_[x]);
            break;
          }
        }
        j += jstep;
      }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    has_bestedges_[b] = 0;
    bestedge_[b] = -1;
    unusedblossoms_.push_back(b);
  }

  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= nvertex_) augment_blossom(t, v);
    auto& childs = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    const std::size_t len = childs.size();
    const int i = static_cast<int>(
        std::find(childs.begin(), childs.end(), t) - childs.begin());
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
      j -= static_cast<int>(len);
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = childs[wrap(j, len)];
      const int p = endps[wrap(j - endptrick, len)] ^ endptrick;
      if (t >= nvertex_) augment_blossom(t, endpoint_[p]);
      j += jstep;
      t = childs[wrap(j, len)];
      if (t >= nvertex_) augment_blossom(t, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[b] = blossombase_[childs[0]];
  }

  void augment_matching(int k) {
    const int ends[2][2] = {{edges_[k].u, 2 * k + 1}, {edges_[k].v, 2 * k}};
    for (const auto& sp : ends) {
      int s = sp[0];
      int p = sp[1];
      while (true) {
        const int bs = inblossom_[s];
        if (bs >= nvertex_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        const int t = endpoint_[labelend_[bs]];
        const int bt = inblossom_[t];
        s = endpoint_[labelend_[bt]];
        const int j = endpoint_[labelend_[bt] ^ 1];
        if (bt >= nvertex_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  void run() {
    const int n = nvertex_;
    for (int stage = 0; stage < n; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (int b = n; b < 2 * n; ++b) {
        blossombestedges_[b].clear();
        has_bestedges_[b] = 0;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), 0);
      queue_.clear();
      for (int v = 0; v < n; ++v) {
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
      }

      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          for (int p : neighbend_[v]) {
            const int k = p / 2;
            const int w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;
            Cost kslack = 0;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge_[k] = 1;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                const int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              const int b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                bestedge_[b] = k;
              }
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                bestedge_[w] = k;
              }
            }
          }
        }
        if (augmented) break;

        // No augmenting path in the tight subgraph: dual update.
        int deltatype = 1;
        Cost delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n);
        int deltaedge = -1;
        int deltablossom = -1;
        for (int v = 0; v < n; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            const Cost d = slack(bestedge_[v]);
            if (d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (int b = 0; b < 2 * n; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
            // Both ends are S-vertices, so slack is even in doubled units.
            const Cost d = slack(bestedge_[b]) / 2;
            if (d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (int b = n; b < 2 * n; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 &&
              label_[b] == 2 && dualvar_[b] < delta) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }

        for (int v = 0; v < n; ++v) {
          if (label_[inblossom_[v]] == 1) {
            dualvar_[v] -= delta;
          } else if (label_[inblossom_[v]] == 2) {
            dualvar_[v] += delta;
          }
        }
        for (int b = n; b < 2 * n; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1) {
              dualvar_[b] += delta;
            } else if (label_[b] == 2) {
              dualvar_[b] -= delta;
            }
          }
        }

        if (deltatype == 1) break;
        if (deltatype == 2) {
          allowedge_[deltaedge] = 1;
          int i = edges_[deltaedge].u;
          int j = edges_[deltaedge].v;
          if (label_[inblossom_[i]] == 0) std::swap(i, j);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = 1;
          queue_.push_back(edges_[deltaedge].u);
        } else {
          expand_blossom(deltablossom, false);
        }
      }

      if (!augmented) break;
      for (int b = n; b < 2 * n; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 &&
            label_[b] == 1 && dualvar_[b] == 0) {
          expand_blossom(b, true);
        }
      }
    }
  }

  std::span<const Edge> edges_;
  int nvertex_ = 0;
  int nedge_ = 0;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> matched_edge_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<std::vector<int>> blossomchilds_;
  std::vector<std::vector<int>> blossomendps_;
  std::vector<int> blossombase_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> blossombestedges_;
  std::vector<char> has_bestedges_;
  std::vector<int> unusedblossoms_;
  std::vector<Cost> dualvar_;
  std::vector<char> allowedge_;
  std::vector<int> queue_;
};

inline Matching max_weight_matching(const WeightedGraph& g) {
  g.validate();
  MatchingSolver solver;
  const auto& mate = solver.solve(g.n, g.edges);
  Matching m;
  for (int v = 0; v < g.n; ++v) {
    if (mate[v] > v) {
      const Edge& e = g.edges[solver.matched_edge()[v]];
      m.edges.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
      m.weight += e.weight;
    }
  }
  std::sort(m.edges.begin(), m.edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  return m;
}

inline constexpr int kBruteForceMatchingMaxVertices = 14;

/// Exhaustive maximum matching weight: for the lowest free vertex, try
/// leaving it exposed or pairing it with each free neighbour. Memoised over
/// the set of decided vertices, which still visits every matching's choices.
inline Cost brute_force_matching(const WeightedGraph& g) {
  g.validate();
  if (g.n > kBruteForceMatchingMaxVertices) {
    throw SizeError("brute_force_matching(): more than 14 vertices");
  }
  const int n = g.n;
  std::vector<Cost> w(static_cast<std::size_t>(n * n), -1);
  for (const Edge& e : g.edges) {
    w[static_cast<std::size_t>(e.u * n + e.v)] = e.weight;
    w[static_cast<std::size_t>(e.v * n + e.u)] = e.weight;
  }
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  // best[mask] = max matching weight on the vertices NOT in mask.
  std::vector<Cost> best(static_cast<std::size_t>(full) + 1, 0);
  for (std::uint32_t mask = full; mask-- > 0;) {
    int v = 0;
    while (mask & (std::uint32_t{1} << v)) ++v;
    const std::uint32_t with_v = mask | (std::uint32_t{1} << v);
    Cost b = best[with_v];
    for (int u = v + 1; u < n; ++u) {
      if (mask & (std::uint32_t{1} << u)) continue;
      const Cost wt = w[static_cast<std::size_t>(v * n + u)];
      if (wt < 0) continue;
      b = std::max(b, wt + best[with_v | (std::uint32_t{1} << u)]);
    }
    best[mask] = b;
  }
  return n == 0 ? 0 : best[0];
}

/// Debug dump: "p edge <n> <m>" header, then "e <u> <v> <weight>" per edge
/// (DIMACS-style, 0-based vertices, weights in the caller's fixed-point units
/// rendered with `decimals`).
inline void write_edge_list(std::ostream& os, const WeightedGraph& g,
                            int decimals = 0) {
  os << "p edge " << g.n << ' ' << g.edges.size() << '\n';
  for (const Edge& e : g.edges) {
    os << "e " << e.u << ' ' << e.v << ' ' << format_cost(e.weight, decimals)
       << '\n';
  }
}

}  // namespace gspp

#endif  // GSPP_MATCHING_HPP
