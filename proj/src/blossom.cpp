/*
  Maximum-weight matching on general graphs.

  Primal-dual blossom algorithm (Edmonds; Galil's O(n^3) organisation) with
  integer weights. Vertex duals start at max weight; slacks stay integral and
  the slack between two S-vertices stays even, so every dual step is exact.

  Edge endpoints are numbered p = 2k (endpoint u of edge k) and p = 2k + 1
  (endpoint v). Blossom ids are [n, 2n).
*/
#include <algorithm>
#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

#include "linksched/matching.hpp"

namespace linksched {
namespace {

class BlossomMatcher {
 public:
  BlossomMatcher(int n, std::span<const WeightedEdge> edges) : n_(n), edges_(edges.begin(), edges.end()) {
    const auto nedge = edges_.size();
    endpoint_.resize(2 * nedge);
    neighbend_.assign(static_cast<std::size_t>(n_), {});
    std::int64_t maxweight = 0;
    for (std::size_t k = 0; k < nedge; ++k) {
      endpoint_[2 * k] = edges_[k].u;
      endpoint_[2 * k + 1] = edges_[k].v;
      neighbend_[static_cast<std::size_t>(edges_[k].u)].push_back(static_cast<int>(2 * k + 1));
      neighbend_[static_cast<std::size_t>(edges_[k].v)].push_back(static_cast<int>(2 * k));
      maxweight = std::max(maxweight, edges_[k].w);
    }
    const auto nn = static_cast<std::size_t>(n_);
    mate_.assign(nn, -1);
    label_.assign(2 * nn, 0);
    labelend_.assign(2 * nn, -1);
    inblossom_.resize(nn);
    for (int v = 0; v < n_; ++v) inblossom_[static_cast<std::size_t>(v)] = v;
    blossomparent_.assign(2 * nn, -1);
    blossomchilds_.assign(2 * nn, {});
    blossombase_.assign(2 * nn, -1);
    for (int v = 0; v < n_; ++v) blossombase_[static_cast<std::size_t>(v)] = v;
    blossomendps_.assign(2 * nn, {});
    bestedge_.assign(2 * nn, -1);
    blossombestedges_.assign(2 * nn, {});
    has_bestedges_.assign(2 * nn, 0);
    for (int b = 2 * n_ - 1; b >= n_; --b) unusedblossoms_.push_back(b);
    dualvar_.assign(2 * nn, 0);
    for (std::size_t v = 0; v < nn; ++v) dualvar_[v] = maxweight;
    allowedge_.assign(nedge, 0);
  }

  std::vector<std::int32_t> solve() {
    const auto nn = static_cast<std::size_t>(n_);
    for (int stage = 0; stage < n_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (std::size_t b = nn; b < 2 * nn; ++b) {
        blossombestedges_[b].clear();
        has_bestedges_[b] = 0;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), 0);
      queue_.clear();

      for (int v = 0; v < n_; ++v) {
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
      }

      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          assert(label_[inblossom_[v]] == 1);
          for (int p : neighbend_[static_cast<std::size_t>(v)]) {
            const int k = p / 2;
            const int w = endpoint_[static_cast<std::size_t>(p)];
            if (inblossom_[v] == inblossom_[w]) continue;
            std::int64_t kslack = 0;
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
                assert(label_[inblossom_[w]] == 2);
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              const int b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
            }
          }
        }
        if (augmented) break;

        // No augmenting path under the current duals: compute the dual step.
        int deltatype = 1;
        std::int64_t delta = dualvar_[0];
        for (int v = 1; v < n_; ++v) delta = std::min(delta, dualvar_[v]);
        int deltaedge = -1;
        int deltablossom = -1;

        for (int v = 0; v < n_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            const std::int64_t d = slack(bestedge_[v]);
            if (d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (int b = 0; b < 2 * n_; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
            const std::int64_t ks = slack(bestedge_[b]);
            assert(ks % 2 == 0);
            const std::int64_t d = ks / 2;
            if (d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (int b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 && dualvar_[b] < delta) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }

        for (int v = 0; v < n_; ++v) {
          const int lb = label_[inblossom_[v]];
          if (lb == 1) {
            dualvar_[v] -= delta;
          } else if (lb == 2) {
            dualvar_[v] += delta;
          }
        }
        for (int b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1) {
              dualvar_[b] += delta;
            } else if (label_[b] == 2) {
              dualvar_[b] -= delta;
            }
          }
        }

        if (deltatype == 1) {
          break;
        } else if (deltatype == 2) {
          allowedge_[deltaedge] = 1;
          int i = edges_[static_cast<std::size_t>(deltaedge)].u;
          int j = edges_[static_cast<std::size_t>(deltaedge)].v;
          if (label_[inblossom_[i]] == 0) std::swap(i, j);
          assert(label_[inblossom_[i]] == 1);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = 1;
          const int i = edges_[static_cast<std::size_t>(deltaedge)].u;
          assert(label_[inblossom_[i]] == 1);
          queue_.push_back(i);
        } else {
          expand_blossom(deltablossom, false);
        }
      }

      if (!augmented) break;

      for (int b = n_; b < 2 * n_; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0) {
          expand_blossom(b, true);
        }
      }
    }

    std::vector<std::int32_t> mate(static_cast<std::size_t>(n_), -1);
    for (int v = 0; v < n_; ++v) {
      if (mate_[v] >= 0) mate[static_cast<std::size_t>(v)] = endpoint_[static_cast<std::size_t>(mate_[v])];
    }
    return mate;
  }

 private:
  std::int64_t slack(int k) const {
    const WeightedEdge& e = edges_[static_cast<std::size_t>(k)];
    return dualvar_[e.u] + dualvar_[e.v] - 2 * e.w;
  }

  void blossom_leaves(int b, std::vector<int>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[static_cast<std::size_t>(b)]) blossom_leaves(t, out);
  }

  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    blossom_leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    assert(label_[w] == 0 && label_[b] == 0);
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      blossom_leaves(b, queue_);
    } else if (t == 2) {
      const int base = blossombase_[b];
      assert(mate_[base] >= 0);
      assign_label(endpoint_[static_cast<std::size_t>(mate_[base])], 1, mate_[base] ^ 1);
    }
  }

  // Walks back from v and w to find the base of a new blossom, or -1 if the
  // two trees are distinct (augmenting path).
  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      assert(label_[b] == 1);
      path.push_back(b);
      label_[b] = 5;
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[static_cast<std::size_t>(labelend_[b])];
        b = inblossom_[v];
        assert(label_[b] == 2);
        v = endpoint_[static_cast<std::size_t>(labelend_[b])];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = edges_[static_cast<std::size_t>(k)].u;
    int w = edges_[static_cast<std::size_t>(k)].v;
    const int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    const int b = unusedblossoms_.back();
    unusedblossoms_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    auto& path = blossomchilds_[static_cast<std::size_t>(b)];
    auto& endps = blossomendps_[static_cast<std::size_t>(b)];
    path.clear();
    endps.clear();
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      v = endpoint_[static_cast<std::size_t>(labelend_[bv])];
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
      w = endpoint_[static_cast<std::size_t>(labelend_[bw])];
      bw = inblossom_[w];
    }
    assert(label_[bb] == 1);
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;
    for (int leaf : leaves(b)) {
      if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
      inblossom_[leaf] = b;
    }

    // Best edge from the new blossom to each neighbouring S-blossom.
    std::vector<int> bestedgeto(2 * static_cast<std::size_t>(n_), -1);
    auto consider = [&](int kk) {
      int i = edges_[static_cast<std::size_t>(kk)].u;
      int j = edges_[static_cast<std::size_t>(kk)].v;
      if (inblossom_[j] == b) std::swap(i, j);
      const int bj = inblossom_[j];
      if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
        bestedgeto[bj] = kk;
      }
    };
    for (int sub : path) {
      if (!has_bestedges_[sub]) {
        for (int leaf : leaves(sub)) {
          for (int p : neighbend_[static_cast<std::size_t>(leaf)]) consider(p / 2);
        }
      } else {
        for (int kk : blossombestedges_[static_cast<std::size_t>(sub)]) consider(kk);
      }
      blossombestedges_[static_cast<std::size_t>(sub)].clear();
      has_bestedges_[sub] = 0;
      bestedge_[sub] = -1;
    }
    auto& best = blossombestedges_[static_cast<std::size_t>(b)];
    best.clear();
    for (int kk : bestedgeto) {
      if (kk != -1) best.push_back(kk);
    }
    has_bestedges_[b] = 1;
    bestedge_[b] = -1;
    for (int kk : best) {
      if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
    }
  }

  static int index_of(const std::vector<int>& v, int x) {
    return static_cast<int>(std::find(v.begin(), v.end(), x) - v.begin());
  }

  // Python-style indexing into a cyclic child list.
  static int wrap(int j, int size) { return j < 0 ? j + size : j; }

  void expand_blossom(int b, bool endstage) {
    const auto bs = static_cast<std::size_t>(b);
    const std::vector<int> childs = blossomchilds_[bs];
    for (int s : childs) {
      blossomparent_[s] = -1;
      if (s < n_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (int leaf : leaves(s)) inblossom_[leaf] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      const auto& endps = blossomendps_[bs];
      const int size = static_cast<int>(childs.size());
      const int entrychild = inblossom_[endpoint_[static_cast<std::size_t>(labelend_[b] ^ 1)]];
      int j = index_of(childs, entrychild);
      int jstep;
      int endptrick;
      if (j & 1) {
        j -= size;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[static_cast<std::size_t>(p ^ 1)]] = 0;
        const int q = endps[static_cast<std::size_t>(wrap(j - endptrick, size))];
        label_[endpoint_[static_cast<std::size_t>(q ^ endptrick ^ 1)]] = 0;
        assign_label(endpoint_[static_cast<std::size_t>(p ^ 1)], 2, p);
        allowedge_[q / 2] = 1;
        j += jstep;
        p = endps[static_cast<std::size_t>(wrap(j - endptrick, size))] ^ endptrick;
        allowedge_[p / 2] = 1;
        j += jstep;
      }
      int bv = childs[static_cast<std::size_t>(wrap(j, size))];
      label_[endpoint_[static_cast<std::size_t>(p ^ 1)]] = label_[bv] = 2;
      labelend_[endpoint_[static_cast<std::size_t>(p ^ 1)]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (childs[static_cast<std::size_t>(wrap(j, size))] != entrychild) {
        bv = childs[static_cast<std::size_t>(wrap(j, size))];
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        int found = -1;
        for (int leaf : leaves(bv)) {
          if (label_[leaf] != 0) {
            found = leaf;
            break;
          }
        }
        if (found != -1) {
          assert(label_[found] == 2);
          assert(inblossom_[found] == bv);
          label_[found] = 0;
          label_[endpoint_[static_cast<std::size_t>(mate_[blossombase_[bv]])]] = 0;
          assign_label(found, 2, labelend_[found]);
        }
        j += jstep;
      }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[bs].clear();
    blossomendps_[bs].clear();
    blossombase_[b] = -1;
    blossombestedges_[bs].clear();
    has_bestedges_[b] = 0;
    bestedge_[b] = -1;
    unusedblossoms_.push_back(b);
  }

  // Swaps matched/unmatched edges along the even path from v to the base of b.
  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= n_) augment_blossom(t, v);
    auto& childs = blossomchilds_[static_cast<std::size_t>(b)];
    auto& endps = blossomendps_[static_cast<std::size_t>(b)];
    const int size = static_cast<int>(childs.size());
    const int i = index_of(childs, t);
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
      j -= size;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = childs[static_cast<std::size_t>(wrap(j, size))];
      const int p = endps[static_cast<std::size_t>(wrap(j - endptrick, size))] ^ endptrick;
      if (t >= n_) augment_blossom(t, endpoint_[static_cast<std::size_t>(p)]);
      j += jstep;
      t = childs[static_cast<std::size_t>(wrap(j, size))];
      if (t >= n_) augment_blossom(t, endpoint_[static_cast<std::size_t>(p ^ 1)]);
      mate_[endpoint_[static_cast<std::size_t>(p)]] = p ^ 1;
      mate_[endpoint_[static_cast<std::size_t>(p ^ 1)]] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[b] = blossombase_[childs[0]];
    assert(blossombase_[b] == v);
  }

  void augment_matching(int k) {
    const WeightedEdge& e = edges_[static_cast<std::size_t>(k)];
    const int starts[2][2] = {{e.u, 2 * k + 1}, {e.v, 2 * k}};
    for (const auto& start : starts) {
      int s = start[0];
      int p = start[1];
      while (true) {
        const int bs = inblossom_[s];
        assert(label_[bs] == 1);
        if (bs >= n_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        const int t = endpoint_[static_cast<std::size_t>(labelend_[bs])];
        const int bt = inblossom_[t];
        assert(label_[bt] == 2);
        s = endpoint_[static_cast<std::size_t>(labelend_[bt])];
        const int j = endpoint_[static_cast<std::size_t>(labelend_[bt] ^ 1)];
        assert(blossombase_[bt] == t);
        if (bt >= n_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  int n_;
  std::vector<WeightedEdge> edges_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<std::vector<int>> blossomchilds_;
  std::vector<int> blossombase_;
  std::vector<std::vector<int>> blossomendps_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> blossombestedges_;
  std::vector<std::uint8_t> has_bestedges_;
  std::vector<int> unusedblossoms_;
  std::vector<std::int64_t> dualvar_;
  std::vector<std::uint8_t> allowedge_;
  std::vector<int> queue_;
};

}  // namespace

std::vector<std::int32_t> blossom_max_weight_matching(int vertex_count, std::span<const WeightedEdge> edges) {
  if (vertex_count <= 0 || edges.empty()) return std::vector<std::int32_t>(static_cast<std::size_t>(std::max(vertex_count, 0)), -1);
  return BlossomMatcher(vertex_count, edges).solve();
}

}  // namespace linksched
