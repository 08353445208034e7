#include "rrp/matching.hpp"

#include <algorithm>
#include <set>

#include "rrp/errors.hpp"

namespace rrp {
namespace {

// Primal-dual blossom algorithm. Vertices are 0..n-1, blossoms n..2n-1.
// Edge k has endpoints 2k and 2k+1; mate_ and labelend_ hold endpoint ids.
class Blossom {
 public:
  Blossom(std::uint32_t n, std::vector<WeightedEdge> edges) : n_(n), edges_(std::move(edges)) {}

  std::vector<std::int64_t> solve() {
    const std::int64_t n = n_;
    const std::size_t m = edges_.size();
    std::vector<std::int64_t> result(n_, -1);
    if (m == 0 || n == 0) return result;

    Rational maxweight = 0;
    for (const auto& e : edges_) maxweight = std::max(maxweight, e.weight);

    endpoint_.resize(2 * m);
    for (std::size_t p = 0; p < 2 * m; ++p) endpoint_[p] = (p % 2 == 0) ? edges_[p / 2].u : edges_[p / 2].v;
    neighbend_.assign(n, {});
    for (std::size_t k = 0; k < m; ++k) {
      neighbend_[edges_[k].u].push_back(2 * k + 1);
      neighbend_[edges_[k].v].push_back(2 * k);
    }
    mate_.assign(n, -1);
    label_.assign(2 * n, 0);
    labelend_.assign(2 * n, -1);
    inblossom_.resize(n);
    for (std::int64_t v = 0; v < n; ++v) inblossom_[v] = v;
    blossomparent_.assign(2 * n, -1);
    blossomchilds_.assign(2 * n, {});
    blossombase_.assign(2 * n, -1);
    for (std::int64_t v = 0; v < n; ++v) blossombase_[v] = v;
    blossomendps_.assign(2 * n, {});
    bestedge_.assign(2 * n, -1);
    blossombestedges_.assign(2 * n, {});
    has_bestedges_.assign(2 * n, false);
    unused_.clear();
    for (std::int64_t b = n; b < 2 * n; ++b) unused_.push_back(b);
    dualvar_.assign(2 * n, Rational(0));
    for (std::int64_t v = 0; v < n; ++v) dualvar_[v] = maxweight;
    allowedge_.assign(m, false);

    for (std::int64_t stage = 0; stage < n; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (std::int64_t b = n; b < 2 * n; ++b) {
        blossombestedges_[b].clear();
        has_bestedges_[b] = false;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), false);
      queue_.clear();
      for (std::int64_t v = 0; v < n; ++v) {
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
      }
      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          std::int64_t v = queue_.back();
          queue_.pop_back();
          for (std::int64_t p : neighbend_[v]) {
            std::int64_t k = p / 2;
            std::int64_t w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;
            Rational kslack;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge_[k] = true;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                std::int64_t base = scan_blossom(v, w);
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
              std::int64_t b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
            }
          }
        }
        if (augmented) break;

        int deltatype = 1;
        Rational delta = dualvar_[0];
        for (std::int64_t v = 1; v < n; ++v) delta = std::min(delta, dualvar_[v]);
        std::int64_t deltaedge = -1, deltablossom = -1;
        for (std::int64_t v = 0; v < n; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            Rational d = slack(bestedge_[v]);
            if (d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (std::int64_t b = 0; b < 2 * n; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
            Rational d = slack(bestedge_[b]) / 2;
            if (d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (std::int64_t b = n; b < 2 * n; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 && dualvar_[b] < delta) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }
        for (std::int64_t v = 0; v < n; ++v) {
          if (label_[inblossom_[v]] == 1) {
            dualvar_[v] -= delta;
          } else if (label_[inblossom_[v]] == 2) {
            dualvar_[v] += delta;
          }
        }
        for (std::int64_t b = n; b < 2 * n; ++b) {
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
          allowedge_[deltaedge] = true;
          std::int64_t i = edges_[deltaedge].u, j = edges_[deltaedge].v;
          if (label_[inblossom_[i]] == 0) std::swap(i, j);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = true;
          queue_.push_back(edges_[deltaedge].u);
        } else {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) break;
      for (std::int64_t b = n; b < 2 * n; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0) {
          expand_blossom(b, true);
        }
      }
    }
    for (std::int64_t v = 0; v < n; ++v) {
      if (mate_[v] >= 0) result[v] = endpoint_[mate_[v]];
    }
    return result;
  }

 private:
  Rational slack(std::int64_t k) const {
    const auto& e = edges_[k];
    return dualvar_[e.u] + dualvar_[e.v] - 2 * e.weight;
  }

  void leaves(std::int64_t b, std::vector<std::int64_t>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (std::int64_t t : blossomchilds_[b]) leaves(t, out);
  }

  std::vector<std::int64_t> leaves(std::int64_t b) const {
    std::vector<std::int64_t> out;
    leaves(b, out);
    return out;
  }

  void assign_label(std::int64_t w, int t, std::int64_t p) {
    std::int64_t b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      leaves(b, queue_);
    } else {
      std::int64_t base = blossombase_[b];
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  std::int64_t scan_blossom(std::int64_t v, std::int64_t w) {
    std::vector<std::int64_t> path;
    std::int64_t base = -1;
    while (v != -1 || w != -1) {
      std::int64_t b = inblossom_[v];
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
    for (std::int64_t b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(std::int64_t base, std::int64_t k) {
    std::int64_t v = edges_[k].u, w = edges_[k].v;
    std::int64_t bb = inblossom_[base];
    std::int64_t bv = inblossom_[v];
    std::int64_t bw = inblossom_[w];
    std::int64_t b = unused_.back();
    unused_.pop_back();
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
    for (std::int64_t leaf : leaves(b)) {
      if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
      inblossom_[leaf] = b;
    }
    std::vector<std::int64_t> bestedgeto(2 * n_, -1);
    for (std::int64_t child : path) {
      std::vector<std::vector<std::int64_t>> nblists;
      if (!has_bestedges_[child]) {
        for (std::int64_t leaf : leaves(child)) {
          std::vector<std::int64_t> list;
          for (std::int64_t p : neighbend_[leaf]) list.push_back(p / 2);
          nblists.push_back(std::move(list));
        }
      } else {
        nblists.push_back(blossombestedges_[child]);
      }
      for (const auto& nblist : nblists) {
        for (std::int64_t kk : nblist) {
          std::int64_t i = edges_[kk].u, j = edges_[kk].v;
          if (inblossom_[j] == b) std::swap(i, j);
          std::int64_t bj = inblossom_[j];
          if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
            bestedgeto[bj] = kk;
          }
        }
      }
      blossombestedges_[child].clear();
      has_bestedges_[child] = false;
      bestedge_[child] = -1;
    }
    blossombestedges_[b].clear();
    for (std::int64_t kk : bestedgeto) {
      if (kk != -1) blossombestedges_[b].push_back(kk);
    }
    has_bestedges_[b] = true;
    bestedge_[b] = -1;
    for (std::int64_t kk : blossombestedges_[b]) {
      if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
    }
  }

  static std::int64_t index_of(const std::vector<std::int64_t>& v, std::int64_t x) {
    return std::find(v.begin(), v.end(), x) - v.begin();
  }

  // Python-style indexing into a cyclic child list.
  static std::int64_t at(const std::vector<std::int64_t>& v, std::int64_t j) {
    std::int64_t s = static_cast<std::int64_t>(v.size());
    return v[((j % s) + s) % s];
  }

  void expand_blossom(std::int64_t b, bool endstage) {
    std::vector<std::int64_t> childs = blossomchilds_[b];
    for (std::int64_t s : childs) {
      blossomparent_[s] = -1;
      if (s < n_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (std::int64_t leaf : leaves(s)) inblossom_[leaf] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      const auto& endps = blossomendps_[b];
      std::int64_t entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      std::int64_t j = index_of(childs, entrychild);
      std::int64_t jstep, endptrick;
      if (j & 1) {
        j -= static_cast<std::int64_t>(childs.size());
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      std::int64_t p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[at(endps, j - endptrick) ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[at(endps, j - endptrick) / 2] = true;
        j += jstep;
        p = at(endps, j - endptrick) ^ endptrick;
        allowedge_[p / 2] = true;
        j += jstep;
      }
      std::int64_t bv = at(childs, j);
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (at(childs, j) != entrychild) {
        bv = at(childs, j);
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        std::int64_t found = -1;
        for (std::int64_t leaf : leaves(bv)) {
          if (label_[leaf] != 0) {
            found = leaf;
            break;
          }
        }
        if (found >= 0) {
          label_[found] = 0;
          label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
          assign_label(found, 2, labelend_[found]);
        }
        j += jstep;
      }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    has_bestedges_[b] = false;
    bestedge_[b] = -1;
    unused_.push_back(b);
  }

  void augment_blossom(std::int64_t b, std::int64_t v) {
    std::int64_t t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= n_) augment_blossom(t, v);
    auto& childs = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    std::int64_t i = index_of(childs, t);
    std::int64_t j = i;
    std::int64_t jstep, endptrick;
    if (i & 1) {
      j -= static_cast<std::int64_t>(childs.size());
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = at(childs, j);
      std::int64_t p = at(endps, j - endptrick) ^ endptrick;
      if (t >= n_) augment_blossom(t, endpoint_[p]);
      j += jstep;
      t = at(childs, j);
      if (t >= n_) augment_blossom(t, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[b] = blossombase_[childs[0]];
  }

  void augment_matching(std::int64_t k) {
    std::int64_t v = edges_[k].u, w = edges_[k].v;
    for (auto [s, p] : {std::pair<std::int64_t, std::int64_t>{v, 2 * k + 1}, {w, 2 * k}}) {
      while (true) {
        std::int64_t bs = inblossom_[s];
        if (bs >= n_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        std::int64_t t = endpoint_[labelend_[bs]];
        std::int64_t bt = inblossom_[t];
        s = endpoint_[labelend_[bt]];
        std::int64_t j = endpoint_[labelend_[bt] ^ 1];
        if (bt >= n_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  std::int64_t n_;
  std::vector<WeightedEdge> edges_;
  std::vector<std::int64_t> endpoint_;
  std::vector<std::vector<std::int64_t>> neighbend_;
  std::vector<std::int64_t> mate_;
  std::vector<int> label_;
  std::vector<std::int64_t> labelend_;
  std::vector<std::int64_t> inblossom_;
  std::vector<std::int64_t> blossomparent_;
  std::vector<std::vector<std::int64_t>> blossomchilds_;
  std::vector<std::int64_t> blossombase_;
  std::vector<std::vector<std::int64_t>> blossomendps_;
  std::vector<std::int64_t> bestedge_;
  std::vector<std::vector<std::int64_t>> blossombestedges_;
  std::vector<bool> has_bestedges_;
  std::vector<std::int64_t> unused_;
  std::vector<Rational> dualvar_;
  std::vector<bool> allowedge_;
  std::vector<std::int64_t> queue_;
};

}  // namespace

std::vector<std::int64_t> max_weight_matching(std::uint32_t vertex_count, const std::vector<WeightedEdge>& edges) {
  std::vector<WeightedEdge> usable;
  for (const auto& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) throw PreconditionError("matching edge endpoint out of range");
    if (e.u != e.v && e.weight > 0) usable.push_back(e);
  }
  return Blossom(vertex_count, std::move(usable)).solve();
}

std::vector<std::size_t> max_weight_b_matching(const std::vector<std::uint32_t>& capacity,
                                               const std::vector<WeightedEdge>& edges) {
  // Vertex v becomes capacity[v] copies; edge e = (u, v) becomes two gadget
  // vertices e_u, e_v joined to each other and to every copy of u (resp. v),
  // all at weight w(e). Choosing e gains w(e) over leaving e_u-e_v matched.
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  std::vector<std::uint32_t> first_copy(capacity.size() + 1, 0);
  for (std::size_t v = 0; v < capacity.size(); ++v) first_copy[v + 1] = first_copy[v] + capacity[v];
  std::uint32_t next = first_copy.back();
  std::vector<WeightedEdge> gadget;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ends;  // (e_u, e_v) per input edge
  for (const auto& e : edges) {
    if (e.u >= capacity.size() || e.v >= capacity.size()) throw PreconditionError("b-matching edge endpoint out of range");
    if (e.u == e.v) throw PreconditionError("b-matching input has a self-loop");
    if (!seen.insert(std::minmax(e.u, e.v)).second) throw PreconditionError("b-matching input has parallel edges");
    std::uint32_t eu = next++, ev = next++;
    ends.emplace_back(eu, ev);
    if (e.weight <= 0 || capacity[e.u] == 0 || capacity[e.v] == 0) continue;
    gadget.push_back({eu, ev, e.weight});
    for (std::uint32_t c = first_copy[e.u]; c < first_copy[e.u + 1]; ++c) gadget.push_back({c, eu, e.weight});
    for (std::uint32_t c = first_copy[e.v]; c < first_copy[e.v + 1]; ++c) gadget.push_back({c, ev, e.weight});
  }
  auto mate = max_weight_matching(next, gadget);
  std::vector<std::size_t> chosen;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    auto [eu, ev] = ends[k];
    bool u_side = mate[eu] >= 0 && static_cast<std::uint32_t>(mate[eu]) < first_copy.back();
    bool v_side = mate[ev] >= 0 && static_cast<std::uint32_t>(mate[ev]) < first_copy.back();
    if (u_side && v_side) chosen.push_back(k);
  }
  return chosen;
}

}  // namespace rrp
