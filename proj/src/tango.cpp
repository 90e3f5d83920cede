#include "gst/tango.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <set>

namespace gst {

namespace {

// Expensive internal cross-checks only run below this size.
constexpr int kDeepCheckMaxN = 256;

}  // namespace

// ---------------------------------------------------------------------------
// construction

TangoTree::TangoTree(const Topology& g, bool debug_audit)
    : g_(&g), debug_audit_(debug_audit) {
  int n = g.n();
  ref_ = reference_tree(g);
  ref_root_ = ref_.root;
  ref_par_ = ref_.parent;
  ref_depth_.assign(n, 0);
  ref_anc_.assign(n, {});
  assert(n > kDeepCheckMaxN || is_steiner_closed_tree(g, ref_));

  std::vector<VertexId> order{ref_root_};
  order.reserve(n);
  for (size_t i = 0; i < order.size(); ++i)
    for (VertexId c : ref_.children[order[i]]) order.push_back(c);
  for (VertexId v : order) {
    VertexId p = ref_par_[v];
    ref_depth_[v] = p == kNoVertex ? 0 : ref_depth_[p] + 1;
    if (p != kNoVertex) ref_anc_[v] = ref_anc_[p];
    ref_anc_[v].push_back(v);
  }

  // Region anchors: the <= 2 root-path vertices with a G-edge into
  // region(v), each stored with its witness endpoint inside the region.
  anchor1_.assign(n, kNoVertex);
  anchor2_.assign(n, kNoVertex);
  witness1_.assign(n, kNoVertex);
  witness2_.assign(n, kNoVertex);
  auto in_region = [&](VertexId u, VertexId w) {
    return ref_depth_[u] >= ref_depth_[w] && ref_anc_[u][ref_depth_[w]] == w;
  };
  for (VertexId v : order) {
    VertexId y = ref_par_[v];
    if (y == kNoVertex) continue;
    VertexId a[2] = {kNoVertex, kNoVertex}, wit[2] = {kNoVertex, kNoVertex};
    int cnt = 0;
    if (anchor1_[y] != kNoVertex && in_region(witness1_[y], v)) {
      a[cnt] = anchor1_[y];
      wit[cnt++] = witness1_[y];
    }
    if (anchor2_[y] != kNoVertex && in_region(witness2_[y], v)) {
      assert(cnt == 0);  // at most one anchor of region(y) survives
      a[cnt] = anchor2_[y];
      wit[cnt++] = witness2_[y];
    }
    a[cnt] = y;
    wit[cnt++] = direction(g, y, v);
    anchor1_[v] = a[0];
    witness1_[v] = wit[0];
    if (cnt > 1) {
      anchor2_[v] = a[1];
      witness2_[v] = wit[1];
    }
  }

  // Canonical initial preferred children and the induced path partition.
  pref_.assign(n, kNoVertex);
  for (VertexId v = 0; v < n; ++v)
    if (!ref_.children[v].empty()) pref_[v] = ref_.children[v][0];
  tail_of_.assign(n, kNoVertex);
  is_head_.assign(n, 0);
  detach_rec_.assign(n, {});
  std::vector<VertexId> heads;
  for (VertexId v : order)
    if (v == ref_root_ || pref_[ref_par_[v]] != v) {
      is_head_[v] = 1;
      heads.push_back(v);  // BFS order of P means ascending head depth
      VertexId t = v;
      while (pref_[t] != kNoVertex) t = pref_[t];
      tail_of_[v] = t;
    }

  // Minors of the initial paths, plus detach records for their first merge.
  minor_adj_.assign(n, {});
  for (VertexId h : heads) {
    std::vector<VertexId> chain = path_nodes(h);
    if (chain.size() >= 2) {
      MinorTree m = minor_tree(g, chain);
      for (auto [a, b] : m.edges) {
        minor_adj_[a].push_back(b);
        minor_adj_[b].push_back(a);
      }
    }
    if (h != ref_root_) {
      DetachRec rec;
      for (int which = 0; which < 2; ++which) {
        VertexId alpha = which ? anchor2_[h] : anchor1_[h];
        if (alpha == kNoVertex) continue;
        VertexId best = kNoVertex;
        int best_d = 0;
        for (VertexId s : chain) {
          int dd = g.dist(alpha, s);
          if (best == kNoVertex || dd < best_d) {
            best = s;
            best_d = dd;
          }
        }
        (which ? rec.a2 : rec.a1) = alpha;
        (which ? rec.b2 : rec.b1) = best;
      }
      detach_rec_[h] = rec;
    }
  }

  // Initial composite: every minor edge dashed, each path's minor rooted at
  // its head, each head hanging at its currently deeper anchor.
  std::vector<VertexId> cpar(n, kNoVertex);
  std::vector<int> cdepth(n, 0);
  for (VertexId h : heads) {
    std::vector<VertexId> bfs{h};
    std::set<VertexId> in_bfs{h};
    for (size_t i = 0; i < bfs.size(); ++i)
      for (VertexId w : minor_adj_[bfs[i]])
        if (in_bfs.insert(w).second) {
          cpar[w] = bfs[i];
          bfs.push_back(w);
        }
    if (h != ref_root_) {
      VertexId a1 = anchor1_[h], a2 = anchor2_[h];
      cpar[h] = (a2 != kNoVertex && cdepth[a2] > cdepth[a1]) ? a2 : a1;
    }
    for (VertexId v : bfs)
      if (cpar[v] != kNoVertex) cdepth[v] = cdepth[cpar[v]] + 1;
  }

  bst_par_.assign(n, kNoVertex);
  bst_l_.assign(n, kNoVertex);
  bst_r_.assign(n, kNoVertex);
  flip_.assign(n, 0);
  nav_mark_.assign(n, 0);
  nav_child_.assign(n, kNoVertex);

  machine_.emplace(g, SearchTree::from_parents(ref_root_, cpar));
  initial_tree_ = machine_->tree();

  // Child-toward-neighbor map for O(1) descent decisions.
  toward_.assign(n, {});
  for (VertexId v = 0; v < n; ++v) toward_[v].assign(g.degree(v), kNoVertex);
  for (VertexId z = 0; z < n; ++z) {
    VertexId c = z;
    for (VertexId u = machine_->parent_of(z); u != kNoVertex;
         c = u, u = machine_->parent_of(u)) {
      int idx = g.neighbor_index(u, z);
      if (idx >= 0) toward_[u][idx] = c;
    }
  }
}

// ---------------------------------------------------------------------------
// static reference helpers

VertexId TangoTree::deepest_common(VertexId x, VertexId head,
                                   VertexId tail) const {
  int lo = rd(head), hi = std::min(rd(x), rd(tail));
  // Chains of x and tail agree at lo and diverge before hi.
  assert(ref_anc_[x][lo] == head && ref_anc_[tail][lo] == head);
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (ref_anc_[x][mid] == ref_anc_[tail][mid])
      lo = mid;
    else
      hi = mid - 1;
  }
  return ref_anc_[x][lo];
}

// ---------------------------------------------------------------------------
// embedded splay layer

void TangoTree::push_down(VertexId v) {
  if (!flip_[v]) return;
  std::swap(bst_l_[v], bst_r_[v]);
  if (bst_l_[v] != kNoVertex) flip_[bst_l_[v]] ^= 1;
  if (bst_r_[v] != kNoVertex) flip_[bst_r_[v]] ^= 1;
  flip_[v] = 0;
}

VertexId TangoTree::bst_root_of(VertexId v) const {
  while (bst_par_[v] != kNoVertex) v = bst_par_[v];
  return v;
}

VertexId TangoTree::leftmost(VertexId r) {
  push_down(r);
  while (bst_l_[r] != kNoVertex) {
    r = bst_l_[r];
    push_down(r);
  }
  return r;
}

void TangoTree::finger_to(VertexId v) {
  if (M().finger() == v) return;
  ++nav_epoch_;
  VertexId prev = kNoVertex;
  for (VertexId x = v; x != kNoVertex; x = M().parent_of(x)) {
    nav_mark_[x] = nav_epoch_;
    nav_child_[x] = prev;
    prev = x;
  }
  while (nav_mark_[M().finger()] != nav_epoch_) M().move_to_parent();
  while (M().finger() != v) M().move_to_child(nav_child_[M().finger()]);
}

VertexId TangoTree::transfer_hint(VertexId v, VertexId p) const {
  VertexId z = direction(*g_, p, v);
  if (z == v) return kNoVertex;
  VertexId step = direction(*g_, v, z);
  VertexId u = toward_[v][g_->neighbor_index(v, step)];
  assert(u != kNoVertex);
  return u;
}

void TangoTree::toward_update_after_rotate(VertexId v, VertexId p,
                                           VertexId moved) {
  auto& tp = toward_[p];
  const auto& np = g_->neighbors(p);
  for (size_t i = 0; i < np.size(); ++i)
    if (tp[i] == v) tp[i] = (np[i] == v) ? kNoVertex : moved;
  auto& tv = toward_[v];
  const auto& nv = g_->neighbors(v);
  for (size_t i = 0; i < nv.size(); ++i) {
    if (nv[i] == p)
      tv[i] = p;
    else if (moved != kNoVertex && tv[i] == moved)
      tv[i] = p;
  }
  // The grandparent's child toward p-side vertices is now v.
  VertexId gp = M().parent_of(v);
  if (gp != kNoVertex) {
    auto& tg = toward_[gp];
    for (auto& e : tg)
      if (e == p) e = v;
  }
}

VertexId TangoTree::rotate_up(VertexId v) {
  VertexId p = bst_par_[v];
  assert(p != kNoVertex);
  assert(!flip_[p] && !flip_[v]);
  assert(M().finger() == v);
  assert(M().parent_of(v) == p);
  VertexId u = transfer_hint(v, p);
  // The transferred child is the inner BST child whenever one exists;
  // otherwise it is the between-subtree hanging below v (or nothing).
  assert(bst_l_[p] == v || bst_r_[p] == v);
  assert((bst_r_[p] == v ? bst_l_[v] : bst_r_[v]) == kNoVertex ||
         (bst_r_[p] == v ? bst_l_[v] : bst_r_[v]) == u);
  M().rotate_here_hinted(u);
  toward_update_after_rotate(v, p, u);
#ifndef NDEBUG
  if (g_->n() <= 8) {
    // Recompute the updated rows from the composite and compare.
    for (VertexId w : {v, p, M().parent_of(v) == kNoVertex ? v
                                                           : M().parent_of(v)}) {
      const auto& nb = g_->neighbors(w);
      for (size_t i = 0; i < nb.size(); ++i) {
        VertexId z = nb[i];
        VertexId want = kNoVertex;
        VertexId c = z;
        for (VertexId a = M().parent_of(z); a != kNoVertex;
             c = a, a = M().parent_of(a))
          if (a == w) {
            want = c;
            break;
          }
        if (toward_[w][i] != want) {
          fprintf(stderr,
                  "toward bug after rotate v=%d p=%d u=%d: w=%d z=%d have=%d "
                  "want=%d\n",
                  v, p, u, w, z, toward_[w][i], want);
          assert(false && "toward update wrong");
        }
      }
    }
  }
#endif
  VertexId gp = bst_par_[p];
  if (bst_l_[p] == v) {
    bst_l_[p] = bst_r_[v];
    if (bst_l_[p] != kNoVertex) bst_par_[bst_l_[p]] = p;
    bst_r_[v] = p;
  } else {
    bst_r_[p] = bst_l_[v];
    if (bst_r_[p] != kNoVertex) bst_par_[bst_r_[p]] = p;
    bst_l_[v] = p;
  }
  bst_par_[p] = v;
  bst_par_[v] = gp;
  if (gp != kNoVertex) {
    if (bst_l_[gp] == p)
      bst_l_[gp] = v;
    else if (bst_r_[gp] == p)
      bst_r_[gp] = v;
  }
  return u;
}

void TangoTree::splay(VertexId v) {
  std::vector<VertexId> chain;
  for (VertexId x = v; x != kNoVertex; x = bst_par_[x]) chain.push_back(x);
  for (size_t i = chain.size(); i-- > 0;) push_down(chain[i]);
  if (bst_par_[v] == kNoVertex) return;
  finger_to(v);
  while (bst_par_[v] != kNoVertex) {
    VertexId p = bst_par_[v], gp = bst_par_[p];
    if (gp == kNoVertex) {
      rotate_up(v);
    } else if ((bst_l_[gp] == p) == (bst_l_[p] == v)) {
      M().move_to_parent();
      rotate_up(p);
      M().move_to_child(v);
      rotate_up(v);
    } else {
      rotate_up(v);
      rotate_up(v);
    }
  }
}

void TangoTree::access(VertexId v, VertexId head, VertexId tail,
                       VertexId stop_at) {
  splay(v);
  push_down(v);
  if (bst_r_[v] != kNoVertex) {
    bst_par_[bst_r_[v]] = kNoVertex;
    bst_r_[v] = kNoVertex;
  }
  while (true) {
    VertexId q = M().parent_of(v);
    if (q == kNoVertex || q == stop_at || !member(q, head, tail)) break;
    splay(q);
    push_down(q);
    if (bst_r_[q] != kNoVertex) {
      bst_par_[bst_r_[q]] = kNoVertex;
      bst_r_[q] = kNoVertex;
    }
    assert(M().parent_of(v) == q);
    assert(!flip_[v]);
#ifndef NDEBUG
    if (g_->n() <= kDeepCheckMaxN) {
      // Splice legality: the climbing tree's first in-order vertex must be a
      // minor neighbor of q so the joined in-order stays a minor path.
      VertexId first = leftmost(v);
      splay(v);
      if (std::count(minor_adj_[q].begin(), minor_adj_[q].end(), first) != 1) {
        fprintf(stderr, "illegal splice: q=%d first=%d v=%d head=%d tail=%d\n",
                q, first, v, head, tail);
        assert(false && "splice target not minor-adjacent");
      }
      assert(M().parent_of(v) == q);
    }
#endif
    bst_r_[q] = v;
    bst_par_[v] = q;
    splay(v);
  }
}

void TangoTree::evert(VertexId v, VertexId head, VertexId tail) {
  access(v, head, tail);
  flip_[v] ^= 1;
  push_down(v);
}

void TangoTree::expose_path(VertexId a, VertexId b, VertexId head,
                            VertexId tail) {
  evert(a, head, tail);
  access(b, head, tail);
#ifndef NDEBUG
  if (g_->n() <= kDeepCheckMaxN) {
    VertexId first = leftmost(bst_root_of(b));
    splay(b);
    assert(first == a);
  }
#endif
}

VertexId TangoTree::fragment_root_of(VertexId v, VertexId head,
                                     VertexId tail) const {
  while (true) {
    v = bst_root_of(v);
    VertexId q = M().parent_of(v);
    if (q == kNoVertex || !member(q, head, tail)) return v;
    v = q;
  }
}

// ---------------------------------------------------------------------------
// minors

void TangoTree::minor_add(VertexId a, VertexId b) {
  minor_adj_[a].push_back(b);
  minor_adj_[b].push_back(a);
}

void TangoTree::minor_remove(VertexId a, VertexId b) {
  auto drop = [&](VertexId x, VertexId y) {
    auto& xs = minor_adj_[x];
    auto it = std::find(xs.begin(), xs.end(), y);
    assert(it != xs.end());
    *it = xs.back();
    xs.pop_back();
  };
  drop(a, b);
  drop(b, a);
}

// ---------------------------------------------------------------------------
// preferred path operations

std::pair<VertexId, VertexId> TangoTree::cut_internal(VertexId head, int d) {
  VertexId tail = tail_of_[head];
  assert(rd(head) < d && d <= rd(tail));
  VertexId y = ref_anc_[tail][d - 1];
  VertexId o = ref_anc_[tail][d];

  // Anchors of region(o) that lie in the top part carry the <= 2 minor
  // edges crossing the split; each has exactly one partner on the far side.
  VertexId act1 = kNoVertex, act2 = kNoVertex;
  for (VertexId a : {anchor1_[o], anchor2_[o]})
    if (a != kNoVertex && rd(a) >= rd(head) && rd(a) < d &&
        ref_anc_[tail][rd(a)] == a)
      (act1 == kNoVertex ? act1 : act2) = a;
  assert(act1 != kNoVertex);
  auto partner = [&](VertexId a) {
    VertexId b = kNoVertex;
    for (VertexId u : minor_adj_[a])
      if (rd(u) >= d) {
        assert(b == kNoVertex);
        b = u;
      }
    assert(b != kNoVertex);
    return b;
  };
  VertexId b1 = partner(act1);
  VertexId b2 = act2 == kNoVertex ? kNoVertex : partner(act2);

  // Expose the crossing edge itself and take everything beyond it off.
  expose_path(act1, b1, head, tail);
  splay(act1);
  push_down(act1);
  VertexId piece = bst_r_[act1];
  assert(piece != kNoVertex);
  bst_par_[piece] = kNoVertex;
  bst_r_[act1] = kNoVertex;
  minor_remove(act1, b1);
  DetachRec rec;
  rec.a1 = act1;
  rec.b1 = b1;

  if (act2 != kNoVertex) {
    // The second crossing anchor sits inside the detached side; expose it
    // there, split it off, and repair the top minor across the gap.
    access(act2, head, tail, /*stop_at=*/act1);
    push_down(act2);
    assert(bst_r_[act2] == kNoVertex);
    VertexId bottom = bst_l_[act2];
    assert(bottom != kNoVertex);
    bst_par_[bottom] = kNoVertex;
    bst_l_[act2] = kNoVertex;
    minor_remove(b2, act2);
    minor_add(act1, act2);
    rec.a2 = act2;
    rec.b2 = b2;
  }

  detach_rec_[o] = rec;
  tail_of_[head] = y;
  tail_of_[o] = tail;
  is_head_[o] = 1;
  pref_[y] = kNoVertex;
  return {y, o};
}

void TangoTree::merge_internal(VertexId head, VertexId bottom) {
  VertexId y = tail_of_[head];
  assert(ref_par_[bottom] == y);
  assert(is_head_[bottom]);
  DetachRec rec = detach_rec_[bottom];
  VertexId t2 = tail_of_[bottom];
  bool a1_in = rec.a1 != kNoVertex && member(rec.a1, head, y);
  bool a2_in = rec.a2 != kNoVertex && member(rec.a2, head, y);
  assert(a1_in || a2_in);

  if (a1_in && a2_in) {
    // Both anchors live in the top path: its minor has the direct repair
    // edge between them, which dissolves into the two link edges.
    VertexId r2 = fragment_root_of(bottom, bottom, t2);
    VertexId q0 = M().parent_of(r2);
    assert(q0 == rec.a1 || q0 == rec.a2);
    VertexId bq = (q0 == rec.a1) ? rec.b1 : rec.b2;
    VertexId ao = (q0 == rec.a1) ? rec.a2 : rec.a1;
    VertexId bo = (q0 == rec.a1) ? rec.b2 : rec.b1;
    expose_path(bq, bo, bottom, t2);
    assert(M().parent_of(bst_root_of(bo)) == q0);
    expose_path(ao, q0, head, y);
    // ao is now the deeper anchor, so the bottom structure hangs off it.
    assert(M().parent_of(bst_root_of(bo)) == ao);
    minor_remove(ao, q0);
    minor_add(q0, bq);
    minor_add(ao, bo);
    push_down(q0);
    assert(bst_l_[q0] == ao && bst_r_[q0] == kNoVertex);
    bst_l_[q0] = kNoVertex;
    bst_par_[ao] = kNoVertex;
    push_down(ao);
    assert(bst_l_[ao] == kNoVertex && bst_r_[ao] == kNoVertex);
    VertexId r_bot = bst_root_of(bo);
    bst_l_[ao] = r_bot;  // joined in-order: [bq .. bo, ao]
    bst_par_[r_bot] = ao;
  } else {
    VertexId a = a1_in ? rec.a1 : rec.a2;
    VertexId b = a1_in ? rec.b1 : rec.b2;
    evert(b, bottom, t2);
    assert(M().parent_of(b) == a);
    minor_add(a, b);
  }

  pref_[y] = bottom;
  tail_of_[head] = t2;
  is_head_[bottom] = 0;
  detach_rec_[bottom] = DetachRec{};
}

// ---------------------------------------------------------------------------
// search

SearchStats TangoTree::search(VertexId x) {
  auto t_start = std::chrono::steady_clock::now();
  g_->check_vertex(x);
  M().begin_search(x);

  // Descend to the target; each step is one paid move picked by free
  // bookkeeping.
  long long walk_start = M().total_cost();
  for (VertexId w = M().finger(); w != x;) {
    VertexId z = direction(*g_, w, x);
    VertexId c = toward_[w][g_->neighbor_index(w, z)];
    assert(c != kNoVertex);
    M().move_to_child(c);
    w = c;
  }
  long long walk_cost = M().total_cost() - walk_start;

  // Preferred-path boundaries along the reference root path of x.
  struct Boundary {
    VertexId head, y, next;
  };
  std::vector<Boundary> bs;
  VertexId h = ref_root_;
  while (!member(x, h, tail_of_[h])) {
    VertexId y = deepest_common(x, h, tail_of_[h]);
    VertexId next = ref_anc_[x][rd(y) + 1];
    assert(is_head_[next] && pref_[y] != next);
    bs.push_back({h, y, next});
    h = next;
  }

  long long changes = 0;
  // Boundary switches, top-down: the root path absorbs the next path at
  // each boundary, so every merged piece is exactly as it was when it was
  // detached and its recorded link partners are current.
  for (const Boundary& b : bs) {
    assert(member(b.y, ref_root_, tail_of_[ref_root_]));
    cut_internal(ref_root_, rd(b.y) + 1);
    merge_internal(ref_root_, b.next);
    ++changes;
  }
  // The access makes x's preferred child its first child.
  if (!ref_.children[x].empty()) {
    VertexId c1 = ref_.children[x][0];
    if (pref_[x] != c1) {
      cut_internal(ref_root_, rd(x) + 1);
      merge_internal(ref_root_, c1);
      ++changes;
    }
  }
  access(x, ref_root_, tail_of_[ref_root_]);

  long long cost = M().end_search();
  total_changes_ += changes;
  ++searches_;

  SearchStats stats;
  stats.target = x;
  stats.cost = cost;
  stats.walk_cost = walk_cost;
  stats.path_changes = changes;
  stats.paths_touched = changes + 1;
  stats.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                      std::chrono::steady_clock::now() - t_start)
                      .count();
  if (debug_audit_) {
    if (auto bad = audit())
      throw std::logic_error("tango audit failed after search: " + bad->what);
  }
  return stats;
}

// ---------------------------------------------------------------------------
// preferred path surface

PathId TangoTree::path_of(VertexId v) const {
  g_->check_vertex(v);
  while (v != ref_root_ && pref_[ref_par_[v]] == v) v = ref_par_[v];
  return v;
}

std::vector<VertexId> TangoTree::path_nodes(PathId p) const {
  if (p < 0 || p >= g_->n() || !is_head_[p])
    throw GstError("not a preferred path head");
  std::vector<VertexId> out{p};
  VertexId tail = tail_of_[p];
  while (out.back() != tail) out.push_back(pref_[out.back()]);
  return out;
}

VertexId TangoTree::path_tail(PathId p) const {
  if (p < 0 || p >= g_->n() || !is_head_[p])
    throw GstError("not a preferred path head");
  return tail_of_[p];
}

template <typename F>
auto TangoTree::with_session(F&& f) {
  if (M().in_session()) return f();
  M().begin_search(M().root());
  auto out = f();
  M().end_search();
  return out;
}

std::pair<PathId, PathId> TangoTree::cut_path(PathId p, int d) {
  if (p < 0 || p >= g_->n() || !is_head_[p])
    throw GstError("cut_path: not a path head");
  VertexId tail = tail_of_[p];
  if (!(rd(p) < d && d <= rd(tail)))
    throw GstError("cut_path: depth out of range");
  return with_session([&] {
    auto yo = cut_internal(p, d);
    return std::make_pair(static_cast<PathId>(p), yo.second);
  });
}

PathId TangoTree::merge_paths(PathId top, PathId bottom) {
  if (top < 0 || top >= g_->n() || !is_head_[top] || bottom < 0 ||
      bottom >= g_->n() || !is_head_[bottom])
    throw GstError("merge_paths: not path heads");
  if (ref_par_[bottom] != tail_of_[top])
    throw GstError("merge_paths: top's tail is not bottom's parent");
  return with_session([&] {
    merge_internal(top, bottom);
    return top;
  });
}

// ---------------------------------------------------------------------------
// audit

namespace {

void inorder_walk(const std::vector<VertexId>& l,
                  const std::vector<VertexId>& r, const std::vector<char>& flip,
                  VertexId v, bool flipped, std::vector<VertexId>& out) {
  if (v == kNoVertex) return;
  bool f = flipped ^ static_cast<bool>(flip[v]);
  inorder_walk(l, r, flip, f ? r[v] : l[v], f, out);
  out.push_back(v);
  inorder_walk(l, r, flip, f ? l[v] : r[v], f, out);
}

}  // namespace

std::optional<AuditViolation> TangoTree::audit() const {
  auto fail = [](std::string what) { return AuditViolation{std::move(what)}; };
  int n = g_->n();

  if (auto bad = validate_search_tree(*g_, M().tree()))
    return fail("composite tree invalid at node " + std::to_string(bad->node) +
                ": " + bad->detail);

  // Partition bookkeeping.
  for (VertexId v = 0; v < n; ++v) {
    if (pref_[v] != kNoVertex &&
        !std::binary_search(ref_.children[v].begin(), ref_.children[v].end(),
                            pref_[v]))
      return fail("preferred child of " + std::to_string(v) +
                  " is not a reference child");
    bool head = v == ref_root_ || pref_[ref_par_[v]] != v;
    if (head != static_cast<bool>(is_head_[v]))
      return fail("head flag wrong at " + std::to_string(v));
  }
  std::vector<char> seen(n, 0);
  std::vector<std::vector<VertexId>> paths;
  for (VertexId v = 0; v < n; ++v) {
    if (!is_head_[v]) continue;
    std::vector<VertexId> chain{v};
    while (pref_[chain.back()] != kNoVertex)
      chain.push_back(pref_[chain.back()]);
    if (chain.back() != tail_of_[v])
      return fail("tail bookkeeping wrong for head " + std::to_string(v));
    for (VertexId u : chain) {
      if (seen[u]) return fail("vertex in two paths: " + std::to_string(u));
      seen[u] = 1;
    }
    paths.push_back(std::move(chain));
  }
  for (VertexId v = 0; v < n; ++v)
    if (!seen[v]) return fail("vertex in no path: " + std::to_string(v));

  // Per-path checks: Steiner closure and minor correctness.
  std::vector<int> path_id(n, -1);
  for (size_t i = 0; i < paths.size(); ++i)
    for (VertexId u : paths[i]) path_id[u] = static_cast<int>(i);
  for (const auto& chain : paths) {
    if (!is_steiner_closed(*g_, chain))
      return fail("path at head " + std::to_string(chain[0]) +
                  " is not Steiner-closed");
    MinorTree want = minor_tree(*g_, chain);
    std::set<std::pair<VertexId, VertexId>> have;
    for (VertexId u : chain)
      for (VertexId w : minor_adj_[u])
        have.insert({std::min(u, w), std::max(u, w)});
    std::set<std::pair<VertexId, VertexId>> wantset(want.edges.begin(),
                                                    want.edges.end());
    if (have != wantset)
      return fail("minor mismatch for path at head " +
                  std::to_string(chain[0]));
  }

  // Solid paths: BST pointers mirror machine edges, in-order sequences are
  // minor paths, dashes satisfy the splice invariant.
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId c : {bst_l_[v], bst_r_[v]}) {
      if (c == kNoVertex) continue;
      if (M().parent_of(c) != v)
        return fail("bst edge not a machine edge at " + std::to_string(v));
      if (bst_par_[c] != v)
        return fail("bst parent mismatch at " + std::to_string(c));
      if (path_id[c] != path_id[v])
        return fail("solid edge crosses paths at " + std::to_string(v));
    }
    if (bst_par_[v] != kNoVertex && bst_l_[bst_par_[v]] != v &&
        bst_r_[bst_par_[v]] != v)
      return fail("dangling bst parent at " + std::to_string(v));
  }
  for (VertexId v = 0; v < n; ++v) {
    if (bst_par_[v] != kNoVertex) continue;
    std::vector<VertexId> seq;
    inorder_walk(bst_l_, bst_r_, flip_, v, false, seq);
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
      const auto& adj = minor_adj_[seq[i]];
      if (std::find(adj.begin(), adj.end(), seq[i + 1]) == adj.end())
        return fail("solid path in-order not a minor path near " +
                    std::to_string(seq[i]));
    }
    VertexId q = M().parent_of(v);
    VertexId first = seq.front();
    VertexId head = paths[path_id[v]][0];
    if (q == kNoVertex) {
      if (path_id[v] != path_id[ref_root_])
        return fail("composite root in a non-root path");
    } else if (path_id[q] == path_id[v]) {
      const auto& adj = minor_adj_[q];
      if (std::find(adj.begin(), adj.end(), first) == adj.end())
        return fail("dash at " + std::to_string(q) +
                    " does not match first in-order vertex " +
                    std::to_string(first));
    } else {
      if (q != anchor1_[head] && q != anchor2_[head])
        return fail("path structure for head " + std::to_string(head) +
                    " hangs at non-anchor " + std::to_string(q));
    }
  }

  // toward_ map against composite Euler intervals.
  {
    const SearchTree& t = M().tree();
    std::vector<int> tin(n), tout(n);
    int timer = 0;
    std::vector<std::pair<VertexId, int>> stack{{t.root, 0}};
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i == 0) tin[v] = timer++;
      if (i < static_cast<int>(t.children[v].size())) {
        stack.emplace_back(t.children[v][i++], 0);
      } else {
        tout[v] = timer;
        stack.pop_back();
      }
    }
    auto inside = [&](VertexId an, VertexId de) {
      return tin[an] <= tin[de] && tin[de] < tout[an];
    };
    for (VertexId w = 0; w < n; ++w) {
      const auto& nb = g_->neighbors(w);
      for (size_t i = 0; i < nb.size(); ++i) {
        VertexId z = nb[i], c = toward_[w][i];
        bool below = z != w && inside(w, z);
        if (below) {
          if (c == kNoVertex || t.parent[c] != w || !inside(c, z))
            return fail("toward map wrong at " + std::to_string(w));
        } else if (c != kNoVertex) {
          return fail("toward map stale at " + std::to_string(w));
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace gst
