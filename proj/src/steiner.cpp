#include "gst/steiner.hpp"

#include <algorithm>
#include <cassert>

namespace gst {

namespace {

// Reusable epoch-stamped scratch marks, one slot per vertex.
struct Marks {
  std::vector<int> stamp;
  int epoch = 0;
  void reset(int n) {
    if (static_cast<int>(stamp.size()) < n) stamp.assign(n, 0);
    ++epoch;
  }
  bool test(VertexId v) const { return stamp[v] == epoch; }
  void set(VertexId v) { stamp[v] = epoch; }
};

thread_local Marks tl_marks_a, tl_marks_b;

// Incremental hull of a growing root path. add() extends the path by one
// vertex and reports the unique hull vertex that loses closure, if any.
struct PathHull {
  const Topology* g;
  std::vector<char> in_path, in_hull;
  std::vector<int> deg;  // degree within the current hull
  long long bad = 0;     // hull vertices outside the path with degree != 2

  struct Rec {
    VertexId v = kNoVertex;
    bool fresh_walk = false;
    std::vector<VertexId> chain;  // new hull vertices, v first, excludes attach
    VertexId attach = kNoVertex;
  };

  explicit PathHull(const Topology& gg)
      : g(&gg), in_path(gg.n(), 0), in_hull(gg.n(), 0), deg(gg.n(), 0) {}

  bool is_bad(VertexId x) const {
    return in_hull[x] && !in_path[x] && deg[x] != 2;
  }
  template <typename F>
  void touch(VertexId x, F&& f) {
    bad -= is_bad(x);
    f();
    bad += is_bad(x);
  }

  void init_root(VertexId r) {
    in_path[r] = in_hull[r] = 1;
  }

  // Extends the path with v. Pre: parent of v already in the path.
  Rec add(VertexId v, VertexId toward) {
    Rec rec;
    rec.v = v;
    if (in_hull[v]) {
      touch(v, [&] { in_path[v] = 1; });
      return rec;
    }
    rec.fresh_walk = true;
    VertexId x = v;
    while (!in_hull[x]) {
      rec.chain.push_back(x);
      x = direction(*g, x, toward);
    }
    rec.attach = x;
    for (size_t i = 0; i < rec.chain.size(); ++i) {
      VertexId c = rec.chain[i];
      touch(c, [&] {
        in_hull[c] = 1;
        deg[c] = (i == 0) ? 1 : 2;
      });
    }
    touch(rec.attach, [&] { ++deg[rec.attach]; });
    touch(v, [&] { in_path[v] = 1; });
    return rec;
  }

  void undo(const Rec& rec) {
    touch(rec.v, [&] { in_path[rec.v] = 0; });
    if (!rec.fresh_walk) return;
    touch(rec.attach, [&] { --deg[rec.attach]; });
    for (VertexId c : rec.chain) {
      touch(c, [&] {
        in_hull[c] = 0;
        deg[c] = 0;
      });
    }
  }
};

}  // namespace

std::vector<VertexId> hull_of_sequence(const Topology& g,
                                       std::span<const VertexId> seq) {
  if (seq.empty()) throw GstError("hull of an empty sequence");
  auto& marks = tl_marks_a;
  marks.reset(g.n());
  std::vector<VertexId> hull;
  auto push = [&](VertexId v) {
    if (!marks.test(v)) {
      marks.set(v);
      hull.push_back(v);
    }
  };
  push(seq[0]);
  for (size_t i = 0; i + 1 < seq.size(); ++i)
    for (VertexId v : path_between(g, seq[i], seq[i + 1])) push(v);
  return hull;
}

bool is_steiner_closed(const Topology& g, std::span<const VertexId> s) {
  if (s.empty()) throw GstError("empty vertex set");
  auto hull = hull_of_sequence(g, s);
  auto& in_hull = tl_marks_a;  // still set from hull_of_sequence
  auto& in_s = tl_marks_b;
  in_s.reset(g.n());
  for (VertexId v : s) in_s.set(v);
  for (VertexId v : hull) {
    if (in_s.test(v)) continue;
    int d = 0;
    for (VertexId w : g.neighbors(v))
      if (in_hull.test(w)) ++d;
    if (d != 2) return false;
  }
  return true;
}

std::optional<VertexId> steiner_tree_violation(const Topology& g,
                                               const SearchTree& t) {
  PathHull hull(g);
  hull.init_root(t.root);
  std::optional<VertexId> found;
  // DFS with explicit undo on backtrack.
  struct Frame {
    VertexId v;
    size_t next_child = 0;
    PathHull::Rec rec;
  };
  std::vector<Frame> stack;
  stack.push_back({t.root, 0, {}});
  while (!stack.empty() && !found) {
    Frame& f = stack.back();
    if (f.next_child < t.children[f.v].size()) {
      VertexId c = t.children[f.v][f.next_child++];
      auto rec = hull.add(c, f.v);
      if (hull.bad != 0) {
        found = c;
        hull.undo(rec);
        break;
      }
      stack.push_back({c, 0, std::move(rec)});
    } else {
      if (f.v != t.root) hull.undo(f.rec);
      stack.pop_back();
    }
  }
  return found;
}

bool is_steiner_closed_tree(const Topology& g, const SearchTree& t) {
  return !steiner_tree_violation(g, t).has_value();
}

SearchTree steinerify(const Topology& g, SearchTree t) {
  PathHull hull(g);
  hull.init_root(t.root);
  std::vector<char> done(g.n(), 0);
  done[t.root] = 1;

  struct Frame {
    VertexId v;
    PathHull::Rec rec;
  };
  std::vector<Frame> stack;
  stack.push_back({t.root, {}});
  while (!stack.empty()) {
    VertexId v = stack.back().v;
    VertexId c = kNoVertex;
    for (VertexId w : t.children[v])
      if (!done[w]) {
        c = w;
        break;
      }
    if (c == kNoVertex) {
      if (v != t.root) hull.undo(stack.back().rec);
      stack.pop_back();
      continue;
    }
    auto rec = hull.add(c, v);
    if (hull.bad == 0) {
      done[c] = 1;
      stack.push_back({c, std::move(rec)});
      continue;
    }
    // The root path to c lost closure. The unique offending hull vertex is
    // the attach point of c's hull walk; rotate it up to sit between v and c.
    VertexId s = rec.attach;
    assert(hull.bad == 1 && s != kNoVertex && hull.is_bad(s));
    hull.undo(rec);
    while (t.parent[s] != v) rotate(g, t, s);
    assert(t.parent[c] == s);
    // Next round picks s (or a smaller pending child) from v's new children.
  }
  return t;
}

SearchTree centroid_decomposition(const Topology& g) {
  int n = g.n();
  std::vector<VertexId> parent(n, kNoVertex);
  std::vector<char> alive(n, 1);
  std::vector<int> size(n, 1);
  std::vector<VertexId> bfs_par(n, kNoVertex);
  VertexId root = kNoVertex;

  struct Job {
    VertexId inside;  // any vertex of the component
    VertexId attach;  // search-tree parent of the component's centroid
  };
  std::vector<Job> jobs{{0, kNoVertex}};
  std::vector<VertexId> comp;
  while (!jobs.empty()) {
    Job job = jobs.back();
    jobs.pop_back();
    auto& seen = tl_marks_a;
    seen.reset(n);
    seen.set(job.inside);
    comp.assign(1, job.inside);
    bfs_par[job.inside] = kNoVertex;
    for (size_t i = 0; i < comp.size(); ++i) {
      VertexId v = comp[i];
      for (VertexId w : g.neighbors(v))
        if (alive[w] && !seen.test(w)) {
          seen.set(w);
          bfs_par[w] = v;
          comp.push_back(w);
        }
    }
    for (VertexId v : comp) size[v] = 1;
    for (size_t i = comp.size(); i-- > 1;) size[bfs_par[comp[i]]] += size[comp[i]];
    int total = static_cast<int>(comp.size());
    VertexId best = kNoVertex;
    int best_part = total + 1;
    for (VertexId v : comp) {
      int part = total - size[v];
      for (VertexId w : g.neighbors(v))
        if (alive[w] && seen.test(w) && bfs_par[w] == v)
          part = std::max(part, size[w]);
      if (part < best_part || (part == best_part && v < best)) {
        best_part = part;
        best = v;
      }
    }
    parent[best] = job.attach;
    if (job.attach == kNoVertex) root = best;
    alive[best] = 0;
    for (VertexId w : g.neighbors(best))
      if (alive[w]) jobs.push_back({w, best});
  }
  return SearchTree::from_parents(root, std::move(parent));
}

SearchTree reference_tree(const Topology& g) {
  return steinerify(g, centroid_decomposition(g));
}

MinorTree minor_tree(const Topology& g, std::span<const VertexId> s) {
  if (!is_steiner_closed(g, s))
    throw NotSteinerClosedError("minor_tree of a set that is not Steiner-closed");
  auto hull = hull_of_sequence(g, s);
  auto& in_hull = tl_marks_a;  // set by hull_of_sequence
  auto& in_s = tl_marks_b;
  in_s.reset(g.n());
  for (VertexId v : s) in_s.set(v);

  MinorTree m;
  m.vertices.assign(s.begin(), s.end());
  std::sort(m.vertices.begin(), m.vertices.end());
  m.vertices.erase(std::unique(m.vertices.begin(), m.vertices.end()),
                   m.vertices.end());
  for (VertexId a : m.vertices) {
    for (VertexId w : g.neighbors(a)) {
      if (!in_hull.test(w)) continue;
      // Follow the degree-2 chain of hull Steiner vertices to the next member.
      VertexId prev = a, x = w;
      while (!in_s.test(x)) {
        VertexId next = kNoVertex;
        for (VertexId y : g.neighbors(x))
          if (y != prev && in_hull.test(y)) {
            next = y;
            break;
          }
        assert(next != kNoVertex);
        prev = x;
        x = next;
      }
      if (a < x) m.edges.emplace_back(a, x);
    }
  }
  std::sort(m.edges.begin(), m.edges.end());
  m.edges.erase(std::unique(m.edges.begin(), m.edges.end()), m.edges.end());
  return m;
}

int split_components(const Topology& g, std::span<const VertexId> pi, int i) {
  if (pi.empty()) throw GstError("empty path");
  if (i < 1 || i >= static_cast<int>(pi.size()))
    throw GstError("split index out of range");
  auto hull_all = hull_of_sequence(g, pi);
  auto hull_suffix = hull_of_sequence(g, pi.subspan(i));
  auto& in_suffix = tl_marks_a;  // set by the second call
  auto& in_diff = tl_marks_b;
  in_diff.reset(g.n());
  for (VertexId v : hull_all)
    if (!in_suffix.test(v)) in_diff.set(v);

  int comps = 0;
  std::vector<VertexId> stack;
  Marks local;
  local.reset(g.n());
  for (VertexId v : hull_all) {
    if (!in_diff.test(v) || local.test(v)) continue;
    ++comps;
    stack.assign(1, v);
    local.set(v);
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (VertexId w : g.neighbors(x))
        if (in_diff.test(w) && !local.test(w)) {
          local.set(w);
          stack.push_back(w);
        }
    }
  }
  return comps;
}

}  // namespace gst
