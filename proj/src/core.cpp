#include "gst/core.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace gst {

namespace detail {

void sorted_insert(std::vector<VertexId>& xs, VertexId v) {
  xs.insert(std::lower_bound(xs.begin(), xs.end(), v), v);
}

void sorted_erase(std::vector<VertexId>& xs, VertexId v) {
  auto it = std::lower_bound(xs.begin(), xs.end(), v);
  assert(it != xs.end() && *it == v);
  xs.erase(it);
}

struct Dsu {
  std::vector<int> par, sz;
  explicit Dsu(int n) : par(n), sz(n, 1) {
    for (int i = 0; i < n; ++i) par[i] = i;
  }
  int find(int x) {
    while (par[x] != x) x = par[x] = par[par[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (sz[a] < sz[b]) std::swap(a, b);
    par[b] = a;
    sz[a] += sz[b];
    return true;
  }
  int size(int x) { return sz[find(x)]; }
};

}  // namespace detail

Topology::Topology(int n, const std::vector<std::pair<VertexId, VertexId>>& edges)
    : n_(n) {
  if (n < 1) throw FormatError("topology needs at least one vertex");
  if (static_cast<int>(edges.size()) != n - 1)
    throw FormatError("a tree on " + std::to_string(n) + " vertices needs " +
                      std::to_string(n - 1) + " edges");
  adj_.assign(n, {});
  detail::Dsu dsu(n);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw VertexRangeError("edge endpoint out of range: " +
                             std::to_string(u) + " " + std::to_string(v));
    if (u == v) throw CycleError("self-loop at " + std::to_string(u));
    if (has_edge(u, v))
      throw DuplicateEdgeError("duplicate edge " + std::to_string(u) + " " +
                               std::to_string(v));
    if (!dsu.unite(u, v))
      throw CycleError("edge " + std::to_string(u) + " " + std::to_string(v) +
                       " closes a cycle");
    detail::sorted_insert(adj_[u], v);
    detail::sorted_insert(adj_[v], u);
  }
  if (dsu.size(0) != n) throw DisconnectedError("edge list is disconnected");

  par_.assign(n, kNoVertex);
  depth_.assign(n, 0);
  tin_.assign(n, 0);
  tout_.assign(n, 0);
  // Iterative DFS from 0.
  std::vector<std::pair<VertexId, int>> stack;
  stack.reserve(n);
  stack.emplace_back(0, 0);
  int timer = 0;
  while (!stack.empty()) {
    auto& [v, i] = stack.back();
    if (i == 0) tin_[v] = timer++;
    if (i < degree(v)) {
      VertexId w = adj_[v][i++];
      if (w == par_[v]) continue;
      par_[w] = v;
      depth_[w] = depth_[v] + 1;
      stack.emplace_back(w, 0);
    } else {
      tout_[v] = timer;
      stack.pop_back();
    }
  }
  int logn = 1;
  while ((1 << logn) < n) ++logn;
  up_.assign(logn, std::vector<VertexId>(n));
  for (int v = 0; v < n; ++v) up_[0][v] = par_[v] == kNoVertex ? 0 : par_[v];
  for (int k = 1; k < logn; ++k)
    for (int v = 0; v < n; ++v) up_[k][v] = up_[k - 1][up_[k - 1][v]];
}

bool Topology::has_edge(VertexId u, VertexId v) const {
  return neighbor_index(u, v) >= 0;
}

int Topology::neighbor_index(VertexId u, VertexId v) const {
  const auto& a = adj_[u];
  auto it = std::lower_bound(a.begin(), a.end(), v);
  if (it == a.end() || *it != v) return -1;
  return static_cast<int>(it - a.begin());
}

VertexId Topology::ancestor(VertexId v, int k) const {
  assert(k <= depth_[v]);
  for (int i = 0; k; ++i, k >>= 1)
    if (k & 1) v = up_[i][v];
  return v;
}

VertexId Topology::lca(VertexId u, VertexId v) const {
  if (depth_[u] < depth_[v]) std::swap(u, v);
  u = ancestor(u, depth_[u] - depth_[v]);
  if (u == v) return u;
  for (int k = static_cast<int>(up_.size()) - 1; k >= 0; --k) {
    if (up_[k][u] != up_[k][v]) {
      u = up_[k][u];
      v = up_[k][v];
    }
  }
  return par_[u];
}

int Topology::dist(VertexId u, VertexId v) const {
  return depth_[u] + depth_[v] - 2 * depth_[lca(u, v)];
}

bool Topology::on_path(VertexId m, VertexId u, VertexId v) const {
  return dist(u, m) + dist(m, v) == dist(u, v);
}

VertexId Topology::median(VertexId a, VertexId b, VertexId c) const {
  VertexId x = lca(a, b), y = lca(a, c), z = lca(b, c);
  VertexId best = x;
  if (depth_[y] > depth_[best]) best = y;
  if (depth_[z] > depth_[best]) best = z;
  return best;
}

void Topology::check_vertex(VertexId v) const {
  if (v < 0 || v >= n_)
    throw VertexRangeError("vertex " + std::to_string(v) + " out of range");
}

Topology parse_topology(const std::string& text) {
  std::istringstream in(text);
  long long n;
  if (!(in >> n)) throw FormatError("missing vertex count");
  if (n < 1 || n > (1LL << 30)) throw FormatError("bad vertex count");
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(n - 1);
  for (long long i = 0; i < n - 1; ++i) {
    long long u, v;
    if (!(in >> u >> v)) throw FormatError("missing edge line");
    if (u < INT32_MIN || u > INT32_MAX || v < INT32_MIN || v > INT32_MAX)
      throw VertexRangeError("edge endpoint out of range");
    edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }
  std::string rest;
  if (in >> rest) throw FormatError("trailing tokens after edge list");
  return Topology(static_cast<int>(n), edges);
}

std::string format_topology(const Topology& g) {
  std::ostringstream out;
  out << g.n() << "\n";
  for (VertexId u = 0; u < g.n(); ++u)
    for (VertexId v : g.neighbors(u))
      if (u < v) out << u << " " << v << "\n";
  return out.str();
}

SearchTree SearchTree::from_parents(VertexId root, std::vector<VertexId> parent) {
  int n = static_cast<int>(parent.size());
  if (root < 0 || root >= n || parent[root] != kNoVertex)
    throw InvalidTreeError("bad root");
  SearchTree t;
  t.root = root;
  t.parent = std::move(parent);
  t.children.assign(n, {});
  for (VertexId v = 0; v < n; ++v) {
    if (v == root) continue;
    VertexId p = t.parent[v];
    if (p < 0 || p >= n) throw InvalidTreeError("bad parent of " + std::to_string(v));
    t.children[p].push_back(v);
  }
  for (auto& c : t.children) std::sort(c.begin(), c.end());
  // Reachability doubles as the acyclicity check.
  std::vector<VertexId> order{root};
  order.reserve(n);
  for (size_t i = 0; i < order.size(); ++i)
    for (VertexId c : t.children[order[i]]) order.push_back(c);
  if (static_cast<int>(order.size()) != n)
    throw InvalidTreeError("parent array is not a single rooted tree");
  return t;
}

std::string format_search_tree(const SearchTree& t) {
  std::ostringstream out;
  out << "root " << t.root << "\n";
  for (VertexId v = 0; v < t.n(); ++v) out << v << " " << t.parent[v] << "\n";
  return out.str();
}

SearchTree parse_search_tree(const std::string& text) {
  std::istringstream in(text);
  std::string kw;
  VertexId root;
  if (!(in >> kw >> root) || kw != "root")
    throw FormatError("expected 'root r' header");
  std::vector<std::pair<VertexId, VertexId>> rows;
  VertexId v, p;
  while (in >> v >> p) rows.emplace_back(v, p);
  if (!in.eof()) throw FormatError("malformed search tree row");
  int n = static_cast<int>(rows.size());
  std::vector<VertexId> parent(n, kNoVertex);
  std::vector<bool> seen(n, false);
  for (auto [a, b] : rows) {
    if (a < 0 || a >= n || seen[a]) throw FormatError("bad vertex row");
    seen[a] = true;
    parent[a] = b;
  }
  try {
    return SearchTree::from_parents(root, std::move(parent));
  } catch (const InvalidTreeError& e) {
    throw FormatError(e.what());
  }
}

std::vector<VertexId> path_between(const Topology& g, VertexId u, VertexId v) {
  g.check_vertex(u);
  g.check_vertex(v);
  VertexId m = g.lca(u, v);
  std::vector<VertexId> left, right;
  for (VertexId x = u; x != m; x = g.rooted_parent(x)) left.push_back(x);
  left.push_back(m);
  for (VertexId x = v; x != m; x = g.rooted_parent(x)) right.push_back(x);
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

std::vector<VertexId> convex_hull(const Topology& g,
                                  std::span<const VertexId> s) {
  if (s.empty()) throw GstError("convex hull of an empty set");
  int n = g.n();
  std::vector<int> cnt(n, 0);
  for (VertexId v : s) {
    g.check_vertex(v);
    cnt[v] = 1;
  }
  int total = 0;
  for (int v = 0; v < n; ++v) total += cnt[v];
  // Accumulate counts bottom-up in one reverse-BFS order pass.
  std::vector<VertexId> order{0};
  order.reserve(n);
  for (size_t i = 0; i < order.size(); ++i)
    for (VertexId w : g.neighbors(order[i]))
      if (w != g.rooted_parent(order[i])) order.push_back(w);
  std::vector<int> sub(cnt);
  for (size_t i = order.size(); i-- > 0;) {
    VertexId v = order[i];
    if (VertexId p = g.rooted_parent(v); p != kNoVertex) sub[p] += sub[v];
  }
  std::vector<VertexId> hull;
  for (int v = 0; v < n; ++v) {
    if (cnt[v]) {
      hull.push_back(v);
      continue;
    }
    // v is on a path between members iff at least two sides of v hold one.
    int sides = (total - sub[v] > 0) ? 1 : 0;
    for (VertexId w : g.neighbors(v)) {
      if (w == g.rooted_parent(v)) continue;
      if (sub[w] > 0) ++sides;
      if (sides >= 2) break;
    }
    if (sides >= 2) hull.push_back(v);
  }
  return hull;
}

VertexId direction(const Topology& g, VertexId x, VertexId t) {
  g.check_vertex(x);
  g.check_vertex(t);
  if (x == t) throw GstError("direction from a vertex to itself");
  int dx = g.rooted_depth(x), dt = g.rooted_depth(t);
  if (dt > dx) {
    VertexId c = g.ancestor(t, dt - dx - 1);
    if (g.rooted_parent(c) == x) return c;
  }
  return g.rooted_parent(x);
}

std::optional<TreeViolation> validate_search_tree(const Topology& g,
                                                  const SearchTree& t) {
  int n = g.n();
  if (t.n() != n) return TreeViolation{kNoVertex, "vertex count mismatch"};
  if (t.root < 0 || t.root >= n || t.parent[t.root] != kNoVertex)
    return TreeViolation{t.root, "bad root"};
  for (VertexId v = 0; v < n; ++v) {
    if (v == t.root) continue;
    VertexId p = t.parent[v];
    if (p < 0 || p >= n) return TreeViolation{v, "parent out of range"};
    if (!std::binary_search(t.children[p].begin(), t.children[p].end(), v))
      return TreeViolation{v, "parent/children mismatch"};
  }
  // BFS order; also yields subtree sizes and Euler intervals of t.
  std::vector<VertexId> order{t.root};
  order.reserve(n);
  std::vector<int> tin(n), tout(n), sub(n, 1), depth(n, 0);
  for (size_t i = 0; i < order.size(); ++i)
    for (VertexId c : t.children[order[i]]) {
      depth[c] = depth[order[i]] + 1;
      order.push_back(c);
    }
  if (static_cast<int>(order.size()) != n)
    return TreeViolation{t.root, "tree does not span all vertices"};
  {
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
  }
  for (size_t i = order.size(); i-- > 0;) {
    VertexId v = order[i];
    if (v != t.root) sub[t.parent[v]] += sub[v];
  }
  auto in_sub = [&](VertexId r, VertexId v) {
    return tin[r] <= tin[v] && tin[v] < tout[r];
  };

  // Deepest vertices first, ties by id: the first reported violation is the
  // deepest (then smallest) offending node.
  std::vector<VertexId> by_depth(order.rbegin(), order.rend());
  std::stable_sort(by_depth.begin(), by_depth.end(),
                   [&](VertexId a, VertexId b) { return depth[a] > depth[b]; });
  detail::Dsu dsu(n);
  std::vector<bool> active(n, false);
  std::vector<int> mark(n, -1);
  for (VertexId v : by_depth) {
    // Children must live in pairwise distinct components of G minus v.
    for (VertexId c : t.children[v]) {
      int r = dsu.find(c);
      if (mark[r] == v)
        return TreeViolation{
            v, "two child subtrees lie in one component of G minus node"};
      mark[r] = v;
    }
    active[v] = true;
    for (VertexId z : g.neighbors(v))
      if (active[z] && in_sub(v, z)) dsu.unite(v, z);
    if (dsu.size(v) != sub[v])
      return TreeViolation{v, "subtree is not connected in G"};
  }
  return std::nullopt;
}

namespace {

VertexId transfer_child(const Topology& g, const SearchTree& t, VertexId v,
                        VertexId p) {
  // The only neighbor of p inside subtree(v) is the first vertex of the
  // G-path from p to v; if that is v itself nothing transfers.
  VertexId z = direction(g, p, v);
  if (z == v) return kNoVertex;
  int guard = t.n();
  while (t.parent[z] != v) {
    z = t.parent[z];
    assert(z != kNoVertex && guard-- > 0);
  }
  return z;
}

}  // namespace

VertexId rotate_hinted(const Topology& g, SearchTree& t, VertexId v,
                       VertexId transfer) {
  VertexId p = t.parent[v];
  if (p == kNoVertex) throw InvalidTreeError("rotate at the root");
#ifndef NDEBUG
  {
    VertexId want = transfer_child(g, t, v, p);
    assert(transfer == want && "wrong transfer hint");
    // Def 2.2 promises at most one such child; check it on small inputs.
    if (t.n() <= 64) {
      int holders = 0;
      for (VertexId c : t.children[v]) {
        bool holds = false;
        std::vector<VertexId> stack{c};
        while (!stack.empty() && !holds) {
          VertexId x = stack.back();
          stack.pop_back();
          if (g.has_edge(x, p)) holds = true;
          for (VertexId y : t.children[x]) stack.push_back(y);
        }
        holders += holds;
        if (holds) assert(c == transfer);
      }
      assert(holders <= 1 && "transfer child is not unique");
    }
  }
#endif
  VertexId gp = t.parent[p];
  if (gp != kNoVertex) {
    detail::sorted_erase(t.children[gp], p);
    detail::sorted_insert(t.children[gp], v);
  } else {
    t.root = v;
  }
  t.parent[v] = gp;
  detail::sorted_erase(t.children[p], v);
  t.parent[p] = v;
  detail::sorted_insert(t.children[v], p);
  if (transfer != kNoVertex) {
    detail::sorted_erase(t.children[v], transfer);
    t.parent[transfer] = p;
    detail::sorted_insert(t.children[p], transfer);
  }
  return transfer;
}

VertexId rotate(const Topology& g, SearchTree& t, VertexId v) {
  VertexId p = t.parent[v];
  if (p == kNoVertex) throw InvalidTreeError("rotate at the root");
  return rotate_hinted(g, t, v, transfer_child(g, t, v, p));
}

int height(const SearchTree& t) {
  std::vector<VertexId> order{t.root};
  order.reserve(t.n());
  std::vector<int> depth(t.n(), 0);
  int best = 1;
  for (size_t i = 0; i < order.size(); ++i) {
    VertexId v = order[i];
    best = std::max(best, depth[v] + 1);
    for (VertexId c : t.children[v]) {
      depth[c] = depth[v] + 1;
      order.push_back(c);
    }
  }
  return best;
}

int depth_in(const SearchTree& t, VertexId v) {
  int d = 0;
  while (t.parent[v] != kNoVertex) {
    v = t.parent[v];
    ++d;
  }
  return d;
}

}  // namespace gst
