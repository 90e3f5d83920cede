#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Search trees on trees. A search tree T on an unrooted tree G is a rooted
// tree over the vertices of G such that the child subtrees of every node v
// are exactly the connected components of G restricted to subtree(v) \ {v}.

namespace gst {

using VertexId = int;
inline constexpr VertexId kNoVertex = -1;

struct GstError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : GstError {
  using GstError::GstError;
};
struct FormatError final : ParseError {
  using ParseError::ParseError;
};
struct VertexRangeError final : ParseError {
  using ParseError::ParseError;
};
struct DuplicateEdgeError final : ParseError {
  using ParseError::ParseError;
};
struct CycleError final : ParseError {
  using ParseError::ParseError;
};
struct DisconnectedError final : ParseError {
  using ParseError::ParseError;
};

struct InvalidTreeError : GstError {
  using GstError::GstError;
};

// The fixed unrooted tree G. Immutable once built; queries are const and
// safe to share between threads.
class Topology {
 public:
  Topology(int n, const std::vector<std::pair<VertexId, VertexId>>& edges);

  int n() const { return n_; }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adj_[v]; }
  int degree(VertexId v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(VertexId u, VertexId v) const;
  // Position of v in neighbors(u), or -1.
  int neighbor_index(VertexId u, VertexId v) const;

  // Queries below use a fixed rooting at vertex 0 plus binary lifting.
  int rooted_depth(VertexId v) const { return depth_[v]; }
  VertexId rooted_parent(VertexId v) const { return par_[v]; }
  VertexId ancestor(VertexId v, int k) const;
  VertexId lca(VertexId u, VertexId v) const;
  int dist(VertexId u, VertexId v) const;
  bool on_path(VertexId m, VertexId u, VertexId v) const;
  // Meeting point of the three pairwise paths.
  VertexId median(VertexId a, VertexId b, VertexId c) const;

  void check_vertex(VertexId v) const;

 private:
  int n_ = 0;
  std::vector<std::vector<VertexId>> adj_;
  std::vector<VertexId> par_;
  std::vector<int> depth_;
  std::vector<int> tin_, tout_;
  std::vector<std::vector<VertexId>> up_;  // up_[k][v]: 2^k-th ancestor

  bool in_rooted_subtree(VertexId root, VertexId v) const {
    return tin_[root] <= tin_[v] && tin_[v] < tout_[root];
  }
};

// Edge-list document: first line "n", then n-1 lines "u v".
Topology parse_topology(const std::string& text);
std::string format_topology(const Topology& g);

// Rooted tree over the vertices of a Topology. parent[root] == kNoVertex,
// children lists sorted ascending (the canonical child order).
struct SearchTree {
  VertexId root = 0;
  std::vector<VertexId> parent;
  std::vector<std::vector<VertexId>> children;

  int n() const { return static_cast<int>(parent.size()); }
  bool operator==(const SearchTree& o) const {
    return root == o.root && parent == o.parent;
  }

  // Rebuilds children lists; throws InvalidTreeError on malformed shape
  // (wrong root, cycle, unreachable vertex).
  static SearchTree from_parents(VertexId root, std::vector<VertexId> parent);
};

// Serialization: line "root r", then n lines "v parent(v)", parent(root) = -1.
std::string format_search_tree(const SearchTree& t);
SearchTree parse_search_tree(const std::string& text);

// Unique simple path from u to v, inclusive. path_between(u, u) = [u].
std::vector<VertexId> path_between(const Topology& g, VertexId u, VertexId v);

// Minimal connected subgraph of G containing s, as a sorted vertex list.
std::vector<VertexId> convex_hull(const Topology& g,
                                  std::span<const VertexId> s);

// Neighbor of x on the path from x to t; identifies the component of G \ x
// that contains t. Requires x != t.
VertexId direction(const Topology& g, VertexId x, VertexId t);

struct TreeViolation {
  VertexId node = kNoVertex;
  std::string detail;
};

// Accepts iff the recursive component condition holds at every node. The
// check runs one bottom-up union-find pass over G's edges.
std::optional<TreeViolation> validate_search_tree(const Topology& g,
                                                  const SearchTree& t);

// Rotation on a non-root node v: v and its parent p swap depths, all former
// children of p stay with p, and the unique child of v whose subtree holds
// a vertex adjacent to p in G (if any) moves under p. Always yields a valid
// search tree. Returns the transferred child, or kNoVertex.
VertexId rotate(const Topology& g, SearchTree& t, VertexId v);
// Same with the transferred child precomputed by the caller; pass kNoVertex
// for "no transfer". Checked in debug builds.
VertexId rotate_hinted(const Topology& g, SearchTree& t, VertexId v,
                       VertexId transfer);

// Number of nodes on the longest root-to-leaf path; 1 for a single vertex.
int height(const SearchTree& t);

// Depth of v in t (root has depth 0).
int depth_in(const SearchTree& t, VertexId v);

namespace detail {
void sorted_insert(std::vector<VertexId>& xs, VertexId v);
void sorted_erase(std::vector<VertexId>& xs, VertexId v);
}  // namespace detail

}  // namespace gst
