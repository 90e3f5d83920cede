#pragma once

#include <optional>
#include <span>

#include "gst/core.hpp"

// Steiner-closed sets and trees. A set S is Steiner-closed if every vertex
// of its convex hull outside S has hull-degree exactly two; a search tree is
// Steiner-closed if every root-to-node vertex set is. Steiner-closed sets
// contract to minor trees G(S), the backbone of the composite structure.

namespace gst {

struct NotSteinerClosedError : GstError {
  using GstError::GstError;
};

bool is_steiner_closed(const Topology& g, std::span<const VertexId> s);

// First node (canonical DFS order, ascending children) whose root path is
// not Steiner-closed, or nullopt.
std::optional<VertexId> steiner_tree_violation(const Topology& g,
                                               const SearchTree& t);
bool is_steiner_closed_tree(const Topology& g, const SearchTree& t);

// Rewrites t into a Steiner-closed search tree of height at most twice the
// input height: depth-first traversal; when a root path first loses closure
// the unique offending hull vertex is rotated up until it sits between the
// visited node and its parent, and the traversal continues from it.
SearchTree steinerify(const Topology& g, SearchTree t);

// Root = centroid (ties to the smaller id), recursing per component.
// Height is at most floor(log2 n) + 1.
SearchTree centroid_decomposition(const Topology& g);

// steinerify(centroid_decomposition(g)); Steiner-closed, height <= 2 log2 n + 2.
SearchTree reference_tree(const Topology& g);

struct MinorTree {
  std::vector<VertexId> vertices;                    // sorted
  std::vector<std::pair<VertexId, VertexId>> edges;  // a < b, sorted
};

// Contraction of G onto a Steiner-closed set: a,b adjacent iff no member of
// s is interior to their G-path. Throws NotSteinerClosedError otherwise.
MinorTree minor_tree(const Topology& g, std::span<const VertexId> s);

// Number of connected components of CH(pi) minus CH(pi[i..]) for a
// root-to-node path pi of a Steiner-closed search tree; at most 2.
int split_components(const Topology& g, std::span<const VertexId> pi, int i);

// Hull of a vertex sequence as the union of G-paths between consecutive
// entries; equals the convex hull for any sequence covering its set.
std::vector<VertexId> hull_of_sequence(const Topology& g,
                                       std::span<const VertexId> seq);

}  // namespace gst
