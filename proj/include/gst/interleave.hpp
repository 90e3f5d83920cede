#pragma once

#include <span>
#include <vector>

#include "gst/core.hpp"

// Preferred-child tracking on a fixed reference tree P and the interleave
// lower bound I(G,P,X): the total number of times preferred children change
// between two defined values. First definitions are accounted separately
// (they carry the "+n" in the preferred-path-change budget).

namespace gst {

struct PreferredEvent {
  VertexId node;
  bool first_definition;
};

class PreferredTracker {
 public:
  // Requires p valid on g.
  PreferredTracker(const Topology& g, const SearchTree& p);

  const SearchTree& reference() const { return p_; }
  VertexId preferred(VertexId y) const { return pref_[y]; }

  // Sets the preferred child of every strict ancestor of x to the child
  // whose subtree contains x; for x itself, to its first child in canonical
  // order. Returns the nodes whose value was defined or changed, deepest
  // first.
  std::vector<PreferredEvent> record_access(VertexId x);

  long long total_changes() const { return changes_; }
  long long first_definitions() const { return firsts_; }
  const std::vector<long long>& per_node_changes() const { return per_node_; }

 private:
  SearchTree p_;
  std::vector<VertexId> pref_;
  std::vector<long long> per_node_;
  long long changes_ = 0;
  long long firsts_ = 0;
};

struct InterleaveResult {
  long long total = 0;  // I(G,P,X)
  std::vector<long long> per_node;
  long long first_definitions = 0;
  long long lower_bound = 0;  // floor(total / 2) - n, may be negative
};

InterleaveResult interleave_bound(const Topology& g, const SearchTree& p,
                                  std::span<const VertexId> xs);

}  // namespace gst
