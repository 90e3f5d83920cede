#include "gst/interleave.hpp"

namespace gst {

PreferredTracker::PreferredTracker(const Topology& g, const SearchTree& p) {
  if (auto bad = validate_search_tree(g, p))
    throw InvalidTreeError("reference tree invalid at node " +
                           std::to_string(bad->node) + ": " + bad->detail);
  p_ = p;
  pref_.assign(p_.n(), kNoVertex);
  per_node_.assign(p_.n(), 0);
}

std::vector<PreferredEvent> PreferredTracker::record_access(VertexId x) {
  std::vector<PreferredEvent> events;
  auto set_pref = [&](VertexId y, VertexId child) {
    VertexId old = pref_[y];
    if (old == child) return;
    pref_[y] = child;
    if (old == kNoVertex) {
      ++firsts_;
      events.push_back({y, true});
    } else {
      ++changes_;
      ++per_node_[y];
      events.push_back({y, false});
    }
  };
  if (!p_.children[x].empty()) set_pref(x, p_.children[x][0]);
  VertexId prev = x;
  for (VertexId y = p_.parent[x]; y != kNoVertex; y = p_.parent[y]) {
    set_pref(y, prev);
    prev = y;
  }
  return events;
}

InterleaveResult interleave_bound(const Topology& g, const SearchTree& p,
                                  std::span<const VertexId> xs) {
  PreferredTracker tracker(g, p);
  for (VertexId x : xs) {
    g.check_vertex(x);
    tracker.record_access(x);
  }
  InterleaveResult r;
  r.total = tracker.total_changes();
  r.per_node = tracker.per_node_changes();
  r.first_definitions = tracker.first_definitions();
  r.lower_bound = r.total / 2 - g.n();
  return r;
}

}  // namespace gst
