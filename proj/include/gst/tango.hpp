#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gst/machine.hpp"
#include "gst/steiner.hpp"

// The online competitive structure. A static Steiner-closed reference tree P
// is partitioned into preferred paths; each path's node set S contracts to a
// minor tree G(S), maintained as a forest of solid paths stored as splay
// trees embedded directly in the composite search tree held by the machine.
// Every structural change is realized as machine unit ops, so the composite
// is a valid search tree on G at all times and all costs are accounted.

namespace gst {

// A preferred path is identified by its head: the unique path node that is
// not its reference parent's preferred child (or the reference root).
using PathId = VertexId;

struct SearchStats {
  VertexId target = kNoVertex;
  long long cost = 0;           // unit ops in this session
  long long walk_cost = 0;      // descent portion of cost
  long long path_changes = 0;   // preferred-child switches performed
  long long paths_touched = 0;  // path_changes + 1
  long long wall_ns = 0;        // bookkeeping wall time
};

struct AuditViolation {
  std::string what;
};

class TangoTree {
 public:
  explicit TangoTree(const Topology& g, bool debug_audit = false);

  SearchStats search(VertexId target);

  // Preferred-path surface, also used by the verification driver.
  PathId path_of(VertexId v) const;
  std::vector<VertexId> path_nodes(PathId p) const;
  bool is_path_head(VertexId v) const { return is_head_[v]; }
  VertexId path_tail(PathId p) const;
  // Splits path p into reference depths < d and >= d; the top keeps the id.
  // Leaves the preferred child at the split node transiently undefined.
  std::pair<PathId, PathId> cut_path(PathId p, int d);
  // Joins top and bottom where tail(top) is the reference parent of bottom.
  PathId merge_paths(PathId top, PathId bottom);

  std::optional<AuditViolation> audit() const;

  const Topology& topology() const { return *g_; }
  const SearchTree& reference() const { return ref_; }
  const GstMachine& machine() const { return *machine_; }
  GstMachine& machine() { return *machine_; }
  const SearchTree& initial_tree() const { return initial_tree_; }

  int reference_depth(VertexId v) const { return ref_depth_[v]; }
  VertexId preferred(VertexId v) const { return pref_[v]; }
  long long total_path_changes() const { return total_changes_; }
  long long searches_run() const { return searches_; }
  void set_debug_audit(bool on) { debug_audit_ = on; }

 private:
  struct DetachRec {
    VertexId a1 = kNoVertex, b1 = kNoVertex;  // anchor in the cut-off side's
    VertexId a2 = kNoVertex, b2 = kNoVertex;  // complement, partner inside it
  };

  // --- static reference bookkeeping
  int rd(VertexId v) const { return ref_depth_[v]; }
  bool member(VertexId u, VertexId head, VertexId tail) const {
    return u != kNoVertex && rd(u) >= rd(head) && rd(u) <= rd(tail) &&
           ref_anc_[tail][rd(u)] == u;
  }
  VertexId deepest_common(VertexId x, VertexId head, VertexId tail) const;

  // --- embedded splay layer (solid paths of the minors)
  void push_down(VertexId v);
  VertexId bst_root_of(VertexId v) const;
  VertexId leftmost(VertexId r);
  void finger_to(VertexId v);
  VertexId rotate_up(VertexId v);  // one machine rotation, mirrors the BST
  void splay(VertexId v);
  void access(VertexId v, VertexId head, VertexId tail,
              VertexId stop_at = kNoVertex);
  void evert(VertexId v, VertexId head, VertexId tail);
  void expose_path(VertexId a, VertexId b, VertexId head, VertexId tail);
  VertexId fragment_root_of(VertexId v, VertexId head, VertexId tail) const;

  // --- minor bookkeeping
  void minor_add(VertexId a, VertexId b);
  void minor_remove(VertexId a, VertexId b);
  void toward_update_after_rotate(VertexId v, VertexId p, VertexId moved);
  VertexId transfer_hint(VertexId v, VertexId p) const;

  // --- preferred path operations (must run inside a machine session)
  std::pair<VertexId, VertexId> cut_internal(VertexId head, int d);
  void merge_internal(VertexId head, VertexId bottom_head);

  template <typename F>
  auto with_session(F&& f);

  const Topology* g_;
  SearchTree ref_;
  VertexId ref_root_;
  std::vector<VertexId> ref_par_;
  std::vector<int> ref_depth_;
  std::vector<std::vector<VertexId>> ref_anc_;  // ancestors by depth

  std::vector<VertexId> anchor1_, anchor2_;    // region anchors, by depth
  std::vector<VertexId> witness1_, witness2_;  // their edge endpoints inside

  std::vector<VertexId> pref_;
  std::vector<VertexId> tail_of_;
  std::vector<char> is_head_;
  std::vector<DetachRec> detach_rec_;
  std::vector<std::vector<VertexId>> minor_adj_;

  std::vector<VertexId> bst_par_, bst_l_, bst_r_;
  std::vector<char> flip_;

  std::vector<std::vector<VertexId>> toward_;  // per G-neighbor: child holding it
  mutable std::vector<int> nav_mark_;
  mutable std::vector<VertexId> nav_child_;
  mutable int nav_epoch_ = 0;

  GstMachine& M() { return *machine_; }
  const GstMachine& M() const { return *machine_; }
  std::optional<GstMachine> machine_;  // built after the composite tree
  SearchTree initial_tree_;
  long long total_changes_ = 0;
  long long searches_ = 0;
  bool debug_audit_ = false;
};

}  // namespace gst
