#pragma once

#include <string>
#include <vector>

#include "gst/core.hpp"

// Cost-accounted, legality-checked execution of GST-model programs. One
// finger; moving it to a parent or child and rotating at it cost one unit
// each. A search session starts with the finger at the current root and must
// touch its target before it can end.

namespace gst {

enum class OpKind : uint8_t { MoveToParent, MoveToChild, RotateHere };

struct UnitOp {
  OpKind kind;
  VertexId child = kNoVertex;  // MoveToChild only

  static UnitOp to_parent() { return {OpKind::MoveToParent, kNoVertex}; }
  static UnitOp to_child(VertexId c) { return {OpKind::MoveToChild, c}; }
  static UnitOp rotate() { return {OpKind::RotateHere, kNoVertex}; }
};

struct TraceEntry {
  int search;
  UnitOp op;
};

struct CostReport {
  std::vector<long long> per_search;
  long long total = 0;
  std::string to_json() const;
};

struct MachineError : GstError {
  using GstError::GstError;
};

class GstMachine {
 public:
  // Requires t0 valid on g; the finger starts at its root with zero cost.
  GstMachine(const Topology& g, SearchTree t0);

  const Topology& topology() const { return *g_; }
  const SearchTree& tree() const { return tree_; }
  VertexId root() const { return tree_.root; }
  VertexId finger() const { return finger_; }
  VertexId parent_of(VertexId v) const { return tree_.parent[v]; }
  long long total_cost() const { return total_cost_; }
  long long move_count() const { return moves_; }
  long long rotation_count() const { return rotations_; }
  bool in_session() const { return in_session_; }
  bool touched() const { return touched_; }
  int searches_begun() const { return static_cast<int>(targets_.size()); }

  void begin_search(VertexId target);
  long long end_search();  // returns the session's unit-op count

  void apply(UnitOp op);
  void move_to_parent() { apply(UnitOp::to_parent()); }
  void move_to_child(VertexId c) { apply(UnitOp::to_child(c)); }
  void rotate_here() { apply(UnitOp::rotate()); }
  // RotateHere with the transferring child precomputed by the caller
  // (bookkeeping; the op itself is identical and costs 1).
  void rotate_here_hinted(VertexId transfer);

  void set_record_trace(bool on) { record_trace_ = on; }
  bool record_trace() const { return record_trace_; }
  // Full validation after every op; effective only for n <= 512.
  void set_debug_validate(bool on);

  const std::vector<TraceEntry>& trace() const { return trace_; }
  // Line-oriented format: "S v" opens a search for v, "P" MoveToParent,
  // "C v" MoveToChild, "R" RotateHere, "E" end_search.
  std::string format_trace() const;
  CostReport cost_report() const;

 private:
  void pay(UnitOp op);
  void after_op();

  const Topology* g_;
  SearchTree tree_;
  VertexId finger_;
  long long total_cost_ = 0;
  long long moves_ = 0;
  long long rotations_ = 0;
  std::vector<TraceEntry> trace_;
  std::vector<long long> per_search_;
  std::vector<VertexId> targets_;
  bool in_session_ = false;
  bool touched_ = false;
  VertexId target_ = kNoVertex;
  long long session_start_ = 0;
  bool record_trace_ = true;
  bool debug_validate_ = false;
};

// Re-executes a trace document, failing on the first illegal op with its
// 1-based line position.
CostReport replay(const Topology& g, const SearchTree& t0,
                  const std::string& trace_text);

}  // namespace gst
