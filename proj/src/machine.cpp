#include "gst/machine.hpp"

#include <cassert>
#include <sstream>

namespace gst {

namespace {
constexpr int kDebugValidateMaxN = 512;
}

std::string CostReport::to_json() const {
  std::ostringstream out;
  out << "{\"per_search\":[";
  for (size_t i = 0; i < per_search.size(); ++i) {
    if (i) out << ",";
    out << per_search[i];
  }
  out << "],\"total\":" << total << "}";
  return out.str();
}

GstMachine::GstMachine(const Topology& g, SearchTree t0) : g_(&g) {
  if (auto bad = validate_search_tree(g, t0))
    throw InvalidTreeError("initial tree invalid at node " +
                           std::to_string(bad->node) + ": " + bad->detail);
  tree_ = std::move(t0);
  finger_ = tree_.root;
}

void GstMachine::set_debug_validate(bool on) {
  debug_validate_ = on && g_->n() <= kDebugValidateMaxN;
}

void GstMachine::begin_search(VertexId target) {
  if (in_session_) throw MachineError("begin_search inside an open session");
  g_->check_vertex(target);
  in_session_ = true;
  target_ = target;
  finger_ = tree_.root;  // zero-cost reset per the session convention
  touched_ = (finger_ == target_);
  session_start_ = total_cost_;
  targets_.push_back(target);
}

long long GstMachine::end_search() {
  if (!in_session_) throw MachineError("end_search without a session");
  if (!touched_)
    throw MachineError("end_search before touching target " +
                       std::to_string(target_));
  in_session_ = false;
  long long cost = total_cost_ - session_start_;
  per_search_.push_back(cost);
  return cost;
}

void GstMachine::pay(UnitOp op) {
  ++total_cost_;
  if (op.kind == OpKind::RotateHere)
    ++rotations_;
  else
    ++moves_;
  if (record_trace_)
    trace_.push_back({static_cast<int>(targets_.size()) - 1, op});
}

void GstMachine::after_op() {
  if (finger_ == target_) touched_ = true;
  if (debug_validate_) {
    if (auto bad = validate_search_tree(*g_, tree_))
      throw std::logic_error("machine tree invalid at node " +
                             std::to_string(bad->node) + ": " + bad->detail);
  }
}

void GstMachine::apply(UnitOp op) {
  if (!in_session_) throw MachineError("unit op outside a search session");
  switch (op.kind) {
    case OpKind::MoveToParent: {
      VertexId p = tree_.parent[finger_];
      if (p == kNoVertex) throw MachineError("MoveToParent at the root");
      pay(op);
      finger_ = p;
      break;
    }
    case OpKind::MoveToChild: {
      VertexId c = op.child;
      if (c < 0 || c >= g_->n() || tree_.parent[c] != finger_)
        throw MachineError("MoveToChild to a non-child");
      pay(op);
      finger_ = c;
      break;
    }
    case OpKind::RotateHere: {
      if (tree_.parent[finger_] == kNoVertex)
        throw MachineError("RotateHere at the root");
      pay(op);
      rotate(*g_, tree_, finger_);  // finger follows the rotated vertex
      break;
    }
  }
  after_op();
}

void GstMachine::rotate_here_hinted(VertexId transfer) {
  if (!in_session_) throw MachineError("unit op outside a search session");
  if (tree_.parent[finger_] == kNoVertex)
    throw MachineError("RotateHere at the root");
  pay(UnitOp::rotate());
  rotate_hinted(*g_, tree_, finger_, transfer);
  after_op();
}

std::string GstMachine::format_trace() const {
  if (in_session_) throw MachineError("format_trace with an open session");
  if (!record_trace_ && total_cost_ > 0)
    throw MachineError("trace recording was disabled");
  std::ostringstream out;
  size_t i = 0;
  for (int s = 0; s < static_cast<int>(targets_.size()); ++s) {
    out << "S " << targets_[s] << "\n";
    for (; i < trace_.size() && trace_[i].search == s; ++i) {
      const UnitOp& op = trace_[i].op;
      switch (op.kind) {
        case OpKind::MoveToParent: out << "P\n"; break;
        case OpKind::MoveToChild: out << "C " << op.child << "\n"; break;
        case OpKind::RotateHere: out << "R\n"; break;
      }
    }
    out << "E\n";
  }
  return out.str();
}

CostReport GstMachine::cost_report() const {
  CostReport r;
  r.per_search = per_search_;
  for (long long c : per_search_) r.total += c;
  return r;
}

CostReport replay(const Topology& g, const SearchTree& t0,
                  const std::string& trace_text) {
  GstMachine m(g, t0);
  m.set_record_trace(false);
  std::istringstream in(trace_text);
  std::string line;
  long long pos = 0;
  auto fail = [&](const std::string& why) {
    throw MachineError("replay: " + why + " at line " + std::to_string(pos));
  };
  while (std::getline(in, line)) {
    ++pos;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    try {
      if (tag == "S") {
        VertexId v;
        if (!(ls >> v)) fail("malformed S line");
        m.begin_search(v);
      } else if (tag == "P") {
        m.move_to_parent();
      } else if (tag == "C") {
        VertexId v;
        if (!(ls >> v)) fail("malformed C line");
        m.move_to_child(v);
      } else if (tag == "R") {
        m.rotate_here();
      } else if (tag == "E") {
        m.end_search();
      } else {
        fail("unknown op '" + tag + "'");
      }
    } catch (const MachineError& e) {
      fail(e.what());
    } catch (const GstError& e) {
      fail(e.what());
    }
  }
  if (m.in_session()) {
    ++pos;
    fail("trace ends inside a session");
  }
  return m.cost_report();
}

}  // namespace gst
