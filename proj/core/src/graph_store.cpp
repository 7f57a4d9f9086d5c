#include "mcgs/graph_store.hpp"

#include <algorithm>

namespace mcgs {

std::string_view to_string(SolverStatus s) noexcept {
  switch (s) {
    case SolverStatus::kUnknown: return "UNKNOWN";
    case SolverStatus::kWin: return "WIN";
    case SolverStatus::kLoss: return "LOSS";
    case SolverStatus::kDraw: return "DRAW";
    case SolverStatus::kTbWin: return "TB_WIN";
    case SolverStatus::kTbLoss: return "TB_LOSS";
    case SolverStatus::kTbDraw: return "TB_DRAW";
  }
  return "?";
}

std::pair<NodeId, bool> GraphStore::lookup_or_insert(const StateKey& key) {
  if (auto it = table_.find(key); it != table_.end()) return {it->second, true};
  if (max_nodes_ != 0 && nodes_.size() >= max_nodes_) {
    throw OutOfMemory("graph store capacity of " + std::to_string(max_nodes_) + " nodes exhausted");
  }
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.emplace_back().key = key;
  table_.emplace(key, id);
  return {id, false};
}

NodeId GraphStore::find(const StateKey& key) const {
  auto it = table_.find(key);
  return it == table_.end() ? kNoNode : it->second;
}

std::pair<NodeId, bool> GraphStore::connect(NodeId parent, std::uint32_t edge_index, const StateKey& key) {
  auto [child, existed] = lookup_or_insert(key);
  Edge& e = nodes_[parent].edges[edge_index];
  e.child = key;
  e.child_id = child;
  nodes_[child].parents.push_back(ParentRef{parent, edge_index});
  if (existed) ++joins_;
  return {child, existed};
}

void GraphStore::note_trajectory_buffer(std::size_t held) {
  trajectory_buffer_ = std::max(trajectory_buffer_, held);
}

MemoryReport GraphStore::memory_report() const {
  MemoryReport r;
  r.node_count = nodes_.size();
  for (const Node& n : nodes_) {
    r.edge_count += n.edges.size();
    r.prior_entry_count += n.priors.size();
  }
  r.trajectory_buffer_size = trajectory_buffer_;
  r.transposition_joins = joins_;
  r.tree_equivalent_node_count = nodes_.size() + joins_;
  r.approx_bytes = r.node_count * (sizeof(Node) + sizeof(std::pair<StateKey, NodeId>) + sizeof(void*)) +
                   r.edge_count * sizeof(Edge) + r.prior_entry_count * sizeof(double);
  return r;
}

void GraphStore::clear() {
  nodes_.clear();
  table_.clear();
  joins_ = 0;
  trajectory_buffer_ = 0;
}

void update_edge_sma(Edge& edge, double value) {
  edge.n += 1;
  if (edge.pruned()) return;
  edge.q = edge.n == 1 ? value : edge.q + (value - edge.q) / static_cast<double>(edge.n);
}

void update_node_value(Node& node, double value) {
  node.n += 1;
  node.v = node.n == 1 ? value : node.v + (value - node.v) / static_cast<double>(node.n);
}

}  // namespace mcgs
