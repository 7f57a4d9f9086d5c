#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mcgs/types.hpp"

namespace mcgs {

// Proven status of a node, from the perspective of its side to move. TB_*
// states come from an endgame oracle rather than from terminal positions.
enum class SolverStatus : std::uint8_t { kUnknown, kWin, kLoss, kDraw, kTbWin, kTbLoss, kTbDraw };

std::string_view to_string(SolverStatus s) noexcept;

inline constexpr double kPrunedQ = -std::numeric_limits<double>::infinity();

struct Edge {
  ActionId action = 0;
  double q = -1.0;  // kPrunedQ once the solver refutes the move
  std::uint32_t n = 0;
  std::uint32_t virtual_loss = 0;
  std::optional<StateKey> child;
  NodeId child_id = kNoNode;  // resolution of `child` in the owning store

  bool pruned() const { return q == kPrunedQ; }
};

struct ParentRef {
  NodeId node = kNoNode;
  std::uint32_t edge = 0;
};

struct Node {
  StateKey key;
  double v = 0.0;
  std::uint32_t n = 0;
  std::uint32_t virtual_loss = 0;
  // Stored once per node, aligned with `edges`.
  std::vector<double> priors;
  std::vector<Edge> edges;
  std::vector<ParentRef> parents;

  SolverStatus status = SolverStatus::kUnknown;
  std::optional<int> end_in_ply;
  std::uint32_t unknown_children = 0;
  bool checks_expanded = false;

  bool expanded = false;
  bool pending = false;  // leaf selected, evaluation in flight
  std::optional<Outcome> terminal;

  bool is_transposition() const { return parents.size() > 1; }
};

struct MemoryReport {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t prior_entry_count = 0;
  std::size_t trajectory_buffer_size = 0;
  std::size_t tree_equivalent_node_count = 0;
  std::size_t transposition_joins = 0;
  std::size_t approx_bytes = 0;
};

// Owns every node and the transposition table of one search. Node ids stay
// valid (and references stable) for the store's lifetime.
class GraphStore {
 public:
  explicit GraphStore(std::size_t max_nodes = 0) : max_nodes_(max_nodes) {}

  // Idempotent per key; `.second` is true when the node already existed.
  // Throws OutOfMemory when the store is full.
  std::pair<NodeId, bool> lookup_or_insert(const StateKey& key);
  NodeId find(const StateKey& key) const;

  // Points edge `edge_index` of `parent` at the node for `key`, creating it
  // if needed, and records the back-reference. Joining an existing node is a
  // transposition join.
  std::pair<NodeId, bool> connect(NodeId parent, std::uint32_t edge_index, const StateKey& key);

  Node& node(NodeId id) { return nodes_[id]; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }
  bool full() const { return max_nodes_ != 0 && nodes_.size() >= max_nodes_; }

  void note_trajectory_buffer(std::size_t held);
  MemoryReport memory_report() const;
  std::size_t transposition_joins() const { return joins_; }

  void clear();

 private:
  std::size_t max_nodes_;
  std::deque<Node> nodes_;
  std::unordered_map<StateKey, NodeId, StateKeyHash> table_;
  std::size_t joins_ = 0;
  std::size_t trajectory_buffer_ = 0;
};

// Simple moving average update: q' = q + (value - q) / (n + 1), n' = n + 1.
// The q_init value of a never-updated edge is a selection prior, not a sample,
// so the first update overwrites it. Pruned edges only count the visit.
void update_edge_sma(Edge& edge, double value);
void update_node_value(Node& node, double value);

}  // namespace mcgs
