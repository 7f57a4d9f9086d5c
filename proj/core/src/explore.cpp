#include "mcgs/explore.hpp"

#include <algorithm>
#include <cmath>

namespace mcgs {

int sample_branch_depth(double r2, int max_depth) {
  const double raw = std::ceil(-std::log2(1.0 - r2)) - 1.0;
  const int depth = raw < 0.0 ? 0 : static_cast<int>(std::min(raw, 1e9));
  return std::clamp(depth, 0, std::max(max_depth, 0));
}

std::vector<ActionId> best_known_path(const GraphStore& store, NodeId root) {
  std::vector<ActionId> path;
  NodeId id = root;
  while (id != kNoNode) {
    const Node& node = store.node(id);
    if (!node.expanded || node.terminal) break;
    int best = -1;
    for (std::size_t i = 0; i < node.edges.size(); ++i) {
      const Edge& e = node.edges[i];
      if (e.pruned() || e.n == 0 || e.child_id == kNoNode) continue;
      if (best < 0 || e.n > node.edges[static_cast<std::size_t>(best)].n) best = static_cast<int>(i);
    }
    if (best < 0) break;
    const Edge& e = node.edges[static_cast<std::size_t>(best)];
    const Node& child = store.node(e.child_id);
    if (!child.expanded || child.terminal || child.pending) break;
    path.push_back(e.action);
    id = e.child_id;
  }
  return path;
}

std::optional<BranchPlan> maybe_branch(Rng& rng, const SearchConfig& config, const GraphStore& store,
                                       NodeId root) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::optional<BranchKind> kind;
  if (config.explore && config.eps_greedy > 0.0) {
    if (unit(rng) <= config.eps_greedy) kind = BranchKind::kEpsGreedy;
  }
  if (config.check_enhance && config.eps_checks > 0.0) {
    if (unit(rng) <= config.eps_checks && !kind) kind = BranchKind::kForcing;
  }
  if (!kind) return std::nullopt;

  BranchPlan plan;
  plan.kind = *kind;
  plan.path = best_known_path(store, root);
  plan.depth = sample_branch_depth(unit(rng), static_cast<int>(plan.path.size()));
  plan.path.resize(static_cast<std::size_t>(plan.depth));
  return plan;
}

std::optional<std::uint32_t> choose_branch_edge(GraphStore& store, NodeId id, BranchKind kind,
                                                const Game& game, const GameState& state, Rng& rng) {
  Node& node = store.node(id);
  auto unexplored = [&](const Edge& e) {
    if (e.pruned() || e.n != 0 || e.virtual_loss != 0) return false;
    return e.child_id == kNoNode || !store.node(e.child_id).pending;
  };

  if (kind == BranchKind::kForcing && !node.checks_expanded) {
    for (std::size_t i = 0; i < node.edges.size(); ++i) {
      if (unexplored(node.edges[i]) && game.is_forcing(state, node.edges[i].action)) {
        return static_cast<std::uint32_t>(i);
      }
    }
    node.checks_expanded = true;
  }
  for (std::size_t i = 0; i < node.edges.size(); ++i) {
    if (unexplored(node.edges[i])) return static_cast<std::uint32_t>(i);
  }

  std::vector<std::uint32_t> live;
  for (std::size_t i = 0; i < node.edges.size(); ++i) {
    if (!node.edges[i].pruned()) live.push_back(static_cast<std::uint32_t>(i));
  }
  if (live.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, live.size() - 1);
  return live[pick(rng)];
}

}  // namespace mcgs
