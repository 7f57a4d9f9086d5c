#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mcgs/game.hpp"
#include "mcgs/graph_store.hpp"
#include "mcgs/search_config.hpp"

namespace mcgs {

using Rng = std::mt19937_64;

enum class BranchKind { kEpsGreedy, kForcing };

// Where a disconnected exploration trajectory starts: follow `path` (the
// most-visited line) from the root, then branch.
struct BranchPlan {
  BranchKind kind = BranchKind::kEpsGreedy;
  int depth = 0;
  std::vector<ActionId> path;
};

// Geometric layer choice: depth = ceil(-log2(1 - r2)) - 1, clamped to
// [0, max_depth], so P(depth = d) = 2^-(d+1) before clamping.
int sample_branch_depth(double r2, int max_depth);

// Actions of the most-visited line from `root` (ties go to the higher prior,
// i.e. the lower edge index). Stops at leaves, terminal and pending nodes.
std::vector<ActionId> best_known_path(const GraphStore& store, NodeId root);

// Draws the epsilon-greedy and forcing-move coins (independently, in that
// order). Returns a plan when either fires; epsilon-greedy wins if both do.
std::optional<BranchPlan> maybe_branch(Rng& rng, const SearchConfig& config, const GraphStore& store,
                                       NodeId root);

// Edge to expand at the branch node, in descending-prior order:
//  kForcing   first unexplored forcing move; when none is left the node's
//             checks_expanded flag is set and it falls through to
//  kEpsGreedy first unexplored move, else a uniformly random unpruned move.
std::optional<std::uint32_t> choose_branch_edge(GraphStore& store, NodeId node, BranchKind kind,
                                                const Game& game, const GameState& state, Rng& rng);

}  // namespace mcgs
