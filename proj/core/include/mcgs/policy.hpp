#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mcgs/explore.hpp"
#include "mcgs/graph_store.hpp"
#include "mcgs/search_config.hpp"

namespace mcgs {

// Root child statistics, the only input move selection needs.
struct RootChild {
  ActionId action = 0;
  std::uint32_t visits = 0;
  double q = -1.0;
  double prior = 0.0;
  bool pruned = false;
};

std::vector<RootChild> root_children(const Node& root);

struct MovePolicy {
  std::vector<ActionId> actions;
  std::vector<double> pi;
  ActionId chosen = 0;
  bool boosted = false;
  bool solver_override = false;
};

// pi(a) proportional to N(a)^(1/tau) over unpruned children. tau == 0 is the
// one-hot argmax (ties: higher Q, then lower action id). With no visited
// child the normalized priors are returned instead.
std::vector<double> visit_policy(std::span<const RootChild> children, double tau);

// Index ranking by visits desc, Q desc, action asc; pruned children last.
std::vector<std::size_t> rank_by_visits(std::span<const RootChild> children);

struct BoostResult {
  std::vector<double> pi;
  bool boosted = false;
};

// If the second most visited move has the higher Q, add
// q_weight * (Q_beta - Q_alpha) * pi(alpha) to pi(beta) and renormalize.
// Applied once to the original (alpha, beta) pair.
BoostResult q_boost(std::span<const double> pi, std::span<const RootChild> children, double q_weight);

// Final move: a proven root plays its solver move; otherwise the temperature
// policy (optionally boosted) is argmaxed (tau == 0) or sampled. Throws
// ContractViolation for terminal or childless roots.
MovePolicy select_move(const GraphStore& store, NodeId root, const SearchConfig& config, int num_players,
                       Rng& rng);

}  // namespace mcgs
