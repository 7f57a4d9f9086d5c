#pragma once

#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "mcgs/evaluator.hpp"
#include "mcgs/explore.hpp"
#include "mcgs/game.hpp"
#include "mcgs/graph_store.hpp"
#include "mcgs/policy.hpp"
#include "mcgs/search_config.hpp"
#include "mcgs/solver.hpp"

namespace mcgs {

// c_puct(s) = ln((sum_b N(s,b) + c_base + 1) / c_base) + c_init
double cpuct(double total_visits, double c_init, double c_base);

// Residual between the edge belief and the transposition target,
// Q(s,a) - V*(s').
double q_residual(double q, double v_star);

// Value that, fed into the SMA update of an edge holding `n` samples with
// mean `q`, moves the mean exactly onto `v_star`; clipped to [-1, 1].
double correction_value(std::uint32_t n, double q, double v_star);

struct TrajectoryStep {
  NodeId node = kNoNode;
  std::uint32_t edge = 0;
};

enum class TrajectoryEnd { kExpand, kEarlyStop, kTerminal, kCollision };

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  NodeId leaf = kNoNode;
  TrajectoryEnd end = TrajectoryEnd::kExpand;
  // Leaf value from the perspective of the side to move at `leaf`.
  double value = 0.0;
  GameState leaf_state;  // kExpand only
  bool exploration = false;
};

struct SearchStats {
  std::uint64_t simulations = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t early_stops = 0;
  std::uint64_t terminal_hits = 0;
  std::uint64_t collisions = 0;
  std::uint64_t explorations = 0;
  std::uint64_t discarded_branches = 0;
  std::uint64_t batches = 0;
};

struct ActionStats {
  ActionId action = 0;
  std::uint32_t visits = 0;
  double q = -1.0;
  double prior = 0.0;
  double policy = 0.0;
  bool pruned = false;
  SolverStatus child_status = SolverStatus::kUnknown;
};

struct SearchResult {
  std::vector<ActionStats> root_actions;
  MovePolicy policy;
  std::optional<ActionId> selected;  // empty for terminal roots
  std::vector<ActionId> principal_variation;
  SolverStatus root_status = SolverStatus::kUnknown;
  std::optional<int> root_end_in_ply;
  double root_value = 0.0;
  std::uint32_t root_visits = 0;
  SearchStats stats;
  MemoryReport memory;
  double wall_ms = 0.0;
  bool out_of_memory = false;
};

// Monte-Carlo graph search over one Game. The instance owns its graph and
// keeps it between calls, so consecutive searches along a game reuse the
// explored subgraph.
class Search {
 public:
  Search(const Game& game, const Evaluator& evaluator, SearchConfig config,
         const EndgameOracle* endgame = nullptr);

  // Runs until the budget is spent or the root is proven. A root equal to the
  // current one (see advance) is reused; any other state restarts from an
  // empty graph.
  SearchResult run(const GameState& root_state);

  // Moves the root along `played`. The new root keeps its statistics when the
  // resulting position is already in the graph.
  NodeId advance(std::span<const ActionId> played);

  // Building blocks, exposed for tests and tools.
  std::uint32_t puct_select(NodeId node) const;
  void expand(NodeId node, const GameState& state, const Evaluation& evaluation);
  Trajectory select_and_expand(NodeId start, const GameState& state,
                               std::optional<std::uint32_t> forced_edge = std::nullopt);
  void backpropagate(const Trajectory& trajectory);
  std::optional<Trajectory> execute_branch(const BranchPlan& plan, Rng& rng);

  // Stand-alone root setup without running the loop.
  NodeId set_root(const GameState& state);

  const GraphStore& store() const { return store_; }
  GraphStore& store() { return store_; }
  NodeId root() const { return root_; }
  const GameState& root_state() const { return root_state_; }
  const SearchConfig& config() const { return config_; }
  const Game& game() const { return game_; }
  const SearchStats& stats() const { return stats_; }
  StateKey child_key(const StateKey& parent, const GameState& child_state, ActionId action) const;

 private:
  struct Worker;

  void worker_loop(Worker& w);
  bool finished_locked() const;
  bool budget_allows_locked(std::size_t reserved_evals, std::size_t reserved_sims) const;
  Trajectory simulate_locked(Worker& w);
  void release_virtual_loss(const Trajectory& t);
  void expand_root_locked();
  void apply_dirichlet(Node& root);
  SearchResult make_result();

  const Game& game_;
  const Evaluator& evaluator_;
  SearchConfig config_;
  const EndgameOracle* endgame_;
  int players_;
  double sign_;

  GraphStore store_;
  NodeId root_ = kNoNode;
  GameState root_state_;
  Rng rng_;

  mutable std::mutex mu_;
  SearchStats stats_;
  std::size_t in_flight_evals_ = 0;
  std::size_t zero_eval_batches_ = 0;
  bool out_of_memory_ = false;
  std::chrono::steady_clock::time_point started_;
};

}  // namespace mcgs
