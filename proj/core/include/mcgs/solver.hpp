#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "mcgs/game.hpp"
#include "mcgs/graph_store.hpp"

namespace mcgs {

class OracleTable;

constexpr bool is_solved(SolverStatus s) { return s != SolverStatus::kUnknown; }
constexpr bool is_exact(SolverStatus s) {
  return s == SolverStatus::kWin || s == SolverStatus::kLoss || s == SolverStatus::kDraw;
}
constexpr bool is_tablebase(SolverStatus s) {
  return s == SolverStatus::kTbWin || s == SolverStatus::kTbLoss || s == SolverStatus::kTbDraw;
}
constexpr bool is_win(SolverStatus s) { return s == SolverStatus::kWin || s == SolverStatus::kTbWin; }
constexpr bool is_loss(SolverStatus s) { return s == SolverStatus::kLoss || s == SolverStatus::kTbLoss; }
constexpr bool is_draw(SolverStatus s) { return s == SolverStatus::kDraw || s == SolverStatus::kTbDraw; }

// Status as seen by the player choosing the move into the node.
SolverStatus parent_view(SolverStatus child, int num_players);
SolverStatus status_of(Outcome o);
// +1 / -1 / 0 for win / loss / draw (exact or tablebase).
double status_value(SolverStatus s);
// WIN/LOSS/DRAW ignoring the TB distinction; nullopt for UNKNOWN.
std::optional<Outcome> status_outcome(SolverStatus s);

// Endgame-oracle contract ("tablebase"). probe returns a TB_* status from the
// side to move's perspective, or nothing when the position is not covered.
class EndgameOracle {
 public:
  virtual ~EndgameOracle() = default;
  virtual std::string id() const = 0;
  virtual std::optional<SolverStatus> probe(const GameState& state) const = 0;
};

// Sprague-Grundy rule for Nim positions holding at most `max_stones` stones.
class NimXorOracle final : public EndgameOracle {
 public:
  explicit NimXorOracle(int max_stones = 1 << 20) : max_stones_(max_stones) {}
  std::string id() const override;
  std::optional<SolverStatus> probe(const GameState& state) const override;

 private:
  int max_stones_;
};

// Negamax table restricted to positions at ply >= min_ply.
class TableOracle final : public EndgameOracle {
 public:
  TableOracle(const Game& game, std::uint32_t min_ply);
  ~TableOracle() override;
  std::string id() const override;
  std::optional<SolverStatus> probe(const GameState& state) const override;

 private:
  const Game& game_;
  std::uint32_t min_ply_;
  std::unique_ptr<OracleTable> table_;
};

// "none" (returns nullptr), "nim-xor[:max_stones]", "table:<game>[@min_ply]".
std::unique_ptr<EndgameOracle> make_endgame_oracle(std::string_view id, const Game& game);

// Marks the edge refuted: q = -inf and prior = 0.
void prune(Edge& edge, double& prior);

// Re-derives `node`'s status from its children: prunes edges into children
// that are proven losses for the mover, and once the node itself becomes
// solved, propagates to every parent in the graph. Solved statuses and their
// END_IN_PLY are never rewritten. Returns true if `node` changed status.
bool solver_backprop(GraphStore& store, NodeId node, int num_players);

// Marks a freshly expanded node TB_* when the oracle covers it. The node keeps
// its evaluator value and remains searchable.
bool on_expand_probe(GraphStore& store, NodeId node, const GameState& state, const EndgameOracle* oracle);

// Move choice for a proven node: shortest win, longest loss, most-visited
// draw. Throws ContractViolation for UNKNOWN nodes or when no child carries
// the proof.
ActionId solved_move(const GraphStore& store, NodeId node, int num_players);

}  // namespace mcgs
