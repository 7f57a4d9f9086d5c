#pragma once

#include <cstddef>
#include <unordered_map>

#include "mcgs/game.hpp"

namespace mcgs {

// Exact game-theoretic value of a position for the side to move. `distance`
// follows the END_IN_PLY convention: plies to the end of the game when the
// winner hurries (minimum) and the loser stalls (maximum); for draws, the
// shortest drawing line.
struct SolvedEntry {
  Outcome outcome = Outcome::kDraw;
  int distance = 0;

  friend bool operator==(const SolvedEntry&, const SolvedEntry&) = default;
};

using SolvedMap = std::unordered_map<StateKey, SolvedEntry, StateKeyHash>;

inline constexpr std::size_t kDefaultOracleNodeLimit = 2'000'000;

// Memoized exhaustive negamax. Intended for small games only; exceeding
// `node_limit` distinct positions throws Error.
class OracleTable {
 public:
  explicit OracleTable(const Game& game, std::size_t node_limit = kDefaultOracleNodeLimit);

  SolvedEntry solve(const GameState& state);
  const SolvedEntry* find(const StateKey& key) const;

  const SolvedMap& entries() const { return table_; }
  std::size_t size() const { return table_.size(); }
  const Game& game() const { return game_; }

 private:
  const Game& game_;
  std::size_t node_limit_;
  SolvedMap table_;
};

SolvedEntry negamax_solve(const Game& game, const GameState& state,
                          std::size_t node_limit = kDefaultOracleNodeLimit);

// Complete table over every position reachable from the initial state.
SolvedMap solved_table(const Game& game, std::size_t node_limit = kDefaultOracleNodeLimit);

}  // namespace mcgs
