#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcgs/types.hpp"

namespace mcgs {

// Value type for a position. The meaning of `board` belongs to the game that
// produced the state; the engine only copies it around.
struct GameState {
  std::vector<std::int8_t> board;
  std::int8_t to_move = 0;
  std::uint32_t ply = 0;

  friend bool operator==(const GameState&, const GameState&) = default;
};

// Environment contract. Implementations are immutable after construction and
// every method is a pure function of its arguments, so a Game may be shared
// freely between threads.
class Game {
 public:
  virtual ~Game() = default;

  // Canonical id, e.g. "tictactoe", "nim:3,4,5", "leftright:16".
  virtual std::string id() const = 0;
  // 1 for puzzles (values never change sign), 2 for zero-sum two-player games.
  virtual int num_players() const = 0;

  virtual GameState initial_state() const = 0;

  // Deterministic order, no duplicates. Throws ContractViolation on terminal
  // states.
  virtual std::vector<ActionId> legal_actions(const GameState& state) const = 0;

  // Throws ContractViolation naming the action when it is not legal.
  virtual GameState apply(const GameState& state, ActionId action) const = 0;

  // Present iff terminal; from the perspective of the side to move.
  virtual std::optional<Outcome> terminal_value(const GameState& state) const = 0;

  // Zobrist hash of the position alone (no step counter).
  virtual std::uint64_t position_hash(const GameState& state) const = 0;

  // "Check-like" moves explored first by the forcing-move constraint.
  virtual bool is_forcing(const GameState& state, ActionId action) const = 0;

  virtual std::string action_name(ActionId action) const;
  virtual std::string describe(const GameState& state) const;

  // Position hash with the ply folded in as an extra Zobrist feature.
  StateKey state_key(const GameState& state) const;

  bool is_terminal(const GameState& state) const { return terminal_value(state).has_value(); }

  // -1 when values flip sign between consecutive plies, +1 otherwise.
  double perspective_sign() const { return num_players() == 2 ? -1.0 : 1.0; }
};

std::uint64_t ply_feature(std::uint32_t ply);

// Parses "tictactoe", "nim:3,4,5", "leftright:16". Throws ConfigError.
std::unique_ptr<Game> make_game(std::string_view id);

// Replays a sequence of actions from the initial state.
GameState play_line(const Game& game, const std::vector<ActionId>& actions);

}  // namespace mcgs
