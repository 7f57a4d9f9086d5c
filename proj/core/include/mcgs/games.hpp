#pragma once

#include <array>
#include <vector>

#include "mcgs/game.hpp"

namespace mcgs {

// 3x3 noughts and crosses. Cells 0..8 row-major; +1 = X (moves first), -1 = O.
class TicTacToe final : public Game {
 public:
  static constexpr std::array<std::array<int, 3>, 8> kLines{{
      {0, 1, 2}, {3, 4, 5}, {6, 7, 8},
      {0, 3, 6}, {1, 4, 7}, {2, 5, 8},
      {0, 4, 8}, {2, 4, 6},
  }};

  TicTacToe();

  std::string id() const override { return "tictactoe"; }
  int num_players() const override { return 2; }
  GameState initial_state() const override;
  std::vector<ActionId> legal_actions(const GameState& state) const override;
  GameState apply(const GameState& state, ActionId action) const override;
  std::optional<Outcome> terminal_value(const GameState& state) const override;
  std::uint64_t position_hash(const GameState& state) const override;
  // True when the placed mark forms two-in-a-row with the third cell empty.
  bool is_forcing(const GameState& state, ActionId action) const override;
  std::string action_name(ActionId action) const override;
  std::string describe(const GameState& state) const override;

  static std::int8_t mark_of(std::int8_t to_move) { return to_move == 0 ? 1 : -1; }

 private:
  std::array<std::array<std::uint64_t, 2>, 9> zobrist_{};
};

// Normal-play Nim: the player who takes the last stone wins. Action ids
// encode (pile, take) as pile * kTakeStride + (take - 1).
class Nim final : public Game {
 public:
  static constexpr ActionId kTakeStride = 128;

  explicit Nim(std::vector<int> piles);

  std::string id() const override;
  int num_players() const override { return 2; }
  GameState initial_state() const override;
  std::vector<ActionId> legal_actions(const GameState& state) const override;
  GameState apply(const GameState& state, ActionId action) const override;
  std::optional<Outcome> terminal_value(const GameState& state) const override;
  std::uint64_t position_hash(const GameState& state) const override;
  // True when the move leaves exactly one non-empty pile.
  bool is_forcing(const GameState& state, ActionId action) const override;
  std::string action_name(ActionId action) const override;
  std::string describe(const GameState& state) const override;

  static ActionId encode(int pile, int take) { return pile * kTakeStride + (take - 1); }
  static int pile_of(ActionId a) { return a / kTakeStride; }
  static int take_of(ActionId a) { return a % kTakeStride + 1; }

  const std::vector<int>& piles() const { return piles_; }
  static int nim_sum(const GameState& state);

 private:
  std::vector<int> piles_;
  std::vector<std::vector<std::uint64_t>> zobrist_;
};

// Single-player chain of `length` cells. The token starts on cell 0; RIGHT
// advances it and reaching cell length-1 scores +1, LEFT ends the episode at
// -1. board = {cell, result} with result 0 while running.
class LeftRight final : public Game {
 public:
  static constexpr ActionId kLeft = 0;
  static constexpr ActionId kRight = 1;

  explicit LeftRight(int length);

  std::string id() const override;
  int num_players() const override { return 1; }
  GameState initial_state() const override;
  std::vector<ActionId> legal_actions(const GameState& state) const override;
  GameState apply(const GameState& state, ActionId action) const override;
  std::optional<Outcome> terminal_value(const GameState& state) const override;
  std::uint64_t position_hash(const GameState& state) const override;
  bool is_forcing(const GameState&, ActionId) const override { return false; }
  std::string action_name(ActionId action) const override;
  std::string describe(const GameState& state) const override;

  int length() const { return length_; }

 private:
  int length_;
};

}  // namespace mcgs
