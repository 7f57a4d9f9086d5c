#include "mcgs/oracle.hpp"

#include <algorithm>

namespace mcgs {

OracleTable::OracleTable(const Game& game, std::size_t node_limit)
    : game_(game), node_limit_(node_limit) {}

const SolvedEntry* OracleTable::find(const StateKey& key) const {
  auto it = table_.find(key);
  return it == table_.end() ? nullptr : &it->second;
}

SolvedEntry OracleTable::solve(const GameState& state) {
  const StateKey key = game_.state_key(state);
  if (auto it = table_.find(key); it != table_.end()) return it->second;
  if (table_.size() >= node_limit_) {
    throw Error("oracle node limit of " + std::to_string(node_limit_) + " exceeded on " + game_.id());
  }

  SolvedEntry entry;
  if (auto t = game_.terminal_value(state)) {
    entry = {*t, 0};
  } else {
    const bool flip = game_.num_players() == 2;
    int best_win = -1;   // shortest winning line
    int best_draw = -1;  // shortest drawing line
    int worst_loss = -1; // longest losing line
    for (ActionId a : game_.legal_actions(state)) {
      SolvedEntry child = solve(game_.apply(state, a));
      const Outcome mine = flip ? negate(child.outcome) : child.outcome;
      const int d = child.distance + 1;
      switch (mine) {
        case Outcome::kWin: best_win = best_win < 0 ? d : std::min(best_win, d); break;
        case Outcome::kDraw: best_draw = best_draw < 0 ? d : std::min(best_draw, d); break;
        case Outcome::kLoss: worst_loss = std::max(worst_loss, d); break;
      }
    }
    if (best_win >= 0) entry = {Outcome::kWin, best_win};
    else if (best_draw >= 0) entry = {Outcome::kDraw, best_draw};
    else entry = {Outcome::kLoss, worst_loss};
  }
  table_.emplace(key, entry);
  return entry;
}

SolvedEntry negamax_solve(const Game& game, const GameState& state, std::size_t node_limit) {
  OracleTable table(game, node_limit);
  return table.solve(state);
}

SolvedMap solved_table(const Game& game, std::size_t node_limit) {
  OracleTable table(game, node_limit);
  table.solve(game.initial_state());
  return table.entries();
}

}  // namespace mcgs
