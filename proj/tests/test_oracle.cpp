#include <gtest/gtest.h>

#include <random>
#include <unordered_set>

#include "mcgs/games.hpp"
#include "mcgs/oracle.hpp"

using namespace mcgs;

TEST(Oracle, TicTacToeIsDrawn) {
  TicTacToe g;
  const SolvedEntry e = negamax_solve(g, g.initial_state());
  EXPECT_EQ(e.outcome, Outcome::kDraw);
  EXPECT_EQ(e.distance, 9);
}

TEST(Oracle, TicTacToeTableSize) {
  TicTacToe g;
  EXPECT_EQ(solved_table(g).size(), 5478u);
}

TEST(Oracle, NimFollowsXor) {
  Nim g({3, 4, 5});
  EXPECT_EQ(negamax_solve(g, g.initial_state()).outcome, Outcome::kWin);
  const SolvedMap table = solved_table(g);
  std::vector<GameState> stack{g.initial_state()};
  std::unordered_set<StateKey, StateKeyHash> seen;
  while (!stack.empty()) {
    const GameState s = stack.back();
    stack.pop_back();
    if (!seen.insert(g.state_key(s)).second) continue;
    const auto it = table.find(g.state_key(s));
    ASSERT_NE(it, table.end());
    EXPECT_EQ(it->second.outcome, Nim::nim_sum(s) != 0 ? Outcome::kWin : Outcome::kLoss);
    if (g.is_terminal(s)) continue;
    for (ActionId a : g.legal_actions(s)) stack.push_back(g.apply(s, a));
  }
  EXPECT_EQ(seen.size(), table.size());
}

TEST(Oracle, LeftRightWinsInFifteen) {
  LeftRight g(16);
  const SolvedEntry e = negamax_solve(g, g.initial_state());
  EXPECT_EQ(e.outcome, Outcome::kWin);
  EXPECT_EQ(e.distance, 15);
}

TEST(Oracle, DistanceConventions) {
  TicTacToe g;
  // X a1 b1, O a2 b2, X to move: c1 wins at once.
  EXPECT_EQ(negamax_solve(g, play_line(g, {0, 3, 1, 4})), (SolvedEntry{Outcome::kWin, 1}));
  // After X a1 b1, O a2: X threatens c1 and O must lose; the loser stalls.
  const SolvedEntry lost = negamax_solve(g, play_line(g, {0, 3, 1, 4, 8}));
  EXPECT_EQ(lost.outcome, Outcome::kWin);
  Nim one({1});
  EXPECT_EQ(negamax_solve(one, one.initial_state()), (SolvedEntry{Outcome::kWin, 1}));
}

TEST(Oracle, NegamaxSelfConsistency) {
  TicTacToe g;
  OracleTable table(g);
  table.solve(g.initial_state());
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    GameState s = g.initial_state();
    const int depth = static_cast<int>(rng() % 8);
    for (int d = 0; d < depth && !g.is_terminal(s); ++d) {
      const auto acts = g.legal_actions(s);
      s = g.apply(s, acts[rng() % acts.size()]);
    }
    if (g.is_terminal(s)) continue;
    const SolvedEntry* e = table.find(g.state_key(s));
    ASSERT_NE(e, nullptr);
    Outcome best = Outcome::kLoss;
    for (ActionId a : g.legal_actions(s)) {
      const Outcome mine = negate(table.find(g.state_key(g.apply(s, a)))->outcome);
      if (static_cast<int>(mine) > static_cast<int>(best)) best = mine;
    }
    EXPECT_EQ(e->outcome, best);
  }
}

TEST(Oracle, NodeLimitIsEnforced) {
  TicTacToe g;
  EXPECT_THROW(negamax_solve(g, g.initial_state(), 100), Error);
}
