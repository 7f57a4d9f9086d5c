#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "mcgs/games.hpp"
#include "mcgs/search.hpp"

using namespace mcgs;

namespace {

Evaluation uniform_eval(const Game& g, const GameState& s, double value = 0.0) {
  const auto n = g.legal_actions(s).size();
  return Evaluation{value, std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

}  // namespace

TEST(BranchDepth, Examples) {
  EXPECT_EQ(sample_branch_depth(0.3, 10), 0);
  EXPECT_EQ(sample_branch_depth(0.75, 10), 1);
  EXPECT_EQ(sample_branch_depth(0.0, 10), 0);
  EXPECT_EQ(sample_branch_depth(0.9, 10), 3);
  EXPECT_EQ(sample_branch_depth(0.999, 2), 2);
  EXPECT_EQ(sample_branch_depth(0.75, 0), 0);
}

TEST(BranchDepth, GeometricFrequencies) {
  Rng rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::array<int, 8> counts{};
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(sample_branch_depth(unit(rng), 7))];
  EXPECT_NEAR(counts[0] / double(draws), 0.5, 0.01);
  EXPECT_NEAR(counts[1] / double(draws), 0.25, 0.01);
  EXPECT_NEAR(counts[2] / double(draws), 0.125, 0.01);
}

TEST(MaybeBranch, Rates) {
  TicTacToe g;
  UniformEvaluator u(g);
  SearchConfig cfg;
  cfg.threads = 1;
  cfg.budget = {BudgetKind::kSimulations, 300};
  Search s(g, u, cfg);
  s.run(g.initial_state());

  SearchConfig never = cfg;
  never.eps_greedy = 0.0;
  never.eps_checks = 0.0;
  Rng rng(1);
  for (int i = 0; i < 100000; ++i) ASSERT_FALSE(maybe_branch(rng, never, s.store(), s.root()));

  SearchConfig always = cfg;
  always.eps_greedy = 1.0;
  always.check_enhance = false;
  for (int i = 0; i < 1000; ++i) {
    const auto plan = maybe_branch(rng, always, s.store(), s.root());
    ASSERT_TRUE(plan);
    EXPECT_EQ(plan->kind, BranchKind::kEpsGreedy);
    EXPECT_EQ(plan->path.size(), static_cast<std::size_t>(plan->depth));
  }

  SearchConfig greedy = cfg;
  greedy.check_enhance = false;
  int emitted = 0;
  for (int i = 0; i < 100000; ++i) emitted += maybe_branch(rng, greedy, s.store(), s.root()).has_value();
  EXPECT_NEAR(emitted / 1e5, 0.01, 0.002);

  // Two independent coins: about 1 - 0.99^2 of the iterations branch.
  emitted = 0;
  for (int i = 0; i < 100000; ++i) emitted += maybe_branch(rng, cfg, s.store(), s.root()).has_value();
  EXPECT_NEAR(emitted / 1e5, 0.0199, 0.002);
}

TEST(MaybeBranch, PathFollowsMostVisited) {
  TicTacToe g;
  HeuristicEvaluator h(g, false);
  SearchConfig cfg;
  cfg.threads = 1;
  cfg.budget = {BudgetKind::kSimulations, 500};
  Search s(g, h, cfg);
  s.run(g.initial_state());
  const auto path = best_known_path(s.store(), s.root());
  ASSERT_FALSE(path.empty());
  const Node& r = s.store().node(s.root());
  std::uint32_t most = 0;
  for (const Edge& e : r.edges) most = std::max(most, e.n);
  for (const Edge& e : r.edges) {
    if (e.action == path[0]) {
      EXPECT_EQ(e.n, most);
    }
  }
}

TEST(ChooseBranchEdge, DescendingPriorOrder) {
  Nim g({2});
  UniformEvaluator u(g);
  SearchConfig cfg;
  cfg.threads = 1;
  cfg.node_tau = 1.0;
  cfg.terminal_solver = false;
  Search s(g, u, cfg);
  const NodeId root = s.set_root(g.initial_state());
  // Legal order: take 1 (prior 1/3), take 2 (prior 2/3); the larger goes first.
  s.expand(root, g.initial_state(), Evaluation{0.0, {1.0 / 3.0, 2.0 / 3.0}});
  Rng rng(3);
  const auto first = choose_branch_edge(s.store(), root, BranchKind::kEpsGreedy, g, g.initial_state(), rng);
  ASSERT_TRUE(first);
  EXPECT_EQ(s.store().node(root).edges[*first].action, Nim::encode(0, 2));
  s.store().node(root).edges[*first].n = 1;
  const auto second = choose_branch_edge(s.store(), root, BranchKind::kEpsGreedy, g, g.initial_state(), rng);
  EXPECT_EQ(s.store().node(root).edges[*second].action, Nim::encode(0, 1));
  s.store().node(root).edges[*second].n = 1;
  // Everything explored: uniform fallback.
  std::array<int, 2> hits{};
  for (int i = 0; i < 2000; ++i) {
    ++hits[*choose_branch_edge(s.store(), root, BranchKind::kEpsGreedy, g, g.initial_state(), rng)];
  }
  EXPECT_GT(hits[0], 850);
  EXPECT_GT(hits[1], 850);
}

TEST(ChooseBranchEdge, ForcingMoveJumpsTheQueue) {
  // X on a1, O in the center, X to move: b1, c1, a2, a3 make threats.
  TicTacToe g;
  const GameState s0 = play_line(g, {0, 4});
  UniformEvaluator u(g);
  SearchConfig cfg;
  cfg.threads = 1;
  cfg.node_tau = 1.0;
  cfg.terminal_solver = false;
  Search s(g, u, cfg);
  const NodeId root = s.set_root(s0);
  const auto legal = g.legal_actions(s0);
  // Give a non-forcing move the top prior.
  std::vector<double> priors(legal.size(), 0.1);
  std::size_t forcing_count = 0;
  for (std::size_t i = 0; i < legal.size(); ++i) {
    if (g.is_forcing(s0, legal[i])) {
      ++forcing_count;
      priors[i] = 0.01;
    }
  }
  ASSERT_GE(forcing_count, 1u);
  ASSERT_LT(forcing_count, legal.size());
  double sum = 0.0;
  for (double p : priors) sum += p;
  for (double& p : priors) p /= sum;
  s.expand(root, s0, Evaluation{0.0, priors});
  ASSERT_FALSE(g.is_forcing(s0, s.store().node(root).edges[0].action));

  Rng rng(4);
  std::size_t seen = 0;
  for (;;) {
    const auto e = choose_branch_edge(s.store(), root, BranchKind::kForcing, g, s0, rng);
    ASSERT_TRUE(e);
    Edge& edge = s.store().node(root).edges[*e];
    if (!g.is_forcing(s0, edge.action)) break;
    edge.n = 1;
    ++seen;
  }
  EXPECT_EQ(seen, forcing_count);
  EXPECT_TRUE(s.store().node(root).checks_expanded);
}

TEST(ExecuteBranch, AncestorsUntouched) {
  TicTacToe g;
  HeuristicEvaluator h(g, false);
  SearchConfig cfg;
  cfg.threads = 1;
  cfg.terminal_solver = false;
  cfg.budget = {BudgetKind::kSimulations, 400};
  Search s(g, h, cfg);
  s.run(g.initial_state());

  const auto path = best_known_path(s.store(), s.root());
  ASSERT_GE(path.size(), 2u);
  BranchPlan plan{BranchKind::kEpsGreedy, 2, {path[0], path[1]}};

  // Snapshot the two ancestors on the path.
  struct Snap {
    std::uint32_t n;
    double v;
    std::vector<std::pair<std::uint32_t, double>> edges;
  };
  auto snap = [&](NodeId id) {
    const Node& node = s.store().node(id);
    Snap out{node.n, node.v, {}};
    for (const Edge& e : node.edges) out.edges.emplace_back(e.n, e.q);
    return out;
  };
  std::vector<NodeId> ancestors{s.root()};
  NodeId id = s.root();
  for (ActionId a : plan.path) {
    for (const Edge& e : s.store().node(id).edges) {
      if (e.action == a) id = e.child_id;
    }
    ancestors.push_back(id);
  }
  const NodeId branch = ancestors.back();
  ancestors.pop_back();
  std::vector<Snap> before;
  for (NodeId a : ancestors) before.push_back(snap(a));
  const std::uint32_t branch_n = s.store().node(branch).n;

  Rng rng(8);
  auto t = s.execute_branch(plan, rng);
  ASSERT_TRUE(t);
  EXPECT_TRUE(t->exploration);
  EXPECT_EQ(t->steps.front().node, branch);
  if (t->end == TrajectoryEnd::kExpand) {
    s.expand(t->leaf, t->leaf_state, h.evaluate(t->leaf_state));
    t->value = s.store().node(t->leaf).v;
  }
  s.backpropagate(*t);

  for (std::size_t i = 0; i < ancestors.size(); ++i) {
    const Snap now = snap(ancestors[i]);
    EXPECT_EQ(now.n, before[i].n);
    EXPECT_EQ(now.v, before[i].v);
    EXPECT_EQ(now.edges, before[i].edges);
  }
  EXPECT_EQ(s.store().node(branch).n, branch_n + 1);
}

TEST(ExecuteBranch, TerminalBranchNodeIsDiscarded) {
  Nim g({1});
  UniformEvaluator u(g);
  SearchConfig cfg;
  cfg.threads = 1;
  cfg.terminal_solver = false;
  Search s(g, u, cfg);
  const NodeId root = s.set_root(g.initial_state());
  s.expand(root, g.initial_state(), uniform_eval(g, g.initial_state()));
  auto t = s.select_and_expand(root, g.initial_state());
  s.backpropagate(t);
  Rng rng(1);
  EXPECT_FALSE(s.execute_branch(BranchPlan{BranchKind::kEpsGreedy, 1, {Nim::encode(0, 1)}}, rng));
}

TEST(Coverage, ThreatMovesNearThePrincipalLine) {
  TicTacToe g;
  HeuristicEvaluator h(g, false);
  int covered_runs = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    SearchConfig cfg;
    cfg.threads = 1;
    cfg.seed = seed;
    cfg.terminal_solver = false;
    cfg.budget = {BudgetKind::kSimulations, 5000};
    Search s(g, h, cfg);
    s.run(g.initial_state());

    bool all = true;
    NodeId id = s.root();
    GameState state = g.initial_state();
    const auto path = best_known_path(s.store(), s.root());
    for (std::size_t depth = 0; depth <= 2 && all; ++depth) {
      const Node& node = s.store().node(id);
      for (const Edge& e : node.edges) {
        if (g.is_forcing(state, e.action) && e.n == 0) all = false;
      }
      if (depth == path.size()) break;
      for (const Edge& e : node.edges) {
        if (e.action == path[depth]) id = e.child_id;
      }
      state = g.apply(state, path[depth]);
    }
    covered_runs += all;
  }
  EXPECT_GE(covered_runs, 99);
}
