#include <gtest/gtest.h>

#include <random>

#include "mcgs/games.hpp"
#include "mcgs/graph_store.hpp"
#include "mcgs/search.hpp"
#include "support.hpp"

using namespace mcgs;

TEST(GraphStore, LookupOrInsertIsIdempotent) {
  GraphStore store;
  const StateKey k{42, 3};
  const auto [a, existed_a] = store.lookup_or_insert(k);
  EXPECT_FALSE(existed_a);
  const auto [b, existed_b] = store.lookup_or_insert(k);
  EXPECT_TRUE(existed_b);
  EXPECT_EQ(a, b);
  EXPECT_EQ(store.size(), 1u);
  EXPECT_EQ(store.find(k), a);
  EXPECT_EQ(store.find(StateKey{42, 4}), kNoNode);
}

TEST(GraphStore, TwoMoveOrdersJoinOneNode) {
  TicTacToe g;
  GraphStore store;
  // Two parents at ply 2 reach the same ply-3 position.
  const GameState p1 = play_line(g, {0, 4});
  const GameState p2 = play_line(g, {8, 4});
  const NodeId n1 = store.lookup_or_insert(g.state_key(p1)).first;
  const NodeId n2 = store.lookup_or_insert(g.state_key(p2)).first;
  Edge to_c3;
  to_c3.action = 8;
  Edge to_a1;
  to_a1.action = 0;
  store.node(n1).edges.push_back(to_c3);
  store.node(n2).edges.push_back(to_a1);
  const auto [c1, e1] = store.connect(n1, 0, g.state_key(g.apply(p1, 8)));
  const auto [c2, e2] = store.connect(n2, 0, g.state_key(g.apply(p2, 0)));
  EXPECT_FALSE(e1);
  EXPECT_TRUE(e2);
  EXPECT_EQ(c1, c2);
  EXPECT_EQ(store.node(c1).parents.size(), 2u);
  EXPECT_TRUE(store.node(c1).is_transposition());
  const MemoryReport m = store.memory_report();
  EXPECT_EQ(m.node_count, 3u);
  EXPECT_EQ(m.transposition_joins, 1u);
  EXPECT_EQ(m.tree_equivalent_node_count, 4u);
}

TEST(GraphStore, CapacityLimit) {
  GraphStore store(2);
  store.lookup_or_insert({1, 0});
  store.lookup_or_insert({2, 0});
  EXPECT_NO_THROW(store.lookup_or_insert({2, 0}));
  EXPECT_THROW(store.lookup_or_insert({3, 0}), OutOfMemory);
}

TEST(EdgeSma, FirstUpdateReplacesInit) {
  Edge e;
  EXPECT_EQ(e.q, -1.0);
  update_edge_sma(e, 0.5);
  EXPECT_EQ(e.q, 0.5);
  EXPECT_EQ(e.n, 1u);
}

TEST(EdgeSma, ArithmeticMean) {
  Edge e;
  update_edge_sma(e, 1.0);
  update_edge_sma(e, 0.0);
  EXPECT_EQ(e.q, 0.5);
  EXPECT_EQ(e.n, 2u);
}

TEST(EdgeSma, FixedPoint) {
  Edge e;
  e.q = 0.2;
  e.n = 3;
  update_edge_sma(e, 0.2);
  EXPECT_DOUBLE_EQ(e.q, 0.2);
  EXPECT_EQ(e.n, 4u);
}

TEST(EdgeSma, PrunedEdgeOnlyCounts) {
  Edge e;
  e.q = kPrunedQ;
  update_edge_sma(e, 0.7);
  EXPECT_EQ(e.q, kPrunedQ);
  EXPECT_EQ(e.n, 1u);
}

TEST(NodeSma, Examples) {
  Node n;
  update_node_value(n, -0.3);
  EXPECT_EQ(n.v, -0.3);
  EXPECT_EQ(n.n, 1u);
  Node m;
  update_node_value(m, -1.0);
  update_node_value(m, 1.0);
  EXPECT_EQ(m.v, 0.0);
  Node c;
  for (int i = 0; i < 100; ++i) update_node_value(c, 0.37);
  EXPECT_NEAR(c.v, 0.37, 1e-12);
  EXPECT_EQ(c.n, 100u);
}

TEST(NodeSma, MatchesMeanOfRandomSequences) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    Node n;
    double sum = 0.0;
    const int k = 1 + static_cast<int>(rng() % 500);
    for (int i = 0; i < k; ++i) {
      const double x = u(rng);
      sum += x;
      update_node_value(n, x);
    }
    EXPECT_NEAR(n.v, sum / k, 1e-9);
  }
}

TEST(GraphStore, EmptyReportIsZero) {
  const MemoryReport m = GraphStore().memory_report();
  EXPECT_EQ(m.node_count, 0u);
  EXPECT_EQ(m.edge_count, 0u);
  EXPECT_EQ(m.prior_entry_count, 0u);
  EXPECT_EQ(m.trajectory_buffer_size, 0u);
  EXPECT_EQ(m.tree_equivalent_node_count, 0u);
}

TEST(GraphStore, LeftRightChainStaysSmall) {
  const auto g = make_game("leftright:16");
  const auto eval = make_evaluator("heuristic", *g);
  SearchConfig cfg;
  cfg.threads = 1;
  cfg.terminal_solver = false;
  std::size_t last_tree = 0;
  for (std::uint64_t sims : {200, 2000}) {
    cfg.budget = {BudgetKind::kSimulations, sims};
    Search search(*g, *eval, cfg);
    const SearchResult r = search.run(g->initial_state());
    EXPECT_LE(r.memory.node_count, 33u);
    EXPECT_GE(r.memory.tree_equivalent_node_count, r.memory.node_count);
    EXPECT_GE(r.memory.tree_equivalent_node_count, last_tree);
    last_tree = r.memory.tree_equivalent_node_count;
  }
}

TEST(GraphStore, TicTacToeStoresFewerNodesThanATree) {
  const auto g = make_game("tictactoe");
  const auto eval = make_evaluator("heuristic", *g);
  SearchConfig cfg;
  cfg.threads = 1;
  cfg.budget = {BudgetKind::kSimulations, 10000};
  Search search(*g, *eval, cfg);
  const SearchResult r = search.run(g->initial_state());
  EXPECT_LT(r.memory.node_count, r.memory.tree_equivalent_node_count);
  EXPECT_EQ(r.memory.prior_entry_count, r.memory.edge_count);
}

TEST(GraphStore, QuiescentEdgeVisitsNeverExceedChildVisits) {
  const auto g = make_game("tictactoe");
  const auto eval = make_evaluator("heuristic", *g);
  for (bool solver : {false, true}) {
    SearchConfig cfg;
    cfg.threads = 1;
    cfg.terminal_solver = solver;
    cfg.budget = {BudgetKind::kSimulations, 3000};
    Search search(*g, *eval, cfg);
    search.run(g->initial_state());
    const GraphStore& store = search.store();
    testkit::for_each_node(store, *g, search.root(), g->initial_state(), [&](NodeId id, const GameState&) {
      const Node& n = store.node(id);
      EXPECT_EQ(n.virtual_loss, 0u);
      EXPECT_LE(n.unknown_children, n.edges.size());
      if (n.status != SolverStatus::kUnknown) {
        EXPECT_TRUE(n.end_in_ply.has_value());
      }
      for (const Edge& e : n.edges) {
        EXPECT_EQ(e.virtual_loss, 0u);
        if (!e.pruned()) {
          EXPECT_GE(e.q, -1.0);
          EXPECT_LE(e.q, 1.0);
        }
        if (e.child_id != kNoNode) {
          EXPECT_LE(e.n, store.node(e.child_id).n);
        }
      }
    });
  }
}

TEST(GraphStore, TreeModeVisitConservation) {
  const auto g = make_game("tictactoe");
  const auto eval = make_evaluator("heuristic", *g);
  SearchConfig cfg = SearchConfig::tree_puct();
  cfg.threads = 1;
  cfg.budget = {BudgetKind::kSimulations, 2000};
  Search search(*g, *eval, cfg);
  search.run(g->initial_state());
  const GraphStore& store = search.store();
  testkit::for_each_node(store, *g, search.root(), g->initial_state(), [&](NodeId id, const GameState&) {
    const Node& n = store.node(id);
    if (!n.expanded) return;
    std::uint32_t sum = 0;
    for (const Edge& e : n.edges) sum += e.n;
    EXPECT_EQ(n.n, 1 + sum);
  });
}

TEST(GraphStore, GraphIsAcyclic) {
  const auto g = make_game("nim:3,4,5");
  const auto eval = make_evaluator("heuristic", *g);
  SearchConfig cfg;
  cfg.threads = 1;
  cfg.terminal_solver = false;
  cfg.budget = {BudgetKind::kSimulations, 3000};
  Search search(*g, *eval, cfg);
  search.run(g->initial_state());
  const GraphStore& store = search.store();
  testkit::for_each_node(store, *g, search.root(), g->initial_state(), [&](NodeId id, const GameState&) {
    for (const Edge& e : store.node(id).edges) {
      if (e.child_id != kNoNode) {
        EXPECT_EQ(store.node(e.child_id).key.ply, store.node(id).key.ply + 1);
      }
    }
  });
}
