#include <benchmark/benchmark.h>

#include "mcgs/games.hpp"
#include "mcgs/oracle.hpp"
#include "mcgs/search.hpp"

using namespace mcgs;

static void BM_PuctSelect(benchmark::State& state) {
  TicTacToe g;
  HeuristicEvaluator h(g, false);
  SearchConfig cfg;
  cfg.threads = 1;
  cfg.terminal_solver = false;
  cfg.budget = {BudgetKind::kSimulations, 2000};
  Search s(g, h, cfg);
  s.run(g.initial_state());
  for (auto _ : state) benchmark::DoNotOptimize(s.puct_select(s.root()));
}
BENCHMARK(BM_PuctSelect);

// Whole searches from the empty board; arg is the simulation budget.
static void BM_SearchTicTacToe(benchmark::State& state) {
  TicTacToe g;
  HeuristicEvaluator h(g, false);
  SearchConfig cfg;
  cfg.threads = 1;
  cfg.terminal_solver = false;
  cfg.budget = {BudgetKind::kSimulations, static_cast<std::uint64_t>(state.range(0))};
  for (auto _ : state) {
    Search s(g, h, cfg);
    benchmark::DoNotOptimize(s.run(g.initial_state()).stats.simulations);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SearchTicTacToe)->Arg(1000)->Arg(10000);

static void BM_SearchNimTreeVsGraph(benchmark::State& state) {
  Nim g({3, 4, 5});
  HeuristicEvaluator h(g, false);
  SearchConfig cfg = state.range(0) ? SearchConfig{} : SearchConfig::tree_puct();
  cfg.threads = 1;
  cfg.budget = {BudgetKind::kEvaluations, 2000};
  for (auto _ : state) {
    Search s(g, h, cfg);
    benchmark::DoNotOptimize(s.run(g.initial_state()).stats.simulations);
  }
  state.SetLabel(state.range(0) ? "graph" : "tree");
}
BENCHMARK(BM_SearchNimTreeVsGraph)->Arg(0)->Arg(1);

static void BM_OracleSolve(benchmark::State& state) {
  TicTacToe g;
  for (auto _ : state) {
    OracleTable t(g);
    benchmark::DoNotOptimize(t.solve(g.initial_state()).outcome);
  }
}
BENCHMARK(BM_OracleSolve);

BENCHMARK_MAIN();
