#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcgs/evaluator.hpp"
#include "mcgs/game.hpp"
#include "mcgs/search.hpp"
#include "mcgs/search_config.hpp"
#include "mcgs/solver.hpp"

namespace mcgs {

struct EngineSpec {
  std::string name = "engine";
  SearchConfig config;
  std::string evaluator = "heuristic";
  std::string oracle = "none";
};

// One player: a Search that keeps its graph across the moves of a game.
class Engine {
 public:
  Engine(const Game& game, const EngineSpec& spec, std::uint64_t seed);
  ~Engine();

  // Searches `state`, which must follow from the previous call's position by
  // the moves passed to notify() in between (or be a fresh position).
  SearchResult think(const GameState& state);
  void notify(ActionId played);

 private:
  const Game& game_;
  std::unique_ptr<Evaluator> evaluator_;
  std::unique_ptr<EndgameOracle> oracle_;
  std::unique_ptr<Search> search_;
  std::vector<ActionId> unseen_;
  bool started_ = false;
};

struct MatchConfig {
  std::string game = "nim:3,4,5";
  EngineSpec a{"A", {}, "heuristic", "none"};
  EngineSpec b{"B", {}, "heuristic", "none"};
  // Explicit openings; when empty, generated from opening_plies.
  std::vector<std::vector<ActionId>> openings;
  int opening_plies = 2;
  // Total games; played as color-swapped pairs cycling over the openings.
  int games = 100;
  std::uint64_t seed = 1;
};

struct GameRecord {
  std::size_t opening = 0;
  bool a_first = true;  // A moves first from the opening position
  std::vector<ActionId> opening_moves;
  std::vector<ActionId> moves;
  double a_points = 0.0;  // 1 win, 0.5 draw, 0 loss
  std::string termination = "rules";  // or "forfeit A"/"forfeit B: <what>"
  std::uint64_t a_evaluations = 0;
  std::uint64_t b_evaluations = 0;
  std::size_t a_nodes = 0;
  std::size_t b_nodes = 0;
};

struct EloEstimate {
  double score = 0.5;
  double elo = 0.0;  // +-inf when score is 0 or 1
  double elo_low = 0.0;
  double elo_high = 0.0;
  double score_low = 0.0;  // Wilson 95% bounds on the score rate
  double score_high = 1.0;
};

struct MatchResult {
  std::string game;
  std::string engine_a;
  std::string engine_b;
  int wins = 0;
  int draws = 0;
  int losses = 0;
  EloEstimate estimate;
  std::vector<GameRecord> games;
};

// -400 * log10(1 / score - 1).
double elo_from_score(double score);
// Wilson score interval (z = 1.96) for `points` out of `n` games.
std::pair<double, double> wilson_interval(double points, double n, double z = 1.959963984540054);
EloEstimate elo_diff(double points, double n);

// Every distinct non-terminal position after `plies` moves. Positions whose
// game value is a draw are preferred when any exist; otherwise all are kept.
std::vector<std::vector<ActionId>> generate_openings(const Game& game, int plies, std::uint64_t seed);

MatchResult play_match(const MatchConfig& config);

// Flat key=value: game, games, seed, opening-plies, openings (a;b|c;d ...),
// budget-*, and engineA./engineB. prefixed engine keys (name, evaluator,
// oracle and every SearchConfig key). Unprefixed search keys apply to both.
MatchConfig parse_match_config(std::string_view text);

// Move log, one game per line: "[n] opening | moves | result".
std::string match_log(const MatchResult& result, const Game& game);

struct ScalingRow {
  std::uint64_t budget = 0;
  SearchStats stats;
  MemoryReport memory;
  double score_vs_reference = 0.0;
};

// For each budget: one search from the initial position (memory and counters)
// and a `games`-game match against `reference` at the reference's own budget.
std::vector<ScalingRow> scaling_report(const std::string& game, const EngineSpec& engine,
                                       const EngineSpec& reference, const std::vector<std::uint64_t>& budgets,
                                       int games, std::uint64_t seed);
std::string scaling_csv(const std::vector<ScalingRow>& rows);

}  // namespace mcgs
