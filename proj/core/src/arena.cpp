#include "mcgs/arena.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "mcgs/oracle.hpp"

namespace mcgs {

namespace {

std::uint64_t game_seed(std::uint64_t match_seed, std::size_t pair, bool first_mover) {
  return mix64(mix64(match_seed ^ 0x6a09e667f3bcc909ull) + pair * 2 + (first_mover ? 0 : 1));
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

int to_int(std::string_view key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long x = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return static_cast<int>(x);
  } catch (const std::exception&) {
    throw ConfigError("key '" + std::string(key) + "': expected an integer, got '" + v + "'");
  }
}

void set_engine_key(EngineSpec& spec, std::string_view key, std::string_view value) {
  if (key == "name") spec.name = std::string(value);
  else if (key == "evaluator") spec.evaluator = std::string(value);
  else if (key == "oracle") spec.oracle = std::string(value);
  else spec.config.set(key, value);
}

// "0;4|1;3" -> {{0, 4}, {1, 3}}
std::vector<std::vector<ActionId>> parse_openings(const std::string& text) {
  std::vector<std::vector<ActionId>> out;
  std::stringstream lines(text);
  std::string line;
  while (std::getline(lines, line, '|')) {
    std::vector<ActionId> moves;
    std::stringstream items(line);
    std::string item;
    while (std::getline(items, item, ';')) {
      item = trim(item);
      if (!item.empty()) moves.push_back(to_int("openings", item));
    }
    out.push_back(std::move(moves));
  }
  return out;
}

}  // namespace

Engine::Engine(const Game& game, const EngineSpec& spec, std::uint64_t seed)
    : game_(game), evaluator_(make_evaluator(spec.evaluator, game)), oracle_(make_endgame_oracle(spec.oracle, game)) {
  SearchConfig cfg = spec.config;
  cfg.seed = seed;
  // One worker keeps games reproducible.
  cfg.threads = 1;
  search_ = std::make_unique<Search>(game_, *evaluator_, cfg, oracle_.get());
}

Engine::~Engine() = default;

SearchResult Engine::think(const GameState& state) {
  if (started_ && !unseen_.empty()) search_->advance(unseen_);
  unseen_.clear();
  started_ = true;
  return search_->run(state);
}

void Engine::notify(ActionId played) {
  if (started_) unseen_.push_back(played);
}

double elo_from_score(double score) {
  // + 0.0 turns the -0 at an even score into 0.
  return -400.0 * std::log10(1.0 / score - 1.0) + 0.0;
}

std::pair<double, double> wilson_interval(double points, double n, double z) {
  if (n <= 0.0) return {0.0, 1.0};
  const double p = points / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

EloEstimate elo_diff(double points, double n) {
  EloEstimate e;
  e.score = n > 0.0 ? points / n : 0.5;
  const double inf = std::numeric_limits<double>::infinity();
  auto elo = [&](double s) { return s <= 0.0 ? -inf : (s >= 1.0 ? inf : elo_from_score(s)); };
  e.elo = elo(e.score);
  std::tie(e.score_low, e.score_high) = wilson_interval(points, n);
  e.elo_low = elo(e.score_low);
  e.elo_high = elo(e.score_high);
  return e;
}

std::vector<std::vector<ActionId>> generate_openings(const Game& game, int plies, std::uint64_t seed) {
  plies = std::max(plies, 0);
  std::vector<std::vector<ActionId>> all;
  std::unordered_set<StateKey, StateKeyHash> seen;
  std::vector<ActionId> line;
  auto walk = [&](auto&& self, const GameState& s, int depth) -> void {
    if (game.is_terminal(s)) return;
    if (depth == plies) {
      if (seen.insert(game.state_key(s)).second) all.push_back(line);
      return;
    }
    for (ActionId a : game.legal_actions(s)) {
      line.push_back(a);
      self(self, game.apply(s, a), depth + 1);
      line.pop_back();
    }
  };
  walk(walk, game.initial_state(), 0);

  OracleTable oracle(game);
  std::vector<std::vector<ActionId>> drawn;
  for (const auto& o : all) {
    if (oracle.solve(play_line(game, o)).outcome == Outcome::kDraw) drawn.push_back(o);
  }
  if (!drawn.empty()) all = std::move(drawn);

  Rng rng(seed);
  std::shuffle(all.begin(), all.end(), rng);
  return all;
}

MatchResult play_match(const MatchConfig& config) {
  const auto game = make_game(config.game);
  auto openings = config.openings.empty() ? generate_openings(*game, config.opening_plies, config.seed)
                                          : config.openings;
  if (openings.empty()) openings.push_back({});
  for (const auto& o : openings) {
    GameState s = game->initial_state();
    for (ActionId a : o) {
      const auto legal = game->legal_actions(s);
      if (std::find(legal.begin(), legal.end(), a) == legal.end()) {
        throw ConfigError("opening move " + std::to_string(a) + " is illegal");
      }
      s = game->apply(s, a);
    }
    if (game->is_terminal(s)) throw ConfigError("opening ends the game");
  }

  MatchResult result;
  result.game = game->id();
  result.engine_a = config.a.name;
  result.engine_b = config.b.name;

  for (int g = 0; g < config.games; ++g) {
    const std::size_t pair = static_cast<std::size_t>(g / 2);
    GameRecord rec;
    rec.opening = pair % openings.size();
    rec.a_first = g % 2 == 0;
    rec.opening_moves = openings[rec.opening];

    const EngineSpec& first = rec.a_first ? config.a : config.b;
    const EngineSpec& second = rec.a_first ? config.b : config.a;
    Engine e_first(*game, first, game_seed(config.seed, pair, true));
    Engine e_second(*game, second, game_seed(config.seed, pair, false));
    Engine* engines[2] = {&e_first, &e_second};
    std::uint64_t evals[2] = {0, 0};
    std::size_t nodes[2] = {0, 0};

    GameState state = play_line(*game, rec.opening_moves);
    const int first_mover = state.to_move;
    std::optional<double> first_points;  // for the engine that moved first
    for (int turn = 0;; ++turn) {
      if (auto t = game->terminal_value(state)) {
        // Outcome is for the side to move at the terminal state.
        double mover_points = outcome_value(*t) * 0.5 + 0.5;
        if (game->num_players() == 1) {
          first_points = mover_points;
        } else {
          first_points = state.to_move == first_mover ? mover_points : 1.0 - mover_points;
        }
        break;
      }
      // In a puzzle the first engine plays every move of its own game.
      const int side = game->num_players() == 1 ? 0 : turn % 2;
      try {
        const SearchResult r = engines[side]->think(state);
        evals[side] += r.stats.evaluations;
        nodes[side] = std::max(nodes[side], r.memory.node_count);
        if (!r.selected) throw ContractViolation("engine returned no move");
        const ActionId a = *r.selected;
        rec.moves.push_back(a);
        state = game->apply(state, a);
        e_first.notify(a);
        e_second.notify(a);
      } catch (const std::exception& ex) {
        const bool a_failed = (side == 0) == rec.a_first;
        rec.termination = std::string("forfeit ") + (a_failed ? "A" : "B") + ": " + ex.what();
        first_points = side == 0 ? 0.0 : 1.0;
        break;
      }
    }
    rec.a_points = rec.a_first ? *first_points : 1.0 - *first_points;
    rec.a_evaluations = rec.a_first ? evals[0] : evals[1];
    rec.b_evaluations = rec.a_first ? evals[1] : evals[0];
    rec.a_nodes = rec.a_first ? nodes[0] : nodes[1];
    rec.b_nodes = rec.a_first ? nodes[1] : nodes[0];
    if (rec.a_points == 1.0) ++result.wins;
    else if (rec.a_points == 0.0) ++result.losses;
    else ++result.draws;
    result.games.push_back(std::move(rec));
  }
  result.estimate = elo_diff(result.wins + 0.5 * result.draws, static_cast<double>(config.games));
  return result;
}

MatchConfig parse_match_config(std::string_view text) {
  MatchConfig cfg;
  std::vector<std::pair<std::string, std::string>> shared;
  std::vector<std::pair<std::string, std::string>> per_a;
  std::vector<std::pair<std::string, std::string>> per_b;
  for (const auto& [key, value] : parse_key_values(text)) {
    if (key.rfind("engineA.", 0) == 0) per_a.emplace_back(key.substr(8), value);
    else if (key.rfind("engineB.", 0) == 0) per_b.emplace_back(key.substr(8), value);
    else if (key == "game") cfg.game = value;
    else if (key == "games") cfg.games = to_int(key, value);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(key, value));
    else if (key == "opening-plies" || key == "opening_plies") cfg.opening_plies = to_int(key, value);
    else if (key == "openings") cfg.openings = parse_openings(value);
    else shared.emplace_back(key, value);
  }
  // Shared keys first so prefixed ones override them.
  for (const auto& [k, v] : shared) {
    set_engine_key(cfg.a, k, v);
    set_engine_key(cfg.b, k, v);
  }
  for (const auto& [k, v] : per_a) set_engine_key(cfg.a, k, v);
  for (const auto& [k, v] : per_b) set_engine_key(cfg.b, k, v);
  if (cfg.games < 0) throw ConfigError("games must be non-negative");
  if (cfg.opening_plies < 0) throw ConfigError("opening-plies must be non-negative");
  make_game(cfg.game);
  return cfg;
}

std::string match_log(const MatchResult& result, const Game& game) {
  std::ostringstream out;
  out << "[Game \"" << result.game << "\"] [A \"" << result.engine_a << "\"] [B \"" << result.engine_b << "\"]\n";
  for (std::size_t i = 0; i < result.games.size(); ++i) {
    const GameRecord& g = result.games[i];
    out << '[' << i + 1 << "] " << (g.a_first ? "A-B" : "B-A") << " opening";
    for (ActionId a : g.opening_moves) out << ' ' << game.action_name(a);
    out << " |";
    for (ActionId a : g.moves) out << ' ' << game.action_name(a);
    out << " | " << (g.a_points == 1.0 ? "1-0" : g.a_points == 0.0 ? "0-1" : "1/2-1/2");
    if (g.termination != "rules") out << " {" << g.termination << '}';
    out << '\n';
  }
  return out.str();
}

std::vector<ScalingRow> scaling_report(const std::string& game_id, const EngineSpec& engine,
                                       const EngineSpec& reference, const std::vector<std::uint64_t>& budgets,
                                       int games, std::uint64_t seed) {
  if (!std::is_sorted(budgets.begin(), budgets.end())) throw ConfigError("budgets must be ascending");
  const auto game = make_game(game_id);
  std::vector<ScalingRow> rows;
  for (std::uint64_t b : budgets) {
    EngineSpec spec = engine;
    spec.config.budget = {BudgetKind::kEvaluations, b};
    spec.config.threads = 1;

    ScalingRow row;
    row.budget = b;
    const auto evaluator = make_evaluator(spec.evaluator, *game);
    const auto oracle = make_endgame_oracle(spec.oracle, *game);
    Search search(*game, *evaluator, spec.config, oracle.get());
    const SearchResult r = search.run(game->initial_state());
    row.stats = r.stats;
    row.memory = r.memory;

    if (games > 0) {
      MatchConfig mc;
      mc.game = game_id;
      mc.a = spec;
      mc.b = reference;
      mc.games = games;
      mc.seed = seed;
      row.score_vs_reference = play_match(mc).estimate.score;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
  std::ostringstream out;
  out << "budget,evaluations,simulations,nodes,edges,transposition_joins,early_stops,terminal_hits,"
         "prior_entries,trajectory_buffer,tree_equivalent_nodes,score_vs_reference\n";
  for (const auto& r : rows) {
    out << r.budget << ',' << r.stats.evaluations << ',' << r.stats.simulations << ',' << r.memory.node_count << ','
        << r.memory.edge_count << ',' << r.memory.transposition_joins << ',' << r.stats.early_stops << ','
        << r.stats.terminal_hits << ',' << r.memory.prior_entry_count << ',' << r.memory.trajectory_buffer_size
        << ',' << r.memory.tree_equivalent_node_count << ',' << r.score_vs_reference << '\n';
  }
  return out.str();
}

}  // namespace mcgs
