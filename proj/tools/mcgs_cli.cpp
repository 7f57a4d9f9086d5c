// mcgs: search a position, play engine matches, print scaling tables and
// oracle dumps.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mcgs/arena.hpp"
#include "mcgs/report.hpp"
#include "mcgs/search.hpp"

namespace {

using namespace mcgs;

// Flags that map one-to-one onto SearchConfig keys.
struct SearchFlags {
  std::vector<std::pair<std::string, std::string>> values;

  void add(CLI::App& app) {
    const char* valued[] = {"q-epsilon",  "eps-greedy",  "eps-checks",   "mini-batch",  "budget-evals",
                            "budget-sims", "budget-ms",  "tau",          "q-weight",    "c-puct-init",
                            "c-puct-base", "node-tau",   "virtual-loss", "threads",     "dirichlet-epsilon",
                            "dirichlet-alpha", "q-init", "max-nodes",    "seed"};
    for (const char* key : valued) {
      app.add_option_function<std::string>(
          std::string("--") + key, [this, k = std::string(key)](const std::string& v) { values.emplace_back(k, v); },
          "search key " + std::string(key));
    }
    const std::pair<const char*, const char*> toggles[] = {{"no-q-boost", "q-boost"},
                                                           {"no-terminal-solver", "terminal-solver"},
                                                           {"no-explore", "explore"},
                                                           {"no-check-enhance", "check-enhance"},
                                                           {"no-transpositions", "transpositions"}};
    for (const auto& [flag, key] : toggles) {
      app.add_flag_callback(std::string("--") + flag, [this, k = std::string(key)] { values.emplace_back(k, "false"); },
                            std::string("disable ") + key);
    }
  }

  void apply(SearchConfig& c) const {
    for (const auto& [k, v] : values) c.set(k, v);
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<ActionId> parse_moves(const std::string& text) {
  std::vector<ActionId> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ConfigError("bad move '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte-Carlo graph search engine"};
  app.require_subcommand(1);

  // search
  auto* search_cmd = app.add_subcommand("search", "search one position and print the result as JSON");
  std::string game_id = "tictactoe";
  std::string evaluator_id = "heuristic";
  std::string oracle_id = "none";
  std::string moves_text;
  bool mem_stats = false;
  SearchFlags flags;
  search_cmd->add_option("--game", game_id, "tictactoe | nim[:a,b,...] | leftright[:L]");
  search_cmd->add_option("--evaluator", evaluator_id, "uniform | heuristic | deceptive | oracle");
  search_cmd->add_option("--oracle", oracle_id, "endgame oracle: none | nim-xor[:k] | table:<game>[@ply]");
  search_cmd->add_option("--moves", moves_text, "comma-separated action ids leading to the position");
  search_cmd->add_flag("--mem-stats", mem_stats, "include the memory report");
  flags.add(*search_cmd);

  // match
  auto* match_cmd = app.add_subcommand("match", "play an engine match from a key=value config file");
  std::string match_file;
  std::string log_file;
  std::vector<std::string> overrides;
  match_cmd->add_option("config", match_file, "match config")->required();
  match_cmd->add_option("--log", log_file, "write the move log here");
  match_cmd->add_option("--set", overrides, "extra key=value lines appended to the config");

  // scaling
  auto* scaling_cmd = app.add_subcommand("scaling", "evaluation-budget scaling table as CSV");
  std::string scaling_game = "tictactoe";
  std::string scaling_file;
  std::vector<std::uint64_t> budgets{32, 64, 128};
  int scaling_games = 0;
  std::uint64_t scaling_seed = 1;
  scaling_cmd->add_option("--game", scaling_game);
  scaling_cmd->add_option("--config", scaling_file, "engineA./engineB. keys; B is the reference");
  scaling_cmd->add_option("--budgets", budgets, "ascending evaluation budgets")->delimiter(',');
  scaling_cmd->add_option("--games", scaling_games, "games per budget against the reference");
  scaling_cmd->add_option("--seed", scaling_seed);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "exhaustive negamax table as JSON");
  std::string solve_game;
  solve_cmd->add_option("game", solve_game)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; usage errors share the config-error code.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (search_cmd->parsed()) {
      const auto game = make_game(game_id);
      SearchConfig config;
      flags.apply(config);
      const auto evaluator = make_evaluator(evaluator_id, *game);
      const auto oracle = make_endgame_oracle(oracle_id, *game);
      const GameState state = play_line(*game, parse_moves(moves_text));
      Search search(*game, *evaluator, config, oracle.get());
      const SearchResult r = search.run(state);
      nlohmann::json out = to_json(r, *game, mem_stats);
      out["position"] = game->describe(state);
      out["config"] = to_json(config);
      std::cout << out.dump(2) << '\n';
    } else if (match_cmd->parsed()) {
      std::string text = read_file(match_file);
      for (const auto& line : overrides) text += "\n" + line;
      const MatchConfig config = parse_match_config(text);
      const MatchResult r = play_match(config);
      std::cout << to_json(r).dump(2) << '\n';
      if (!log_file.empty()) {
        std::ofstream log(log_file);
        log << match_log(r, *make_game(config.game));
      }
    } else if (scaling_cmd->parsed()) {
      MatchConfig config;
      if (!scaling_file.empty()) config = parse_match_config(read_file(scaling_file));
      std::cout << scaling_csv(scaling_report(scaling_game, config.a, config.b, budgets, scaling_games, scaling_seed));
    } else if (solve_cmd->parsed()) {
      std::cout << oracle_dump(*make_game(solve_game)).dump(2) << '\n';
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
