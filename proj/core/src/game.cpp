#include "mcgs/game.hpp"

#include <charconv>
#include <sstream>

#include "mcgs/games.hpp"

namespace mcgs {

std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::kWin: return "WIN";
    case Outcome::kLoss: return "LOSS";
    case Outcome::kDraw: return "DRAW";
  }
  return "?";
}

std::string Game::action_name(ActionId action) const { return std::to_string(action); }

std::string Game::describe(const GameState& state) const {
  std::ostringstream os;
  os << "ply=" << state.ply << " to_move=" << int{state.to_move} << " board=[";
  for (std::size_t i = 0; i < state.board.size(); ++i) {
    if (i) os << ',';
    os << int{state.board[i]};
  }
  os << ']';
  return os.str();
}

std::uint64_t ply_feature(std::uint32_t ply) {
  return mix64(kZobristSeed ^ (0x504c59ull << 40) ^ ply);
}

StateKey Game::state_key(const GameState& state) const {
  return StateKey{position_hash(state) ^ ply_feature(state.ply), state.ply};
}

namespace {

std::vector<int> parse_int_list(std::string_view text, std::string_view what) {
  std::vector<int> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view tok = text.substr(0, comma);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ConfigError("bad integer '" + std::string(tok) + "' in " + std::string(what));
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

std::unique_ptr<Game> make_game(std::string_view id) {
  auto colon = id.find(':');
  std::string_view name = id.substr(0, colon);
  std::string_view args = colon == std::string_view::npos ? std::string_view{} : id.substr(colon + 1);

  if (name == "tictactoe" || name == "ttt") {
    if (!args.empty()) throw ConfigError("tictactoe takes no parameters");
    return std::make_unique<TicTacToe>();
  }
  if (name == "nim") {
    std::vector<int> piles = args.empty() ? std::vector<int>{3, 4, 5} : parse_int_list(args, "nim piles");
    return std::make_unique<Nim>(std::move(piles));
  }
  if (name == "leftright") {
    int length = 16;
    if (!args.empty()) {
      auto v = parse_int_list(args, "leftright length");
      if (v.size() != 1) throw ConfigError("leftright takes one length");
      length = v[0];
    }
    return std::make_unique<LeftRight>(length);
  }
  throw ConfigError("unknown game '" + std::string(id) + "'");
}

GameState play_line(const Game& game, const std::vector<ActionId>& actions) {
  GameState s = game.initial_state();
  for (ActionId a : actions) s = game.apply(s, a);
  return s;
}

}  // namespace mcgs
