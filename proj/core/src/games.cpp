#include "mcgs/games.hpp"

#include <algorithm>
#include <sstream>

namespace mcgs {

namespace {

[[noreturn]] void illegal(const Game& g, ActionId a, const GameState& s) {
  throw ContractViolation("illegal action " + g.action_name(a) + " (" + std::to_string(a) +
                          ") in " + g.id() + " state " + g.describe(s));
}

[[noreturn]] void terminal_query(const Game& g, const GameState& s) {
  throw ContractViolation("legal_actions called on terminal " + g.id() + " state " + g.describe(s));
}

}  // namespace

// ---------------------------------------------------------------------------
// TicTacToe

TicTacToe::TicTacToe() {
  std::uint64_t seed = kZobristSeed ^ 0x747474ull;
  for (auto& cell : zobrist_) {
    for (auto& z : cell) z = seed = mix64(seed);
  }
}

GameState TicTacToe::initial_state() const { return GameState{std::vector<std::int8_t>(9, 0), 0, 0}; }

std::optional<Outcome> TicTacToe::terminal_value(const GameState& s) const {
  // Only the player who just moved can own a completed line.
  const std::int8_t last = mark_of(static_cast<std::int8_t>(1 - s.to_move));
  for (const auto& line : kLines) {
    if (s.board[line[0]] == last && s.board[line[1]] == last && s.board[line[2]] == last) {
      return Outcome::kLoss;
    }
  }
  if (std::none_of(s.board.begin(), s.board.end(), [](std::int8_t c) { return c == 0; })) {
    return Outcome::kDraw;
  }
  return std::nullopt;
}

std::vector<ActionId> TicTacToe::legal_actions(const GameState& s) const {
  if (terminal_value(s)) terminal_query(*this, s);
  std::vector<ActionId> out;
  out.reserve(9);
  for (ActionId c = 0; c < 9; ++c) {
    if (s.board[c] == 0) out.push_back(c);
  }
  return out;
}

GameState TicTacToe::apply(const GameState& s, ActionId a) const {
  if (a < 0 || a >= 9 || s.board[a] != 0 || terminal_value(s)) illegal(*this, a, s);
  GameState next = s;
  next.board[a] = mark_of(s.to_move);
  next.to_move = static_cast<std::int8_t>(1 - s.to_move);
  next.ply = s.ply + 1;
  return next;
}

std::uint64_t TicTacToe::position_hash(const GameState& s) const {
  std::uint64_t h = 0;
  for (int c = 0; c < 9; ++c) {
    if (s.board[c] == 1) h ^= zobrist_[c][0];
    else if (s.board[c] == -1) h ^= zobrist_[c][1];
  }
  return h;
}

bool TicTacToe::is_forcing(const GameState& s, ActionId a) const {
  const std::int8_t me = mark_of(s.to_move);
  for (const auto& line : kLines) {
    if (std::find(line.begin(), line.end(), a) == line.end()) continue;
    int mine = 0;
    int empty = 0;
    for (int c : line) {
      if (c == a) continue;
      if (s.board[c] == me) ++mine;
      else if (s.board[c] == 0) ++empty;
    }
    if (mine == 1 && empty == 1) return true;
  }
  return false;
}

std::string TicTacToe::action_name(ActionId a) const {
  if (a < 0 || a >= 9) return "?";
  std::string n;
  n += static_cast<char>('a' + a % 3);
  n += static_cast<char>('1' + a / 3);
  return n;
}

std::string TicTacToe::describe(const GameState& s) const {
  std::string out;
  for (int c = 0; c < 9; ++c) {
    out += s.board[c] == 1 ? 'X' : (s.board[c] == -1 ? 'O' : '.');
    if (c % 3 == 2 && c != 8) out += '/';
  }
  out += s.to_move == 0 ? " X" : " O";
  return out;
}

// ---------------------------------------------------------------------------
// Nim

Nim::Nim(std::vector<int> piles) : piles_(std::move(piles)) {
  if (piles_.empty()) throw ConfigError("nim needs at least one pile");
  for (int p : piles_) {
    if (p < 0 || p > 127) throw ConfigError("nim pile sizes must lie in [0, 127]");
  }
  std::uint64_t seed = kZobristSeed ^ 0x4e494dull;
  zobrist_.resize(piles_.size());
  for (std::size_t i = 0; i < piles_.size(); ++i) {
    zobrist_[i].resize(static_cast<std::size_t>(piles_[i]) + 1);
    for (auto& z : zobrist_[i]) z = seed = mix64(seed);
  }
}

std::string Nim::id() const {
  std::string s = "nim:";
  for (std::size_t i = 0; i < piles_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(piles_[i]);
  }
  return s;
}

GameState Nim::initial_state() const {
  GameState s;
  for (int p : piles_) s.board.push_back(static_cast<std::int8_t>(p));
  return s;
}

std::optional<Outcome> Nim::terminal_value(const GameState& s) const {
  if (std::all_of(s.board.begin(), s.board.end(), [](std::int8_t p) { return p == 0; })) {
    return Outcome::kLoss;
  }
  return std::nullopt;
}

std::vector<ActionId> Nim::legal_actions(const GameState& s) const {
  if (terminal_value(s)) terminal_query(*this, s);
  std::vector<ActionId> out;
  for (std::size_t p = 0; p < s.board.size(); ++p) {
    for (int take = 1; take <= s.board[p]; ++take) out.push_back(encode(static_cast<int>(p), take));
  }
  return out;
}

GameState Nim::apply(const GameState& s, ActionId a) const {
  if (a < 0) illegal(*this, a, s);
  const int pile = pile_of(a);
  const int take = take_of(a);
  if (pile >= static_cast<int>(s.board.size()) || take > s.board[pile]) illegal(*this, a, s);
  GameState next = s;
  next.board[pile] = static_cast<std::int8_t>(next.board[pile] - take);
  next.to_move = static_cast<std::int8_t>(1 - s.to_move);
  next.ply = s.ply + 1;
  return next;
}

std::uint64_t Nim::position_hash(const GameState& s) const {
  std::uint64_t h = 0;
  for (std::size_t p = 0; p < s.board.size(); ++p) h ^= zobrist_[p][static_cast<std::size_t>(s.board[p])];
  return h;
}

bool Nim::is_forcing(const GameState& s, ActionId a) const {
  const int pile = pile_of(a);
  int nonempty = 0;
  for (std::size_t p = 0; p < s.board.size(); ++p) {
    int left = s.board[p] - (static_cast<int>(p) == pile ? take_of(a) : 0);
    if (left > 0) ++nonempty;
  }
  return nonempty == 1;
}

std::string Nim::action_name(ActionId a) const {
  return "p" + std::to_string(pile_of(a)) + "-" + std::to_string(take_of(a));
}

std::string Nim::describe(const GameState& s) const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < s.board.size(); ++i) {
    if (i) os << ',';
    os << int{s.board[i]};
  }
  os << "] ply=" << s.ply;
  return os.str();
}

int Nim::nim_sum(const GameState& s) {
  int x = 0;
  for (std::int8_t p : s.board) x ^= p;
  return x;
}

// ---------------------------------------------------------------------------
// LeftRight

LeftRight::LeftRight(int length) : length_(length) {
  if (length < 2 || length > 120) throw ConfigError("leftright length must lie in [2, 120]");
}

std::string LeftRight::id() const { return "leftright:" + std::to_string(length_); }

GameState LeftRight::initial_state() const { return GameState{{0, 0}, 0, 0}; }

std::optional<Outcome> LeftRight::terminal_value(const GameState& s) const {
  if (s.board[1] > 0) return Outcome::kWin;
  if (s.board[1] < 0) return Outcome::kLoss;
  return std::nullopt;
}

std::vector<ActionId> LeftRight::legal_actions(const GameState& s) const {
  if (terminal_value(s)) terminal_query(*this, s);
  return {kLeft, kRight};
}

GameState LeftRight::apply(const GameState& s, ActionId a) const {
  if ((a != kLeft && a != kRight) || terminal_value(s)) illegal(*this, a, s);
  GameState next = s;
  next.ply = s.ply + 1;
  if (a == kLeft) {
    next.board[1] = -1;
  } else {
    next.board[0] = static_cast<std::int8_t>(s.board[0] + 1);
    if (next.board[0] == length_ - 1) next.board[1] = 1;
  }
  return next;
}

std::uint64_t LeftRight::position_hash(const GameState& s) const {
  return mix64(kZobristSeed ^ 0x4c52ull ^ (static_cast<std::uint64_t>(s.board[0]) << 8) ^
               static_cast<std::uint64_t>(static_cast<std::uint8_t>(s.board[1])));
}

std::string LeftRight::action_name(ActionId a) const { return a == kLeft ? "L" : (a == kRight ? "R" : "?"); }

std::string LeftRight::describe(const GameState& s) const {
  return "cell=" + std::to_string(s.board[0]) + "/" + std::to_string(length_ - 1) +
         (s.board[1] > 0 ? " won" : (s.board[1] < 0 ? " lost" : ""));
}

}  // namespace mcgs
