#include "mcgs/solver.hpp"

#include <algorithm>
#include <charconv>
#include <vector>

#include "mcgs/games.hpp"
#include "mcgs/oracle.hpp"

namespace mcgs {

SolverStatus parent_view(SolverStatus child, int num_players) {
  if (num_players != 2) return child;
  switch (child) {
    case SolverStatus::kWin: return SolverStatus::kLoss;
    case SolverStatus::kLoss: return SolverStatus::kWin;
    case SolverStatus::kTbWin: return SolverStatus::kTbLoss;
    case SolverStatus::kTbLoss: return SolverStatus::kTbWin;
    default: return child;
  }
}

SolverStatus status_of(Outcome o) {
  switch (o) {
    case Outcome::kWin: return SolverStatus::kWin;
    case Outcome::kLoss: return SolverStatus::kLoss;
    case Outcome::kDraw: return SolverStatus::kDraw;
  }
  return SolverStatus::kUnknown;
}

double status_value(SolverStatus s) {
  if (is_win(s)) return 1.0;
  if (is_loss(s)) return -1.0;
  return 0.0;
}

std::optional<Outcome> status_outcome(SolverStatus s) {
  if (is_win(s)) return Outcome::kWin;
  if (is_loss(s)) return Outcome::kLoss;
  if (is_draw(s)) return Outcome::kDraw;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Endgame oracles

std::string NimXorOracle::id() const { return "nim-xor:" + std::to_string(max_stones_); }

std::optional<SolverStatus> NimXorOracle::probe(const GameState& state) const {
  int stones = 0;
  for (std::int8_t p : state.board) stones += p;
  if (stones == 0 || stones > max_stones_) return std::nullopt;
  return Nim::nim_sum(state) != 0 ? SolverStatus::kTbWin : SolverStatus::kTbLoss;
}

TableOracle::TableOracle(const Game& game, std::uint32_t min_ply)
    : game_(game), min_ply_(min_ply), table_(std::make_unique<OracleTable>(game)) {
  table_->solve(game.initial_state());
}

TableOracle::~TableOracle() = default;

std::string TableOracle::id() const { return "table:" + game_.id() + "@" + std::to_string(min_ply_); }

std::optional<SolverStatus> TableOracle::probe(const GameState& state) const {
  if (state.ply < min_ply_) return std::nullopt;
  const SolvedEntry* e = table_->find(game_.state_key(state));
  if (!e) return std::nullopt;
  switch (e->outcome) {
    case Outcome::kWin: return SolverStatus::kTbWin;
    case Outcome::kLoss: return SolverStatus::kTbLoss;
    case Outcome::kDraw: return SolverStatus::kTbDraw;
  }
  return std::nullopt;
}

std::unique_ptr<EndgameOracle> make_endgame_oracle(std::string_view id, const Game& game) {
  auto parse_uint = [&](std::string_view s) {
    unsigned v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
      throw ConfigError("bad number in endgame oracle id '" + std::string(id) + "'");
    }
    return v;
  };
  if (id.empty() || id == "none") return nullptr;
  if (id.starts_with("nim-xor")) {
    if (!dynamic_cast<const Nim*>(&game)) throw ConfigError("nim-xor oracle requires a nim game");
    std::string_view rest = id.substr(7);
    if (rest.empty()) return std::make_unique<NimXorOracle>();
    if (rest.front() != ':') throw ConfigError("unknown endgame oracle '" + std::string(id) + "'");
    return std::make_unique<NimXorOracle>(static_cast<int>(parse_uint(rest.substr(1))));
  }
  if (id.starts_with("table:")) {
    std::string_view rest = id.substr(6);
    std::uint32_t min_ply = 0;
    if (auto at = rest.rfind('@'); at != std::string_view::npos) {
      min_ply = parse_uint(rest.substr(at + 1));
      rest = rest.substr(0, at);
    }
    if (make_game(rest)->id() != game.id()) {
      throw ConfigError("endgame table for '" + std::string(rest) + "' does not match game " + game.id());
    }
    return std::make_unique<TableOracle>(game, min_ply);
  }
  throw ConfigError("unknown endgame oracle '" + std::string(id) + "'");
}

// ---------------------------------------------------------------------------
// Propagation

void prune(Edge& edge, double& prior) {
  edge.q = kPrunedQ;
  prior = 0.0;
}

namespace {

// Returns true when the node's status was newly set.
bool resolve(GraphStore& store, NodeId id, int num_players) {
  Node& node = store.node(id);
  if (!node.expanded) return false;

  std::uint32_t unknown = 0;
  std::optional<int> win, tb_win, draw, tb_draw;
  int longest = -1;
  bool all_exact = true;
  auto take_min = [](std::optional<int>& slot, int v) { slot = slot ? std::min(*slot, v) : v; };

  for (std::size_t i = 0; i < node.edges.size(); ++i) {
    Edge& e = node.edges[i];
    if (e.child_id == kNoNode) {
      ++unknown;
      continue;
    }
    const Node& child = store.node(e.child_id);
    if (!is_solved(child.status)) {
      ++unknown;
      continue;
    }
    const SolverStatus mine = parent_view(child.status, num_players);
    const int eip = child.end_in_ply.value_or(0) + 1;
    longest = std::max(longest, eip);
    if (is_tablebase(mine)) all_exact = false;
    switch (mine) {
      case SolverStatus::kWin: take_min(win, eip); break;
      case SolverStatus::kTbWin: take_min(tb_win, eip); break;
      case SolverStatus::kDraw: take_min(draw, eip); break;
      case SolverStatus::kTbDraw: take_min(tb_draw, eip); break;
      case SolverStatus::kLoss:
      case SolverStatus::kTbLoss:
        if (!e.pruned()) prune(e, node.priors[i]);
        break;
      case SolverStatus::kUnknown: break;
    }
  }
  node.unknown_children = unknown;
  if (is_solved(node.status)) return false;

  if (win) {
    node.status = SolverStatus::kWin;
    node.end_in_ply = *win;
  } else if (tb_win) {
    node.status = SolverStatus::kTbWin;
    node.end_in_ply = *tb_win;
  } else if (unknown == 0 && !node.edges.empty()) {
    if (draw) {
      node.status = SolverStatus::kDraw;
      node.end_in_ply = *draw;
    } else if (tb_draw) {
      node.status = SolverStatus::kTbDraw;
      node.end_in_ply = *tb_draw;
    } else {
      node.status = all_exact ? SolverStatus::kLoss : SolverStatus::kTbLoss;
      node.end_in_ply = longest;
    }
  } else {
    return false;
  }
  return true;
}

}  // namespace

bool solver_backprop(GraphStore& store, NodeId node, int num_players) {
  const bool changed = resolve(store, node, num_players);
  if (!changed) return false;
  std::vector<NodeId> work;
  for (const ParentRef& p : store.node(node).parents) work.push_back(p.node);
  while (!work.empty()) {
    const NodeId id = work.back();
    work.pop_back();
    if (resolve(store, id, num_players)) {
      for (const ParentRef& p : store.node(id).parents) work.push_back(p.node);
    }
  }
  return true;
}

bool on_expand_probe(GraphStore& store, NodeId id, const GameState& state, const EndgameOracle* oracle) {
  if (!oracle) return false;
  Node& node = store.node(id);
  if (is_solved(node.status)) return false;
  auto tb = oracle->probe(state);
  if (!tb) return false;
  node.status = *tb;
  node.end_in_ply = 0;
  return true;
}

ActionId solved_move(const GraphStore& store, NodeId id, int num_players) {
  const Node& node = store.node(id);
  if (!is_solved(node.status)) {
    throw ContractViolation("solved_move called on an unsolved node");
  }
  int best_index = -1;
  int best_eip = 0;
  std::uint32_t best_visits = 0;
  for (std::size_t i = 0; i < node.edges.size(); ++i) {
    const Edge& e = node.edges[i];
    if (e.child_id == kNoNode) continue;
    const Node& child = store.node(e.child_id);
    if (!is_solved(child.status)) continue;
    const SolverStatus mine = parent_view(child.status, num_players);
    const int eip = child.end_in_ply.value_or(0);
    const int idx = static_cast<int>(i);
    if (is_win(node.status)) {
      const bool ok = node.status == SolverStatus::kWin ? mine == SolverStatus::kWin : is_win(mine);
      if (ok && (best_index < 0 || eip < best_eip)) best_index = idx, best_eip = eip;
    } else if (is_loss(node.status)) {
      if (best_index < 0 || eip > best_eip) best_index = idx, best_eip = eip;
    } else {
      const bool ok = node.status == SolverStatus::kDraw ? mine == SolverStatus::kDraw : is_draw(mine);
      if (ok && (best_index < 0 || e.n > best_visits)) best_index = idx, best_visits = e.n;
    }
  }
  if (best_index < 0) {
    throw ContractViolation("no child carries the proof of a " + std::string(to_string(node.status)) + " node");
  }
  return node.edges[static_cast<std::size_t>(best_index)].action;
}

}  // namespace mcgs
