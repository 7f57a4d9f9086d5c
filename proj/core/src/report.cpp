#include "mcgs/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mcgs {

using nlohmann::json;

namespace {

// JSON has no infinities; unbounded Elo values become strings.
json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json optional_int(const std::optional<int>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

json to_json(const MemoryReport& m) {
  return {{"node_count", m.node_count},
          {"edge_count", m.edge_count},
          {"prior_entry_count", m.prior_entry_count},
          {"trajectory_buffer_size", m.trajectory_buffer_size},
          {"tree_equivalent_node_count", m.tree_equivalent_node_count},
          {"transposition_joins", m.transposition_joins},
          {"approx_bytes", m.approx_bytes}};
}

json to_json(const SearchStats& s) {
  return {{"simulations", s.simulations},     {"evaluations", s.evaluations},
          {"early_stops", s.early_stops},     {"terminal_hits", s.terminal_hits},
          {"collisions", s.collisions},       {"explorations", s.explorations},
          {"discarded_branches", s.discarded_branches}, {"batches", s.batches}};
}

json to_json(const SearchResult& r, const Game& game, bool memory_stats) {
  json actions = json::array();
  for (const auto& a : r.root_actions) {
    actions.push_back({{"action", a.action},
                       {"move", game.action_name(a.action)},
                       {"visits", a.visits},
                       {"q", number(a.q)},
                       {"prior", a.prior},
                       {"policy", a.policy},
                       {"pruned", a.pruned},
                       {"child_status", to_string(a.child_status)}});
  }
  json pv = json::array();
  for (ActionId a : r.principal_variation) pv.push_back(game.action_name(a));
  json out = {{"selected", r.selected ? json(*r.selected) : json(nullptr)},
              {"selected_move", r.selected ? json(game.action_name(*r.selected)) : json(nullptr)},
              {"root_status", to_string(r.root_status)},
              {"root_end_in_ply", optional_int(r.root_end_in_ply)},
              {"root_value", r.root_value},
              {"root_visits", r.root_visits},
              {"q_boosted", r.policy.boosted},
              {"solver_move", r.policy.solver_override},
              {"principal_variation", pv},
              {"actions", actions},
              {"stats", to_json(r.stats)},
              {"wall_ms", r.wall_ms},
              {"out_of_memory", r.out_of_memory}};
  if (memory_stats) out["memory"] = to_json(r.memory);
  return out;
}

json to_json(const EloEstimate& e) {
  return {{"score", e.score},
          {"elo", number(e.elo)},
          {"elo_low", number(e.elo_low)},
          {"elo_high", number(e.elo_high)},
          {"score_low", e.score_low},
          {"score_high", e.score_high}};
}

json to_json(const MatchResult& r) {
  json games = json::array();
  for (const auto& g : r.games) {
    games.push_back({{"opening", g.opening},
                     {"a_first", g.a_first},
                     {"opening_moves", g.opening_moves},
                     {"moves", g.moves},
                     {"a_points", g.a_points},
                     {"termination", g.termination},
                     {"a_evaluations", g.a_evaluations},
                     {"b_evaluations", g.b_evaluations},
                     {"a_nodes", g.a_nodes},
                     {"b_nodes", g.b_nodes}});
  }
  return {{"game", r.game},
          {"engine_a", r.engine_a},
          {"engine_b", r.engine_b},
          {"wins", r.wins},
          {"draws", r.draws},
          {"losses", r.losses},
          {"total", r.wins + r.draws + r.losses},
          {"estimate", to_json(r.estimate)},
          {"games", games}};
}

json to_json(const SearchConfig& c) {
  json out = json::object();
  for (const auto& [k, v] : c.dump()) out[k] = v;
  return out;
}

json oracle_dump(const Game& game) {
  const SolvedMap table = solved_table(game);
  // Re-walk the game to pair keys with readable positions.
  std::map<std::pair<std::uint32_t, std::string>, SolvedEntry> rows;
  std::vector<GameState> stack{game.initial_state()};
  std::unordered_map<StateKey, bool, StateKeyHash> seen;
  while (!stack.empty()) {
    GameState s = std::move(stack.back());
    stack.pop_back();
    const StateKey k = game.state_key(s);
    if (!seen.emplace(k, true).second) continue;
    rows.emplace(std::make_pair(s.ply, game.describe(s)), table.at(k));
    if (game.is_terminal(s)) continue;
    for (ActionId a : game.legal_actions(s)) stack.push_back(game.apply(s, a));
  }
  json positions = json::array();
  for (const auto& [key, e] : rows) {
    positions.push_back(
        {{"ply", key.first}, {"position", key.second}, {"outcome", to_string(e.outcome)}, {"distance", e.distance}});
  }
  const auto root = table.at(game.state_key(game.initial_state()));
  return {{"game", game.id()},
          {"positions", positions.size()},
          {"root", {{"outcome", to_string(root.outcome)}, {"distance", root.distance}}},
          {"table", positions}};
}

}  // namespace mcgs
