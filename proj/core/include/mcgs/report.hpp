#pragma once

#include <nlohmann/json.hpp>

#include "mcgs/arena.hpp"
#include "mcgs/game.hpp"
#include "mcgs/oracle.hpp"
#include "mcgs/search.hpp"

namespace mcgs {

nlohmann::json to_json(const MemoryReport& m);
nlohmann::json to_json(const SearchStats& s);
nlohmann::json to_json(const SearchResult& r, const Game& game, bool memory_stats = true);
nlohmann::json to_json(const EloEstimate& e);
nlohmann::json to_json(const MatchResult& r);
nlohmann::json to_json(const SearchConfig& c);

// Every position reachable from the initial state with its exact value,
// ordered by ply and then by description.
nlohmann::json oracle_dump(const Game& game);

}  // namespace mcgs
