#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mcgs {

enum class BudgetKind { kSimulations, kEvaluations, kMilliseconds };

struct Budget {
  BudgetKind kind = BudgetKind::kEvaluations;
  std::uint64_t amount = 800;
};

// Hyperparameters and feature toggles. Defaults are the tuned playing
// configuration.
struct SearchConfig {
  double c_puct_init = 2.5;
  double c_puct_base = 19652.0;
  double q_epsilon = 0.01;
  double eps_greedy = 0.01;
  double eps_checks = 0.01;
  double q_weight = 2.0;
  double node_tau = 1.7;
  double tau = 0.0;
  std::size_t mini_batch = 16;
  double virtual_loss = 1.0;
  double dirichlet_epsilon = 0.0;
  double dirichlet_alpha = 0.2;
  int threads = 2;
  double q_init = -1.0;
  double value_min = -1.0;
  double value_max = 1.0;

  Budget budget{};

  bool transpositions = true;
  bool terminal_solver = true;
  bool explore = true;        // epsilon-greedy disconnected trajectories
  bool check_enhance = true;  // forcing-move-first exploration
  bool q_boost = true;

  // Terminal/early-stop trajectories allowed per mini-batch, as a multiple of
  // mini_batch. They never occupy evaluator slots.
  std::size_t terminal_cap_factor = 4;
  // 0 = unbounded.
  std::size_t max_nodes = 0;
  std::uint64_t seed = 1;

  // Accepts the flag spelling ("q-epsilon") or the field name ("q_epsilon").
  // Throws ConfigError on unknown keys or malformed values.
  void set(std::string_view key, std::string_view value);

  // Every key/value pair in canonical flag spelling.
  std::map<std::string, std::string> dump() const;

  // Plain tree PUCT: no transpositions, solver, exploration or Q boost.
  static SearchConfig tree_puct();
};

std::string_view to_string(BudgetKind kind);

// Flat `key = value` text with '#' comments. Returns pairs in file order.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text);

}  // namespace mcgs
