#include "mcgs/search_config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "mcgs/types.hpp"

namespace mcgs {

namespace {

std::string canonical(std::string_view key) {
  std::string k(key);
  std::replace(k.begin(), k.end(), '_', '-');
  return k;
}

double to_double(std::string_view key, std::string_view v) {
  std::string s(v);
  char* end = nullptr;
  double d = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError("key '" + std::string(key) + "': expected a number, got '" + s + "'");
  }
  return d;
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
  std::uint64_t u = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), u);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("key '" + std::string(key) + "': expected a non-negative integer, got '" +
                      std::string(v) + "'");
  }
  return u;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError("key '" + std::string(key) + "': expected a boolean, got '" + std::string(v) + "'");
}

std::string fmt(double d) {
  std::ostringstream os;
  os.precision(17);
  os << d;
  return os.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_string(BudgetKind kind) {
  switch (kind) {
    case BudgetKind::kSimulations: return "simulations";
    case BudgetKind::kEvaluations: return "evaluations";
    case BudgetKind::kMilliseconds: return "milliseconds";
  }
  return "?";
}

void SearchConfig::set(std::string_view raw_key, std::string_view value) {
  const std::string key = canonical(raw_key);
  value = trim(value);
  if (key == "c-puct-init") c_puct_init = to_double(key, value);
  else if (key == "c-puct-base") c_puct_base = to_double(key, value);
  else if (key == "q-epsilon") q_epsilon = to_double(key, value);
  else if (key == "eps-greedy") eps_greedy = to_double(key, value);
  else if (key == "eps-checks") eps_checks = to_double(key, value);
  else if (key == "q-weight") q_weight = to_double(key, value);
  else if (key == "node-tau") node_tau = to_double(key, value);
  else if (key == "tau") tau = to_double(key, value);
  else if (key == "mini-batch") mini_batch = static_cast<std::size_t>(to_uint(key, value));
  else if (key == "virtual-loss") virtual_loss = to_double(key, value);
  else if (key == "dirichlet-epsilon") dirichlet_epsilon = to_double(key, value);
  else if (key == "dirichlet-alpha") dirichlet_alpha = to_double(key, value);
  else if (key == "threads") threads = static_cast<int>(to_uint(key, value));
  else if (key == "q-init") q_init = to_double(key, value);
  else if (key == "budget-evals") budget = {BudgetKind::kEvaluations, to_uint(key, value)};
  else if (key == "budget-sims") budget = {BudgetKind::kSimulations, to_uint(key, value)};
  else if (key == "budget-ms") budget = {BudgetKind::kMilliseconds, to_uint(key, value)};
  else if (key == "transpositions") transpositions = to_bool(key, value);
  else if (key == "terminal-solver") terminal_solver = to_bool(key, value);
  else if (key == "explore") explore = to_bool(key, value);
  else if (key == "check-enhance") check_enhance = to_bool(key, value);
  else if (key == "q-boost") q_boost = to_bool(key, value);
  else if (key == "terminal-cap-factor") terminal_cap_factor = static_cast<std::size_t>(to_uint(key, value));
  else if (key == "max-nodes") max_nodes = static_cast<std::size_t>(to_uint(key, value));
  else if (key == "seed") seed = to_uint(key, value);
  else throw ConfigError("unknown search key '" + std::string(raw_key) + "'");

  if (mini_batch == 0) throw ConfigError("mini-batch must be at least 1");
  if (!(node_tau > 0.0)) throw ConfigError("node-tau must be positive");
  if (tau < 0.0) throw ConfigError("tau must be non-negative");
  if (threads < 1) throw ConfigError("threads must be at least 1");
}

std::map<std::string, std::string> SearchConfig::dump() const {
  std::map<std::string, std::string> m;
  m["c-puct-init"] = fmt(c_puct_init);
  m["c-puct-base"] = fmt(c_puct_base);
  m["q-epsilon"] = fmt(q_epsilon);
  m["eps-greedy"] = fmt(eps_greedy);
  m["eps-checks"] = fmt(eps_checks);
  m["q-weight"] = fmt(q_weight);
  m["node-tau"] = fmt(node_tau);
  m["tau"] = fmt(tau);
  m["mini-batch"] = std::to_string(mini_batch);
  m["virtual-loss"] = fmt(virtual_loss);
  m["dirichlet-epsilon"] = fmt(dirichlet_epsilon);
  m["dirichlet-alpha"] = fmt(dirichlet_alpha);
  m["threads"] = std::to_string(threads);
  m["q-init"] = fmt(q_init);
  m["value-min"] = fmt(value_min);
  m["value-max"] = fmt(value_max);
  switch (budget.kind) {
    case BudgetKind::kEvaluations: m["budget-evals"] = std::to_string(budget.amount); break;
    case BudgetKind::kSimulations: m["budget-sims"] = std::to_string(budget.amount); break;
    case BudgetKind::kMilliseconds: m["budget-ms"] = std::to_string(budget.amount); break;
  }
  m["transpositions"] = transpositions ? "true" : "false";
  m["terminal-solver"] = terminal_solver ? "true" : "false";
  m["explore"] = explore ? "true" : "false";
  m["check-enhance"] = check_enhance ? "true" : "false";
  m["q-boost"] = q_boost ? "true" : "false";
  m["terminal-cap-factor"] = std::to_string(terminal_cap_factor);
  m["max-nodes"] = std::to_string(max_nodes);
  m["seed"] = std::to_string(seed);
  return m;
}

SearchConfig SearchConfig::tree_puct() {
  SearchConfig c;
  c.transpositions = false;
  c.terminal_solver = false;
  c.explore = false;
  c.check_enhance = false;
  c.q_boost = false;
  return c;
}

std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  int lineno = 0;
  while (!text.empty()) {
    ++lineno;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    }
    std::string_view k = trim(line.substr(0, eq));
    if (k.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    out.emplace_back(std::string(k), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

}  // namespace mcgs
