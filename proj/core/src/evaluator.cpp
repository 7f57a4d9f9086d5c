#include "mcgs/evaluator.hpp"

#include <cmath>
#include <numeric>

#include "mcgs/games.hpp"
#include "mcgs/oracle.hpp"

namespace mcgs {

namespace {

void require_live(const Game& game, const GameState& state) {
  if (game.is_terminal(state)) {
    throw ContractViolation("evaluate called on terminal state " + game.describe(state));
  }
}

std::vector<double> uniform(std::size_t n) { return std::vector<double>(n, 1.0 / static_cast<double>(n)); }

void normalize(std::vector<double>& p) {
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  if (sum <= 0.0) return;
  for (double& x : p) x /= sum;
}

double ttt_score(const GameState& s) {
  constexpr int kWeight[3] = {0, 1, 3};
  const std::int8_t me = TicTacToe::mark_of(s.to_move);
  int score = 0;
  for (const auto& line : TicTacToe::kLines) {
    int own = 0;
    int opp = 0;
    for (int c : line) {
      if (s.board[c] == me) ++own;
      else if (s.board[c] == -me) ++opp;
    }
    if (opp == 0 && own > 0 && own < 3) score += kWeight[own];
    if (own == 0 && opp > 0 && opp < 3) score -= kWeight[opp];
  }
  return 0.9 * std::tanh(score / 6.0);
}

std::vector<double> ttt_priors(const GameState& s, const std::vector<ActionId>& actions) {
  const std::int8_t me = TicTacToe::mark_of(s.to_move);
  std::vector<double> p;
  p.reserve(actions.size());
  for (ActionId a : actions) {
    double w = 1.0;
    for (const auto& line : TicTacToe::kLines) {
      if (line[0] != a && line[1] != a && line[2] != a) continue;
      int own = 0;
      int opp = 0;
      for (int c : line) {
        if (s.board[c] == me) ++own;
        else if (s.board[c] == -me) ++opp;
      }
      if (opp == 0) w += 1.0 + 4.0 * (own == 2);
      if (own == 0 && opp == 2) w += 2.0;
    }
    p.push_back(w);
  }
  normalize(p);
  return p;
}

}  // namespace

Evaluation UniformEvaluator::evaluate(const GameState& state) const {
  require_live(game_, state);
  return Evaluation{0.0, uniform(game_.legal_actions(state).size())};
}

double HeuristicEvaluator::heuristic_value(const GameState& state) const {
  if (dynamic_cast<const TicTacToe*>(&game_)) return ttt_score(state);
  if (dynamic_cast<const Nim*>(&game_)) return Nim::nim_sum(state) != 0 ? 0.9 : -0.9;
  if (const auto* lr = dynamic_cast<const LeftRight*>(&game_)) {
    return 0.9 * (2.0 * state.board[0] / static_cast<double>(lr->length() - 1) - 1.0);
  }
  return 0.0;
}

Evaluation HeuristicEvaluator::evaluate(const GameState& state) const {
  require_live(game_, state);
  const auto actions = game_.legal_actions(state);
  Evaluation e;
  e.value = heuristic_value(state);
  if (deceptive_) e.value = -e.value;
  e.priors = dynamic_cast<const TicTacToe*>(&game_) ? ttt_priors(state, actions) : uniform(actions.size());
  return e;
}

OracleEvaluator::OracleEvaluator(const Game& game)
    : game_(game), table_(std::make_unique<OracleTable>(game)) {
  table_->solve(game.initial_state());
}

OracleEvaluator::~OracleEvaluator() = default;

Evaluation OracleEvaluator::evaluate(const GameState& state) const {
  require_live(game_, state);
  auto lookup = [&](const GameState& s) -> SolvedEntry {
    if (const SolvedEntry* e = table_->find(game_.state_key(s))) return *e;
    return negamax_solve(game_, s);
  };
  const auto actions = game_.legal_actions(state);
  const SolvedEntry here = lookup(state);
  const bool flip = game_.num_players() == 2;

  Evaluation e;
  e.value = outcome_value(here.outcome);
  e.priors.assign(actions.size(), 0.0);
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const Outcome child = lookup(game_.apply(state, actions[i])).outcome;
    if ((flip ? negate(child) : child) == here.outcome) e.priors[i] = 1.0;
  }
  normalize(e.priors);
  return e;
}

std::unique_ptr<Evaluator> make_evaluator(std::string_view id, const Game& game) {
  if (id == "uniform") return std::make_unique<UniformEvaluator>(game);
  if (id == "heuristic") return std::make_unique<HeuristicEvaluator>(game, false);
  if (id == "deceptive") return std::make_unique<HeuristicEvaluator>(game, true);
  if (id == "oracle") return std::make_unique<OracleEvaluator>(game);
  throw ConfigError("unknown evaluator '" + std::string(id) + "'");
}

std::vector<double> apply_node_temperature(std::span<const double> priors, double node_tau) {
  if (!(node_tau > 0.0)) {
    throw ContractViolation("node temperature must be positive, got " + std::to_string(node_tau));
  }
  std::vector<double> out(priors.begin(), priors.end());
  if (node_tau == 1.0) return out;
  const double inv = 1.0 / node_tau;
  for (double& p : out) p = std::pow(p, inv);
  normalize(out);
  return out;
}

void validate(const Evaluation& eval, std::size_t num_actions) {
  if (eval.priors.size() != num_actions) {
    throw ContractViolation("evaluation has " + std::to_string(eval.priors.size()) + " priors for " +
                            std::to_string(num_actions) + " legal actions");
  }
  double sum = 0.0;
  for (double p : eval.priors) {
    if (!(p >= 0.0)) throw ContractViolation("negative or NaN prior");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) throw ContractViolation("priors sum to " + std::to_string(sum));
  if (!(eval.value >= kValueMin && eval.value <= kValueMax)) {
    throw ContractViolation("evaluation value " + std::to_string(eval.value) + " outside [-1, 1]");
  }
}

BatchQueue::BatchQueue(const Evaluator& evaluator, std::size_t capacity)
    : evaluator_(evaluator), capacity_(capacity == 0 ? 1 : capacity) {
  pending_.reserve(capacity_);
}

std::optional<std::vector<EvalResult>> BatchQueue::submit(EvalRequest request) {
  pending_.push_back(std::move(request));
  if (pending_.size() >= capacity_) return flush();
  return std::nullopt;
}

std::vector<EvalResult> BatchQueue::flush() {
  std::vector<EvalResult> out;
  out.reserve(pending_.size());
  for (auto& req : pending_) out.push_back(EvalResult{req.handle, evaluator_.evaluate(req.state)});
  evaluations_ += pending_.size();
  pending_.clear();
  return out;
}

}  // namespace mcgs
