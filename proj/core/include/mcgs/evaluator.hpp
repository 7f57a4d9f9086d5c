#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcgs/game.hpp"

namespace mcgs {

class OracleTable;

// Leaf evaluation: value for the side to move, priors aligned with
// Game::legal_actions order.
struct Evaluation {
  double value = 0.0;
  std::vector<double> priors;
};

// Stands in for the policy/value network. Implementations are stateless after
// construction and deterministic per state.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual std::string id() const = 0;
  // Throws ContractViolation on terminal states.
  virtual Evaluation evaluate(const GameState& state) const = 0;
};

class UniformEvaluator final : public Evaluator {
 public:
  explicit UniformEvaluator(const Game& game) : game_(game) {}
  std::string id() const override { return "uniform"; }
  Evaluation evaluate(const GameState& state) const override;

 private:
  const Game& game_;
};

// Closed-form per-game scores. With `deceptive` set the value sign is flipped,
// which produces an evaluator that is confidently wrong everywhere.
class HeuristicEvaluator final : public Evaluator {
 public:
  HeuristicEvaluator(const Game& game, bool deceptive) : game_(game), deceptive_(deceptive) {}
  std::string id() const override { return deceptive_ ? "deceptive" : "heuristic"; }
  Evaluation evaluate(const GameState& state) const override;

  // Undistorted heuristic value in [-0.9, 0.9].
  double heuristic_value(const GameState& state) const;

 private:
  const Game& game_;
  bool deceptive_;
};

// Perfect-information evaluator backed by the exhaustive negamax table:
// value is the game-theoretic outcome, priors are uniform over optimal moves.
class OracleEvaluator final : public Evaluator {
 public:
  explicit OracleEvaluator(const Game& game);
  ~OracleEvaluator() override;
  std::string id() const override { return "oracle"; }
  Evaluation evaluate(const GameState& state) const override;

 private:
  const Game& game_;
  std::unique_ptr<OracleTable> table_;
};

// "uniform", "heuristic", "deceptive", "oracle". Throws ConfigError.
std::unique_ptr<Evaluator> make_evaluator(std::string_view id, const Game& game);

// Raises each prior to 1/node_tau and renormalizes. Throws ContractViolation
// for node_tau <= 0.
std::vector<double> apply_node_temperature(std::span<const double> priors, double node_tau);

// Throws ContractViolation if priors are not a distribution or the value is
// out of range.
void validate(const Evaluation& eval, std::size_t num_actions);

struct EvalRequest {
  std::size_t handle = 0;  // caller's trajectory index
  GameState state;
};

struct EvalResult {
  std::size_t handle = 0;
  Evaluation evaluation;
};

// FIFO mini-batch queue. Reaching `capacity` pending requests forces a flush;
// results come back in submission order.
class BatchQueue {
 public:
  BatchQueue(const Evaluator& evaluator, std::size_t capacity);

  // Returns the flushed batch when this submission filled the queue.
  std::optional<std::vector<EvalResult>> submit(EvalRequest request);
  std::vector<EvalResult> flush();

  std::size_t pending() const { return pending_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::size_t evaluations() const { return evaluations_; }

 private:
  const Evaluator& evaluator_;
  std::size_t capacity_;
  std::vector<EvalRequest> pending_;
  std::size_t evaluations_ = 0;
};

}  // namespace mcgs
