#include "mcgs/search.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace mcgs {

namespace {

// |Q_delta| at exactly q_epsilon must not trigger on rounding noise.
constexpr double kEpsilonSlack = 1e-12;
// Batches in a row that reached no new leaf before an evaluation- or
// simulation-bound search gives up (the reachable graph is exhausted).
constexpr std::size_t kStallBatches = 64;

// Proven nodes that search cannot improve: exact results, and tablebase
// losses whose every move is already refuted.
bool settled(const Node& n) {
  if (is_exact(n.status)) return true;
  return is_solved(n.status) && n.expanded &&
         std::all_of(n.edges.begin(), n.edges.end(), [](const Edge& e) { return e.pruned(); });
}

std::uint64_t action_salt(ActionId a) {
  return mix64(static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) + 0x51ed2705ull);
}

}  // namespace

double cpuct(double total_visits, double c_init, double c_base) {
  return std::log((total_visits + c_base + 1.0) / c_base) + c_init;
}

double q_residual(double q, double v_star) { return q - v_star; }

double correction_value(std::uint32_t n, double q, double v_star) {
  return clip_value(static_cast<double>(n) * (v_star - q) + v_star);
}

struct Search::Worker {
  Rng rng;
  std::vector<Trajectory> batch;
};

Search::Search(const Game& game, const Evaluator& evaluator, SearchConfig config, const EndgameOracle* endgame)
    : game_(game),
      evaluator_(evaluator),
      config_(std::move(config)),
      endgame_(endgame),
      players_(game.num_players()),
      sign_(game.perspective_sign()),
      store_(config_.max_nodes),
      rng_(config_.seed) {
  if (config_.mini_batch == 0) throw ConfigError("mini-batch must be at least 1");
  if (config_.threads < 1) throw ConfigError("threads must be at least 1");
  if (config_.node_tau <= 0.0) throw ConfigError("node-tau must be positive");
  if (config_.tau < 0.0) throw ConfigError("tau must be non-negative");
}

StateKey Search::child_key(const StateKey& parent, const GameState& child_state, ActionId action) const {
  if (config_.transpositions) return game_.state_key(child_state);
  // Tree mode: one node per path.
  return StateKey{mix64(parent.hash ^ action_salt(action)) ^ ply_feature(child_state.ply), child_state.ply};
}

NodeId Search::set_root(const GameState& state) {
  if (root_ != kNoNode && state == root_state_) return root_;
  store_.clear();
  root_state_ = state;
  root_ = store_.lookup_or_insert(game_.state_key(state)).first;
  if (auto t = game_.terminal_value(state)) {
    Node& r = store_.node(root_);
    r.terminal = *t;
    if (config_.terminal_solver) {
      r.status = status_of(*t);
      r.end_in_ply = 0;
    }
  }
  return root_;
}

NodeId Search::advance(std::span<const ActionId> played) {
  if (root_ == kNoNode) throw ContractViolation("advance before any root was set");
  GameState state = root_state_;
  NodeId node = root_;
  StateKey key = store_.node(root_).key;
  for (ActionId a : played) {
    GameState next = game_.apply(state, a);
    NodeId child = kNoNode;
    if (node != kNoNode) {
      for (const Edge& e : store_.node(node).edges) {
        if (e.action == a) child = e.child_id;
      }
    }
    key = child != kNoNode ? store_.node(child).key : child_key(key, next, a);
    if (child == kNoNode) child = store_.find(key);
    node = child;
    state = std::move(next);
  }
  if (node == kNoNode) {
    node = store_.lookup_or_insert(key).first;
    if (auto t = game_.terminal_value(state)) {
      Node& r = store_.node(node);
      r.terminal = *t;
      if (config_.terminal_solver) {
        r.status = status_of(*t);
        r.end_in_ply = 0;
      }
    }
  }
  root_ = node;
  root_state_ = std::move(state);
  return root_;
}

std::uint32_t Search::puct_select(NodeId id) const {
  const Node& node = store_.node(id);
  if (node.edges.empty()) throw ContractViolation("selection at an unexpanded node");

  double total = 0.0;
  for (const Edge& e : node.edges) total += e.n + e.virtual_loss;

  bool mask_solved = false;
  if (config_.terminal_solver) {
    for (const Edge& e : node.edges) {
      if (e.pruned()) continue;
      if (e.child_id == kNoNode || !settled(store_.node(e.child_id))) {
        mask_solved = true;
        break;
      }
    }
  }

  const double c = cpuct(total, config_.c_puct_init, config_.c_puct_base);
  const double sqrt_total = std::sqrt(total);
  double best = -std::numeric_limits<double>::infinity();
  int pick = -1;
  for (std::size_t i = 0; i < node.edges.size(); ++i) {
    const Edge& e = node.edges[i];
    if (e.pruned()) continue;
    if (mask_solved && e.child_id != kNoNode && settled(store_.node(e.child_id))) continue;
    const double visits = e.n + e.virtual_loss;
    const double q =
        visits == 0.0 ? e.q : (e.n * e.q - e.virtual_loss * config_.virtual_loss) / visits;
    const double score = q + c * node.priors[i] * sqrt_total / (1.0 + visits);
    if (pick < 0 || score > best) {
      best = score;
      pick = static_cast<int>(i);
    }
  }
  if (pick < 0) throw ContractViolation("every move at the node is pruned");
  return static_cast<std::uint32_t>(pick);
}

void Search::expand(NodeId id, const GameState& state, const Evaluation& evaluation) {
  Node& node = store_.node(id);
  if (node.expanded) throw ContractViolation("node expanded twice");
  if (node.terminal) throw ContractViolation("terminal nodes are not expanded");

  const auto actions = game_.legal_actions(state);
  validate(evaluation, actions.size());
  const auto priors = apply_node_temperature(evaluation.priors, config_.node_tau);

  std::vector<std::size_t> order(actions.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return priors[a] > priors[b]; });

  node.edges.clear();
  node.priors.clear();
  node.edges.reserve(actions.size());
  node.priors.reserve(actions.size());
  for (std::size_t i : order) {
    Edge e;
    e.action = actions[i];
    e.q = config_.q_init;
    node.edges.push_back(e);
    node.priors.push_back(priors[i]);
  }
  node.v = clip_value(evaluation.value);
  node.n = 1;
  node.expanded = true;
  node.pending = false;
  node.unknown_children = static_cast<std::uint32_t>(node.edges.size());

  if (!config_.terminal_solver) return;
  // Terminal children are linked right away so the solver sees them.
  const StateKey key = node.key;
  for (std::uint32_t i = 0; i < store_.node(id).edges.size(); ++i) {
    const ActionId a = store_.node(id).edges[i].action;
    GameState next = game_.apply(state, a);
    auto t = game_.terminal_value(next);
    if (!t) continue;
    // With the store full the link is left to selection, which reports it.
    if (store_.full() && store_.find(child_key(key, next, a)) == kNoNode) break;
    auto [cid, existed] = store_.connect(id, i, child_key(key, next, a));
    Node& c = store_.node(cid);
    if (!existed) {
      c.terminal = *t;
      c.status = status_of(*t);
      c.end_in_ply = 0;
    }
  }
  on_expand_probe(store_, id, state, endgame_);
  solver_backprop(store_, id, players_);
}

Trajectory Search::select_and_expand(NodeId start, const GameState& start_state,
                                     std::optional<std::uint32_t> forced_edge) {
  Trajectory t;
  NodeId id = start;
  GameState state = start_state;
  for (;;) {
    const std::uint32_t ei = forced_edge ? *forced_edge : puct_select(id);
    forced_edge.reset();
    {
      Node& n = store_.node(id);
      n.virtual_loss += 1;
      n.edges[ei].virtual_loss += 1;
    }
    t.steps.push_back({id, ei});

    const ActionId action = store_.node(id).edges[ei].action;
    GameState next = game_.apply(state, action);
    NodeId cid = store_.node(id).edges[ei].child_id;
    if (cid == kNoNode) {
      std::pair<NodeId, bool> linked;
      try {
        linked = store_.connect(id, ei, child_key(store_.node(id).key, next, action));
      } catch (const OutOfMemory&) {
        release_virtual_loss(t);
        throw;
      }
      auto [nid, existed] = linked;
      cid = nid;
      Node& c = store_.node(cid);
      if (!existed) {
        if (auto term = game_.terminal_value(next)) {
          c.terminal = *term;
          if (config_.terminal_solver) {
            c.status = status_of(*term);
            c.end_in_ply = 0;
          }
        }
      }
      // A new link to a proven node (fresh terminal or transposition) can
      // prove the parent.
      if (config_.terminal_solver && is_solved(c.status)) solver_backprop(store_, id, players_);
    }

    Node& c = store_.node(cid);
    const Edge& e = store_.node(id).edges[ei];
    t.leaf = cid;
    if (c.pending) {
      t.end = TrajectoryEnd::kCollision;
      return t;
    }
    if (c.terminal) {
      t.end = TrajectoryEnd::kTerminal;
      t.value = outcome_value(*c.terminal);
      return t;
    }
    if (config_.terminal_solver && settled(c)) {
      t.end = TrajectoryEnd::kTerminal;
      t.value = status_value(c.status);
      return t;
    }
    if (config_.transpositions && c.expanded && c.n > e.n && !e.pruned()) {
      const double v_star = sign_ * c.v;
      if (std::abs(q_residual(e.q, v_star)) > config_.q_epsilon + kEpsilonSlack) {
        t.end = TrajectoryEnd::kEarlyStop;
        // Stored from the child's side so backpropagate can flip it uniformly.
        t.value = sign_ * correction_value(e.n, e.q, v_star);
        return t;
      }
    }
    if (!c.expanded) {
      c.pending = true;
      t.end = TrajectoryEnd::kExpand;
      t.leaf_state = std::move(next);
      return t;
    }
    id = cid;
    state = std::move(next);
  }
}

void Search::release_virtual_loss(const Trajectory& t) {
  for (const auto& s : t.steps) {
    Node& n = store_.node(s.node);
    n.virtual_loss -= 1;
    n.edges[s.edge].virtual_loss -= 1;
  }
}

void Search::backpropagate(const Trajectory& t) {
  if (t.end == TrajectoryEnd::kCollision) {
    release_virtual_loss(t);
    return;
  }
  double value = t.value;
  if (t.end == TrajectoryEnd::kTerminal) update_node_value(store_.node(t.leaf), value);

  std::optional<double> q_target;
  for (auto it = t.steps.rbegin(); it != t.steps.rend(); ++it) {
    Node& n = store_.node(it->node);
    Edge& e = n.edges[it->edge];
    if (q_target && !e.pruned()) {
      value = correction_value(e.n, e.q, *q_target);
    } else if (q_target) {
      value = *q_target;
    } else {
      value = sign_ * value;
    }
    n.virtual_loss -= 1;
    e.virtual_loss -= 1;
    update_edge_sma(e, value);
    update_node_value(n, value);
    if (config_.transpositions && n.is_transposition()) {
      q_target = sign_ * n.v;
    } else {
      q_target.reset();
    }
  }
}

std::optional<Trajectory> Search::execute_branch(const BranchPlan& plan, Rng& rng) {
  NodeId id = root_;
  GameState state = root_state_;
  for (ActionId a : plan.path) {
    NodeId next = kNoNode;
    for (const Edge& e : store_.node(id).edges) {
      if (e.action == a) next = e.child_id;
    }
    if (next == kNoNode) return std::nullopt;
    state = game_.apply(state, a);
    id = next;
  }
  const Node& b = store_.node(id);
  if (b.terminal || !b.expanded || b.pending) return std::nullopt;
  if (config_.terminal_solver && settled(b)) return std::nullopt;
  auto edge = choose_branch_edge(store_, id, plan.kind, game_, state, rng);
  if (!edge) return std::nullopt;
  Trajectory t = select_and_expand(id, state, *edge);
  t.exploration = true;
  return t;
}

void Search::apply_dirichlet(Node& root) {
  if (config_.dirichlet_epsilon <= 0.0 || root.priors.size() < 2) return;
  std::gamma_distribution<double> gamma(config_.dirichlet_alpha, 1.0);
  std::vector<double> eta(root.priors.size());
  double sum = 0.0;
  for (double& x : eta) sum += x = gamma(rng_);
  if (sum <= 0.0) return;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (root.edges[i].pruned()) continue;
    root.priors[i] = (1.0 - config_.dirichlet_epsilon) * root.priors[i] + config_.dirichlet_epsilon * eta[i] / sum;
  }
}

void Search::expand_root_locked() {
  Node& r = store_.node(root_);
  if (r.expanded || r.terminal) return;
  const Evaluation ev = evaluator_.evaluate(root_state_);
  expand(root_, root_state_, ev);
  apply_dirichlet(store_.node(root_));
  stats_.evaluations += 1;
  stats_.simulations += 1;
}

bool Search::budget_allows_locked(std::size_t reserved_evals, std::size_t reserved_sims) const {
  const Budget& b = config_.budget;
  switch (b.kind) {
    case BudgetKind::kEvaluations:
      return stats_.evaluations + reserved_evals < b.amount;
    case BudgetKind::kSimulations:
      return stats_.simulations + reserved_sims < b.amount;
    case BudgetKind::kMilliseconds: {
      const auto elapsed = std::chrono::steady_clock::now() - started_;
      return std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() <
             static_cast<std::int64_t>(b.amount);
    }
  }
  return false;
}

bool Search::finished_locked() const {
  if (out_of_memory_) return true;
  const Node& r = store_.node(root_);
  if (r.terminal) return true;
  if (config_.terminal_solver && settled(r)) return true;
  if (zero_eval_batches_ >= kStallBatches && in_flight_evals_ == 0) return true;
  return !budget_allows_locked(in_flight_evals_, in_flight_evals_);
}

Trajectory Search::simulate_locked(Worker& w) {
  if (config_.explore || config_.check_enhance) {
    if (auto plan = maybe_branch(w.rng, config_, store_, root_)) {
      if (auto t = execute_branch(*plan, w.rng)) {
        ++stats_.explorations;
        return std::move(*t);
      }
      ++stats_.discarded_branches;
    }
  }
  return select_and_expand(root_, root_state_);
}

void Search::worker_loop(Worker& w) {
  const std::size_t free_cap = std::max<std::size_t>(1, config_.terminal_cap_factor * config_.mini_batch);
  BatchQueue queue(evaluator_, config_.mini_batch);
  for (;;) {
    w.batch.clear();
    {
      std::lock_guard lock(mu_);
      if (finished_locked()) return;
      std::size_t free_count = 0;
      while (w.batch.size() < config_.mini_batch && free_count < free_cap) {
        const std::size_t reserved = in_flight_evals_;
        if (!budget_allows_locked(reserved, reserved)) break;
        if (config_.terminal_solver && settled(store_.node(root_))) break;
        Trajectory t;
        try {
          t = simulate_locked(w);
        } catch (const OutOfMemory&) {
          out_of_memory_ = true;
          break;
        }
        if (t.end == TrajectoryEnd::kCollision) {
          backpropagate(t);
          ++stats_.collisions;
          break;
        }
        if (t.end == TrajectoryEnd::kExpand) {
          ++in_flight_evals_;
          w.batch.push_back(std::move(t));
          continue;
        }
        backpropagate(t);
        ++stats_.simulations;
        if (t.end == TrajectoryEnd::kEarlyStop) {
          ++stats_.early_stops;
        } else {
          ++stats_.terminal_hits;
        }
        ++free_count;
      }
      ++stats_.batches;
      store_.note_trajectory_buffer(in_flight_evals_);
      if (w.batch.empty()) {
        ++zero_eval_batches_;
        continue;
      }
      zero_eval_batches_ = 0;
    }

    // The evaluator runs outside the lock; pending leaves stay reserved.
    std::vector<EvalResult> results;
    for (std::size_t i = 0; i < w.batch.size(); ++i) {
      if (auto flushed = queue.submit(EvalRequest{i, w.batch[i].leaf_state})) {
        results.insert(results.end(), std::make_move_iterator(flushed->begin()),
                       std::make_move_iterator(flushed->end()));
      }
    }
    auto rest = queue.flush();
    results.insert(results.end(), std::make_move_iterator(rest.begin()), std::make_move_iterator(rest.end()));

    std::lock_guard lock(mu_);
    for (auto& r : results) {
      Trajectory& t = w.batch[r.handle];
      expand(t.leaf, t.leaf_state, r.evaluation);
      t.value = store_.node(t.leaf).v;
      backpropagate(t);
      --in_flight_evals_;
      ++stats_.evaluations;
      ++stats_.simulations;
    }
  }
}

SearchResult Search::run(const GameState& root_state) {
  started_ = std::chrono::steady_clock::now();
  set_root(root_state);
  stats_ = {};
  in_flight_evals_ = 0;
  zero_eval_batches_ = 0;
  out_of_memory_ = false;

  if (!store_.node(root_).terminal) {
    try {
      expand_root_locked();
    } catch (const OutOfMemory&) {
      out_of_memory_ = true;
    }
    const int workers = config_.threads;
    if (workers == 1) {
      Worker w{Rng(rng_()), {}};
      worker_loop(w);
    } else {
      std::vector<Worker> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int i = 0; i < workers; ++i) pool.push_back(Worker{Rng(rng_()), {}});
      std::vector<std::thread> threads;
      for (int i = 1; i < workers; ++i) threads.emplace_back([this, &pool, i] { worker_loop(pool[i]); });
      worker_loop(pool[0]);
      for (auto& th : threads) th.join();
    }
  }
  return make_result();
}

SearchResult Search::make_result() {
  SearchResult out;
  const Node& r = store_.node(root_);
  out.root_status = r.status;
  out.root_end_in_ply = r.end_in_ply;
  out.root_value = r.v;
  out.root_visits = r.n;
  out.stats = stats_;
  out.memory = store_.memory_report();
  out.out_of_memory = out_of_memory_;

  if (!r.terminal && !r.edges.empty()) {
    out.policy = select_move(store_, root_, config_, players_, rng_);
    out.selected = out.policy.chosen;
    for (std::size_t i = 0; i < r.edges.size(); ++i) {
      const Edge& e = r.edges[i];
      ActionStats s;
      s.action = e.action;
      s.visits = e.n;
      s.q = e.q;
      s.prior = r.priors[i];
      s.policy = out.policy.pi[i];
      s.pruned = e.pruned();
      if (e.child_id != kNoNode) s.child_status = store_.node(e.child_id).status;
      out.root_actions.push_back(s);
    }
    // Principal variation: the chosen move, then the most visited replies.
    out.principal_variation.push_back(*out.selected);
    NodeId id = kNoNode;
    for (const Edge& e : r.edges) {
      if (e.action == *out.selected) id = e.child_id;
    }
    while (id != kNoNode && out.principal_variation.size() < 64) {
      const Node& n = store_.node(id);
      if (n.terminal || !n.expanded) break;
      const Edge* best = nullptr;
      for (const Edge& e : n.edges) {
        if (e.pruned() || e.n == 0) continue;
        if (!best || e.n > best->n) best = &e;
      }
      if (!best) break;
      out.principal_variation.push_back(best->action);
      id = best->child_id;
    }
  }
  out.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started_).count();
  return out;
}

}  // namespace mcgs
