#pragma once

// Independent helpers for the test suites: a pointer-based tree PUCT written
// without the engine's graph store, and walkers that pair graph nodes with
// game states.

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_set>
#include <vector>

#include "mcgs/evaluator.hpp"
#include "mcgs/game.hpp"
#include "mcgs/graph_store.hpp"
#include "mcgs/search_config.hpp"

namespace mcgs::testkit {

// Plain tree PUCT with the same batching contract as the engine: collect up
// to mini_batch leaves under virtual loss, back up terminal hits at once, stop
// collecting on a collision, then evaluate and back up in FIFO order.
class ReferencePuct {
 public:
  struct RefNode {
    GameState state;
    double v = 0.0;
    unsigned n = 0;
    bool expanded = false;
    bool pending = false;
    std::optional<Outcome> terminal;
    std::vector<ActionId> actions;
    std::vector<double> priors;
    std::vector<double> q;
    std::vector<unsigned> en;
    std::vector<unsigned> vl;
    std::vector<std::unique_ptr<RefNode>> children;
  };

  ReferencePuct(const Game& game, const Evaluator& eval, const SearchConfig& cfg)
      : game_(game), eval_(eval), cfg_(cfg) {}

  const RefNode& run(const GameState& root_state, unsigned simulations) {
    root_ = std::make_unique<RefNode>();
    root_->state = root_state;
    expand(*root_, eval_.evaluate(root_state));
    sims_ = 1;
    while (sims_ < simulations) {
      std::vector<std::vector<std::pair<RefNode*, std::size_t>>> paths;
      std::vector<RefNode*> leaves;
      std::size_t free_count = 0;
      while (leaves.size() < cfg_.mini_batch && free_count < cfg_.terminal_cap_factor * cfg_.mini_batch) {
        if (sims_ + leaves.size() >= simulations) break;
        std::vector<std::pair<RefNode*, std::size_t>> path;
        RefNode* node = root_.get();
        RefNode* leaf = nullptr;
        bool collided = false;
        for (;;) {
          const std::size_t i = select(*node);
          node->vl[i] += 1;
          path.emplace_back(node, i);
          if (!node->children[i]) {
            auto child = std::make_unique<RefNode>();
            child->state = game_.apply(node->state, node->actions[i]);
            child->terminal = game_.terminal_value(child->state);
            node->children[i] = std::move(child);
          }
          RefNode* c = node->children[i].get();
          if (c->pending) {
            collided = true;
            break;
          }
          if (c->terminal || !c->expanded) {
            leaf = c;
            break;
          }
          node = c;
        }
        if (collided) {
          for (auto& [p, i] : path) p->vl[i] -= 1;
          break;
        }
        if (leaf->terminal) {
          const double value = outcome_value(*leaf->terminal);
          sma(leaf->v, leaf->n, value);
          backup(path, value);
          ++sims_;
          ++free_count;
          continue;
        }
        leaf->pending = true;
        paths.push_back(std::move(path));
        leaves.push_back(leaf);
      }
      if (leaves.empty() && free_count == 0) break;
      for (std::size_t k = 0; k < leaves.size(); ++k) {
        expand(*leaves[k], eval_.evaluate(leaves[k]->state));
        backup(paths[k], leaves[k]->v);
        ++sims_;
      }
    }
    return *root_;
  }

  unsigned simulations() const { return sims_; }

 private:
  static void sma(double& mean, unsigned& n, double x) {
    n += 1;
    mean = n == 1 ? x : mean + (x - mean) / n;
  }

  void expand(RefNode& node, const Evaluation& e) {
    node.actions = game_.legal_actions(node.state);
    // p^(1/tau), renormalized, then stably sorted by descending prior.
    std::vector<double> p(e.priors.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) sum += p[i] = std::pow(e.priors[i], 1.0 / cfg_.node_tau);
    for (double& x : p) x /= sum;
    std::vector<std::size_t> order(p.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
    std::vector<ActionId> actions;
    for (std::size_t i : order) {
      actions.push_back(node.actions[i]);
      node.priors.push_back(p[i]);
    }
    node.actions = actions;
    node.q.assign(actions.size(), cfg_.q_init);
    node.en.assign(actions.size(), 0);
    node.vl.assign(actions.size(), 0);
    node.children.resize(actions.size());
    node.v = e.value;
    node.n = 1;
    node.expanded = true;
    node.pending = false;
  }

  std::size_t select(const RefNode& node) const {
    double total = 0.0;
    for (std::size_t i = 0; i < node.en.size(); ++i) total += node.en[i] + node.vl[i];
    const double c = std::log((total + cfg_.c_puct_base + 1.0) / cfg_.c_puct_base) + cfg_.c_puct_init;
    std::size_t best = 0;
    double best_score = 0.0;
    for (std::size_t i = 0; i < node.en.size(); ++i) {
      const double visits = node.en[i] + node.vl[i];
      const double q = visits == 0 ? node.q[i] : (node.en[i] * node.q[i] - node.vl[i] * cfg_.virtual_loss) / visits;
      const double score = q + c * node.priors[i] * std::sqrt(total) / (1.0 + visits);
      if (i == 0 || score > best_score) {
        best = i;
        best_score = score;
      }
    }
    return best;
  }

  void backup(const std::vector<std::pair<RefNode*, std::size_t>>& path, double leaf_value) {
    double value = leaf_value;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      RefNode* node = it->first;
      const std::size_t i = it->second;
      value = -value;
      node->vl[i] -= 1;
      sma(node->q[i], node->en[i], value);
      sma(node->v, node->n, value);
    }
  }

  const Game& game_;
  const Evaluator& eval_;
  SearchConfig cfg_;
  std::unique_ptr<RefNode> root_;
  unsigned sims_ = 0;
};

// Calls fn(node id, state) once per node reachable from `root` through linked
// edges.
inline void for_each_node(const GraphStore& store, const Game& game, NodeId root, const GameState& root_state,
                          const std::function<void(NodeId, const GameState&)>& fn) {
  std::unordered_set<NodeId> seen;
  std::vector<std::pair<NodeId, GameState>> stack{{root, root_state}};
  while (!stack.empty()) {
    auto [id, state] = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    fn(id, state);
    for (const Edge& e : store.node(id).edges) {
      if (e.child_id != kNoNode) stack.emplace_back(e.child_id, game.apply(state, e.action));
    }
  }
}

}  // namespace mcgs::testkit
