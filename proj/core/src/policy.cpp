#include "mcgs/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mcgs/solver.hpp"

namespace mcgs {

std::vector<RootChild> root_children(const Node& root) {
  std::vector<RootChild> out;
  out.reserve(root.edges.size());
  for (std::size_t i = 0; i < root.edges.size(); ++i) {
    const Edge& e = root.edges[i];
    out.push_back(RootChild{e.action, e.n, e.q, root.priors[i], e.pruned()});
  }
  return out;
}

std::vector<std::size_t> rank_by_visits(std::span<const RootChild> c) {
  std::vector<std::size_t> idx(c.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (c[a].pruned != c[b].pruned) return !c[a].pruned;
    if (c[a].visits != c[b].visits) return c[a].visits > c[b].visits;
    if (c[a].q != c[b].q) return c[a].q > c[b].q;
    return c[a].action < c[b].action;
  });
  return idx;
}

std::vector<double> visit_policy(std::span<const RootChild> c, double tau) {
  std::vector<double> pi(c.size(), 0.0);
  const bool any_visit = std::any_of(c.begin(), c.end(), [](const RootChild& r) { return !r.pruned && r.visits > 0; });
  if (!any_visit) {
    double sum = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i].pruned) sum += pi[i] = c[i].prior;
    }
    if (sum <= 0.0) {
      std::size_t live = 0;
      for (const auto& r : c) live += !r.pruned;
      for (std::size_t i = 0; i < c.size(); ++i) pi[i] = c[i].pruned ? 0.0 : 1.0 / static_cast<double>(live);
    } else {
      for (double& p : pi) p /= sum;
    }
    return pi;
  }
  if (tau == 0.0) {
    pi[rank_by_visits(c).front()] = 1.0;
    return pi;
  }
  // Scale by the max count first so large exponents do not overflow.
  double max_n = 0.0;
  for (const auto& r : c) {
    if (!r.pruned) max_n = std::max(max_n, static_cast<double>(r.visits));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].pruned || c[i].visits == 0) continue;
    pi[i] = std::pow(static_cast<double>(c[i].visits) / max_n, 1.0 / tau);
    sum += pi[i];
  }
  for (double& p : pi) p /= sum;
  return pi;
}

BoostResult q_boost(std::span<const double> pi, std::span<const RootChild> c, double q_weight) {
  BoostResult out{std::vector<double>(pi.begin(), pi.end()), false};
  const auto order = rank_by_visits(c);
  if (order.size() < 2) return out;
  const std::size_t alpha = order[0];
  const std::size_t beta = order[1];
  if (c[alpha].pruned || c[beta].pruned || c[alpha].visits == 0 || c[beta].visits == 0) return out;
  const double q_delta = c[beta].q - c[alpha].q;
  if (!(q_delta > 0.0)) return out;
  out.pi[beta] += q_weight * q_delta * out.pi[alpha];
  const double sum = std::accumulate(out.pi.begin(), out.pi.end(), 0.0);
  for (double& p : out.pi) p /= sum;
  out.boosted = true;
  return out;
}

MovePolicy select_move(const GraphStore& store, NodeId root_id, const SearchConfig& config, int num_players,
                       Rng& rng) {
  const Node& root = store.node(root_id);
  if (root.terminal) throw ContractViolation("no move exists from a terminal root");
  if (root.edges.empty()) throw ContractViolation("root has not been expanded");

  const auto children = root_children(root);
  MovePolicy mp;
  for (const auto& r : children) mp.actions.push_back(r.action);

  const bool all_pruned =
      std::all_of(root.edges.begin(), root.edges.end(), [](const Edge& e) { return e.pruned(); });
  if (config.terminal_solver && (is_exact(root.status) || (is_solved(root.status) && all_pruned))) {
    mp.chosen = solved_move(store, root_id, num_players);
    mp.solver_override = true;
    mp.pi.assign(children.size(), 0.0);
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (children[i].action == mp.chosen) mp.pi[i] = 1.0;
    }
    return mp;
  }

  mp.pi = visit_policy(children, config.tau);
  if (config.q_boost) {
    auto boosted = q_boost(mp.pi, children, config.q_weight);
    mp.pi = std::move(boosted.pi);
    mp.boosted = boosted.boosted;
  }

  std::size_t pick = 0;
  if (config.tau == 0.0) {
    // Ties resolve in visit-rank order.
    const auto order = rank_by_visits(children);
    pick = order.front();
    for (std::size_t i : order) {
      if (mp.pi[i] > mp.pi[pick]) pick = i;
    }
  } else {
    std::discrete_distribution<std::size_t> dist(mp.pi.begin(), mp.pi.end());
    pick = dist(rng);
  }
  mp.chosen = children[pick].action;
  return mp;
}

}  // namespace mcgs
