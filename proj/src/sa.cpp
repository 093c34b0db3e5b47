#include "acsp/sa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace acsp {

void check_params(const SaParams& p) {
  if (!(p.cooling_rate > 0.0 && p.cooling_rate < 1.0)) throw std::invalid_argument("cooling rate must lie in (0, 1)");
  if (!(p.freezing_temperature > 0.0)) throw std::invalid_argument("freezing temperature must be positive");
  if (!(p.initial_temperature > p.freezing_temperature)) {
    throw std::invalid_argument("initial temperature must exceed the freezing temperature");
  }
  if (p.iteration_count_override && *p.iteration_count_override < 1) {
    throw std::invalid_argument("iteration count must be positive");
  }
}

long sa_outer_iterations(const SaParams& params) {
  check_params(params);
  long count = 0;
  for (double t = params.initial_temperature; t >= params.freezing_temperature; t *= params.cooling_rate) ++count;
  return count;
}

long sa_inner_iterations(const Instance& instance, const SaParams& params) {
  if (params.iteration_count_override) return *params.iteration_count_override;
  const long n = instance.graph.num_vertices(), k = instance.graph.num_colors();
  return std::max(1L, n * k / 5);
}

Walk random_feasible_walk(const Instance& instance, Rng& rng) {
  if (!has_feasible_walk(instance)) throw InfeasibleInstance();
  const ColoredGraph& g = instance.graph;
  std::vector<char> seen(static_cast<std::size_t>(g.num_colors()), 0);
  int missing = g.num_colors();
  auto visit = [&](Vertex v) {
    auto& s = seen[static_cast<std::size_t>(g.color(v))];
    if (!s) {
      s = 1;
      --missing;
    }
  };
  Walk walk{instance.base};
  visit(instance.base);
  const long cap = 64L * g.num_vertices() * g.num_colors();
  for (long step = 0; missing > 0; ++step) {
    if (step >= cap) throw HeuristicFailure("random walk exceeded its step cap");
    const auto adj = g.neighbors(walk.back());
    const Vertex next = adj[rng.index(adj.size())].to;
    walk.push_back(next);
    visit(next);
  }
  return walk;
}

Walk neighbor(const Walk& walk, const Instance& instance, ShortestPaths& paths, Rng& rng) {
  if (walk.size() < 2) throw std::invalid_argument("neighbor: walk needs at least two vertices");
  const ColoredGraph& g = instance.graph;
  const Color c = g.color(walk.back());
  const std::size_t m = walk.size() - 1;  // length after removing the tail
  const std::size_t p = rng.index(m);
  const Vertex anchor = walk[p];

  Vertex closest = kNoVertex;
  double best = kInfinity;
  for (Vertex x : g.color_classes()[static_cast<std::size_t>(c)]) {
    const double d = paths.distance(anchor, x);
    if (d < best) {
      best = d;
      closest = x;
    }
  }

  Walk out(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(p) + 1);
  paths.extend(out, closest);
  if (p + 1 < m) {
    paths.extend(out, walk[p + 1]);
    out.insert(out.end(), walk.begin() + static_cast<std::ptrdiff_t>(p) + 2,
               walk.begin() + static_cast<std::ptrdiff_t>(m));
  }
  return out;
}

Walk neighbor(const Walk& walk, const Instance& instance, Rng& rng) {
  ShortestPaths paths(instance.graph);
  return neighbor(walk, instance, paths, rng);
}

bool metropolis_accept(double delta_e, double temperature, Rng& rng) {
  if (!(temperature > 0.0)) throw std::invalid_argument("metropolis_accept: temperature must be positive");
  if (delta_e < 0.0) return true;
  return rng.uniform01() < std::exp(-delta_e / temperature);
}

Solution sa_solve(const Instance& instance, const SaParams& params, Rng& rng) {
  check_params(params);
  if (!has_feasible_walk(instance)) throw InfeasibleInstance();
  const ColoredGraph& g = instance.graph;
  ShortestPaths paths(g);
  const long inner = sa_inner_iterations(instance, params);

  Walk best_walk;
  double best_cost = kInfinity;
  for (double t = params.initial_temperature; t >= params.freezing_temperature; t *= params.cooling_rate) {
    auto tidy = [&](Walk w) { return params.tidy_moves ? repair_double_traversal(crop_tail(instance, std::move(w)), g) : w; };
    Walk local = tidy(random_feasible_walk(instance, rng));
    double local_cost = walk_cost(local, g);
    for (long i = 0; i < inner && local.size() >= 2; ++i) {
      Walk next = tidy(neighbor(local, instance, paths, rng));
      const double next_cost = walk_cost(next, g);
      if (metropolis_accept(next_cost - local_cost, t, rng)) {
        local = std::move(next);
        local_cost = next_cost;
      }
    }
    if (local_cost < best_cost) {
      best_walk = std::move(local);
      best_cost = local_cost;
    }
  }

  best_walk = repair_double_traversal(crop_tail(instance, std::move(best_walk)), g);
  return Solution{best_walk, walk_cost(best_walk, g)};
}

}  // namespace acsp
