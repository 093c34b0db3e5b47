#include "acsp/aco.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace acsp {

namespace {

// Desirability of a zero-weight edge would be infinite.
constexpr double kMinWeight = 1e-9;

std::vector<double> normalized(std::vector<double> v, double total) {
  for (double& x : v) x /= total;
  return v;
}

std::size_t sample(std::span<const double> probs, Rng& rng) {
  const double r = rng.uniform01();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (r < acc) return i;
  }
  // Rounding left r above the last partial sum; take the last positive entry.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return i;
  }
  return probs.size() - 1;
}

std::size_t traversal(const ColoredGraph& g, int edge, Vertex from) {
  return 2 * static_cast<std::size_t>(edge) + (g.edges()[static_cast<std::size_t>(edge)].u == from ? 0 : 1);
}

}  // namespace

void check_params(const AcoParams& p) {
  if (!(0.0 <= p.alpha && p.alpha <= p.beta && p.beta <= 1.0)) {
    throw std::invalid_argument("aco: need 0 <= alpha <= beta <= 1");
  }
  if (!(0.0 <= p.q && p.q <= 1.0)) throw std::invalid_argument("aco: q must lie in [0, 1]");
  if (!(0.0 <= p.delta && p.delta <= 1.0)) throw std::invalid_argument("aco: delta must lie in [0, 1]");
  if (p.colony_size < 1) throw std::invalid_argument("aco: colony size must be positive");
  if (p.iteration_count < 1) throw std::invalid_argument("aco: iteration count must be positive");
  if (!(p.ant_pheromone >= 0.0)) throw std::invalid_argument("aco: ant pheromone must be non-negative");
}

PheromoneField::PheromoneField(int num_edges, int num_colors, double initial)
    : num_colors_(num_colors),
      levels_(static_cast<std::size_t>(num_edges) * static_cast<std::size_t>(num_colors), initial) {}

double PheromoneField::attraction(int edge, double alpha) const {
  double sum = 0.0;
  for (Color k = 0; k < num_colors_; ++k) sum += std::pow(at(edge, k), alpha);
  return sum;
}

Ant::Ant(const Instance& instance, double initial_pheromone)
    : walk{instance.base},
      has_color(static_cast<std::size_t>(instance.graph.num_colors()), 0),
      pheromone(static_cast<std::size_t>(instance.graph.num_colors()), initial_pheromone),
      used(2 * static_cast<std::size_t>(instance.graph.num_edges()), 0) {
  has_color[static_cast<std::size_t>(instance.graph.color(instance.base))] = 1;
  colors_seen = 1;
  done = colors_seen == instance.graph.num_colors();
}

std::vector<double> prob_distance(std::span<const double> weights, double c0) {
  if (weights.empty()) throw std::invalid_argument("prob_distance: no edges");
  std::vector<double> p;
  p.reserve(weights.size());
  double total = 0.0;
  for (double w : weights) {
    if (!(c0 > w)) throw std::invalid_argument("prob_distance: c0 must exceed every weight");
    p.push_back(c0 - w);
    total += c0 - w;
  }
  return normalized(std::move(p), total);
}

std::optional<std::vector<double>> prob_pheromone(std::span<const double> weights,
                                                  std::span<const double> attractions, double beta) {
  if (weights.size() != attractions.size() || weights.empty()) {
    throw std::invalid_argument("prob_pheromone: size mismatch");
  }
  std::vector<double> p;
  p.reserve(weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double d = 1.0 / std::max(weights[i], kMinWeight);
    const double v = std::pow(d, beta) * attractions[i];
    p.push_back(v);
    total += v;
  }
  if (!(total > 0.0) || !std::isfinite(total)) return std::nullopt;
  return normalized(std::move(p), total);
}

std::optional<Neighbor> select_edge(Ant& ant, const PheromoneField& field, const ColoredGraph& graph,
                                    const AcoParams& params, double c0, Rng& rng) {
  if (ant.done || ant.discarded) return std::nullopt;
  const Vertex at = ant.current();
  std::vector<Neighbor> available;
  for (const Neighbor& nb : graph.neighbors(at)) {
    if (!ant.used[traversal(graph, nb.edge, at)]) available.push_back(nb);
  }
  if (available.empty()) {
    ant.discarded = true;
    return std::nullopt;
  }
  std::vector<double> weights;
  for (const auto& nb : available) weights.push_back(nb.w);

  std::optional<std::vector<double>> probs;
  if (rng.uniform01() < params.q) {
    std::vector<double> attractions;
    for (const auto& nb : available) attractions.push_back(field.attraction(nb.edge, params.alpha));
    probs = prob_pheromone(weights, attractions, params.beta);
  }
  if (!probs) probs = prob_distance(weights, c0);
  return available[sample(*probs, rng)];
}

void local_update(PheromoneField& field, Ant& ant, int edge, double delta) {
  for (Color k = 0; k < field.num_colors(); ++k) {
    double& carried = ant.pheromone[static_cast<std::size_t>(k)];
    const double secreted = delta * carried;
    field.at(edge, k) = (1.0 - delta) * field.at(edge, k) + secreted;
    carried -= secreted;
  }
}

void global_update(PheromoneField& field, std::span<const Vertex> walk, const ColoredGraph& graph, double cost,
                   double delta) {
  if (!(cost > 0.0)) return;
  std::vector<int> edges;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    const auto e = graph.edge_index(walk[i], walk[i + 1]);
    if (!e) throw EdgeError(walk[i], walk[i + 1]);
    edges.push_back(*e);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (int e : edges) {
    for (Color k = 0; k < field.num_colors(); ++k) field.at(e, k) = (1.0 - delta) * field.at(e, k) + delta / cost;
  }
}

Solution aco_solve(const Instance& instance, const AcoParams& params, Rng& rng) {
  check_params(params);
  if (!has_feasible_walk(instance)) throw InfeasibleInstance();
  const ColoredGraph& g = instance.graph;
  const int k = g.num_colors();
  const double c0 = params.c0.value_or(g.max_weight() + 1.0);
  PheromoneField field(g.num_edges(), k, 0.0);

  std::optional<Solution> best;
  for (int iteration = 0; iteration < params.iteration_count; ++iteration) {
    std::vector<Ant> colony(static_cast<std::size_t>(params.colony_size), Ant(instance, params.ant_pheromone));
    int finished = 0;
    for (const Ant& ant : colony) finished += ant.done ? 1 : 0;
    while (finished < params.colony_size) {
      for (Ant& ant : colony) {
        if (ant.done || ant.discarded) continue;
        const auto step = select_edge(ant, field, g, params, c0, rng);
        if (!step) {
          ++finished;
          continue;
        }
        ant.used[traversal(g, step->edge, ant.current())] = 1;
        local_update(field, ant, step->edge, params.delta);
        ant.walk.push_back(step->to);
        auto& seen = ant.has_color[static_cast<std::size_t>(g.color(step->to))];
        if (!seen) {
          seen = 1;
          if (++ant.colors_seen == k) {
            ant.done = true;
            ++finished;
          }
        }
      }
    }

    std::optional<Solution> iteration_best;
    for (const Ant& ant : colony) {
      if (!ant.done) continue;
      Walk walk = repair_double_traversal(crop_tail(instance, ant.walk), g);
      const double cost = walk_cost(walk, g);
      if (!iteration_best || cost < iteration_best->cost) iteration_best = Solution{std::move(walk), cost};
    }
    if (iteration_best && (!best || iteration_best->cost <= best->cost)) best = std::move(iteration_best);
    if (best) global_update(field, best->walk, g, best->cost, params.delta);
  }
  if (!best) throw HeuristicFailure("aco: every ant was discarded");
  return *best;
}

}  // namespace acsp
