#include "acsp/ga.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "acsp/sa.hpp"

namespace acsp {

namespace {

constexpr double kMinCost = 1e-9;

double selection_weight(double cost, SelectionWeight mode) {
  return mode == SelectionWeight::kInverseCost ? 1.0 / std::max(cost, kMinCost) : std::max(cost, kMinCost);
}

// Index drawn proportionally to weights, skipping `excluded`.
std::size_t spin(const Population& population, SelectionWeight mode, std::size_t excluded, Rng& rng) {
  double total = 0.0;
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (i != excluded) total += selection_weight(population[i].cost, mode);
  }
  const double r = rng.uniform01() * total;
  double acc = 0.0;
  std::size_t last = population.size();
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (i == excluded) continue;
    acc += selection_weight(population[i].cost, mode);
    last = i;
    if (r < acc) return i;
  }
  return last;
}

Chromosome finish_child(Walk walk, const Instance& instance, ShortestPaths& paths) {
  walk = complete_missing_colors(std::move(walk), instance, paths);
  if (!ensure_connectivity(walk, paths)) throw InfeasibleInstance();
  walk = repair_double_traversal(crop_tail(instance, std::move(walk)), instance.graph);
  const double cost = walk_cost(walk, instance.graph);
  return Chromosome{std::move(walk), cost};
}

}  // namespace

void check_params(const GaParams& p) {
  if (p.population_size < 4) throw std::invalid_argument("ga: population size must be at least 4");
  if (!(0.0 <= p.mutation_probability && p.mutation_probability <= 1.0)) {
    throw std::invalid_argument("ga: mutation probability must lie in [0, 1]");
  }
  if (p.iteration_count < 0) throw std::invalid_argument("ga: iteration count must be non-negative");
  if (p.crossover_retry_limit < 1) throw std::invalid_argument("ga: crossover retry limit must be positive");
}

Population init_population(const Instance& instance, const GaParams& params, ShortestPaths& paths, Rng& rng) {
  check_params(params);
  Population population;
  population.reserve(static_cast<std::size_t>(params.population_size));
  for (int i = 0; i < params.population_size; ++i) {
    Walk walk = random_feasible_walk(instance, rng);
    ensure_connectivity(walk, paths);
    const double cost = walk_cost(walk, instance.graph);
    population.push_back({std::move(walk), cost});
  }
  return population;
}

std::pair<std::size_t, std::size_t> roulette_select(const Population& population, Rng& rng, SelectionWeight weight) {
  if (population.size() < 2) throw std::invalid_argument("roulette_select: need at least two chromosomes");
  const std::size_t first = spin(population, weight, population.size(), rng);
  const std::size_t second = spin(population, weight, first, rng);
  return {first, second};
}

std::optional<std::pair<Walk, Walk>> crossover(const Walk& a, const Walk& b, Rng& rng) {
  std::unordered_map<Vertex, std::vector<std::size_t>> in_b;
  for (std::size_t j = 0; j < b.size(); ++j) in_b[b[j]].push_back(j);
  std::size_t pairs = 0;
  for (Vertex v : a) {
    const auto it = in_b.find(v);
    if (it != in_b.end()) pairs += it->second.size();
  }
  if (pairs == 0) return std::nullopt;

  std::size_t pick = rng.index(pairs);
  std::size_t p1 = 0, p2 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto it = in_b.find(a[i]);
    if (it == in_b.end()) continue;
    if (pick < it->second.size()) {
      p1 = i;
      p2 = it->second[pick];
      break;
    }
    pick -= it->second.size();
  }
  const auto ai = a.begin() + static_cast<std::ptrdiff_t>(p1) + 1;
  const auto bi = b.begin() + static_cast<std::ptrdiff_t>(p2) + 1;
  Walk first(a.begin(), ai), second(b.begin(), bi);
  first.insert(first.end(), bi, b.end());
  second.insert(second.end(), ai, a.end());
  return std::make_pair(std::move(first), std::move(second));
}

Walk mutate(const Walk& walk, const Instance& instance, ShortestPaths& paths, Rng& rng) {
  if (walk.size() < 3) return walk;
  const std::size_t slots = walk.size() - 1;  // positions 1..size-1
  const std::size_t p = 1 + rng.index(slots);
  std::size_t q = 1 + rng.index(slots - 1);
  if (q >= p) ++q;
  const auto n = static_cast<std::size_t>(instance.graph.num_vertices());
  Walk out = walk;
  out[p] = static_cast<Vertex>(rng.index(n));
  out[q] = static_cast<Vertex>(rng.index(n));
  if (!ensure_connectivity(out, paths)) return walk;
  return out;
}

Walk complete_missing_colors(Walk walk, const Instance& instance, ShortestPaths& paths) {
  const ColoredGraph& g = instance.graph;
  std::vector<char> seen(static_cast<std::size_t>(g.num_colors()), 0);
  for (Vertex v : walk) seen[static_cast<std::size_t>(g.color(v))] = 1;
  for (;;) {
    const auto& tree = paths.from(walk.back());
    Vertex target = kNoVertex;
    double best = kInfinity;
    bool missing = false;
    for (Color c = 0; c < g.num_colors(); ++c) {
      if (seen[static_cast<std::size_t>(c)]) continue;
      missing = true;
      for (Vertex v : g.color_classes()[static_cast<std::size_t>(c)]) {
        const double d = tree.dist[static_cast<std::size_t>(v)];
        if (d < best || (d == best && target != kNoVertex && v < target)) {
          best = d;
          target = v;
        }
      }
    }
    if (!missing) return walk;
    if (target == kNoVertex) throw InfeasibleInstance();
    const std::size_t from = walk.size();
    paths.extend(walk, target);
    for (std::size_t i = from; i < walk.size(); ++i) seen[static_cast<std::size_t>(g.color(walk[i]))] = 1;
  }
}

Solution ga_solve(const Instance& instance, const GaParams& params, Rng& rng) {
  check_params(params);
  if (!has_feasible_walk(instance)) throw InfeasibleInstance();
  ShortestPaths paths(instance.graph);
  Population population = init_population(instance, params, paths, rng);

  auto best = std::min_element(population.begin(), population.end(),
                               [](const Chromosome& a, const Chromosome& b) { return a.cost < b.cost; });
  Chromosome best_ever = *best;

  for (int generation = 0; generation < params.iteration_count; ++generation) {
    std::optional<std::pair<Walk, Walk>> children;
    for (int attempt = 0; attempt < params.crossover_retry_limit && !children; ++attempt) {
      const auto [i, j] = roulette_select(population, rng, params.selection);
      children = crossover(population[i].walk, population[j].walk, rng);
    }
    if (!children) continue;

    for (Walk* child : {&children->first, &children->second}) {
      if (rng.uniform01() < params.mutation_probability) *child = mutate(*child, instance, paths, rng);
      Chromosome c = finish_child(std::move(*child), instance, paths);
      if (c.cost < best_ever.cost) best_ever = c;
      population.push_back(std::move(c));
    }
    for (int removed = 0; removed < 2; ++removed) {
      auto worst = std::max_element(population.begin(), population.end(),
                                    [](const Chromosome& a, const Chromosome& b) { return a.cost < b.cost; });
      population.erase(worst);
    }
  }

  // Initial chromosomes are only reconnected, so the best one may still carry
  // a redundant tail or a repeated traversal.
  Walk walk = repair_double_traversal(crop_tail(instance, std::move(best_ever.walk)), instance.graph);
  const double cost = walk_cost(walk, instance.graph);
  return Solution{std::move(walk), cost};
}

}  // namespace acsp
