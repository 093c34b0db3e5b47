#pragma once

// Genetic search over walks encoded as vertex lists.

#include <optional>
#include <utility>
#include <vector>

#include "acsp/graph.hpp"
#include "acsp/rng.hpp"

namespace acsp {

enum class SelectionWeight {
  kInverseCost,  // 1/cost: cheaper walks are likelier parents
  kCost,         // the literal "fitness = path length" reading
};

struct GaParams {
  int population_size = 600;
  int iteration_count = 6000;
  double mutation_probability = 0.1;
  int crossover_retry_limit = 50;
  SelectionWeight selection = SelectionWeight::kInverseCost;
};

void check_params(const GaParams& params);

struct Chromosome {
  Walk walk;
  double cost = 0.0;
};

using Population = std::vector<Chromosome>;

Population init_population(const Instance& instance, const GaParams& params, ShortestPaths& paths, Rng& rng);

// Indices of two distinct chromosomes drawn without replacement, each with
// probability proportional to its selection weight.
std::pair<std::size_t, std::size_t> roulette_select(const Population& population, Rng& rng,
                                                    SelectionWeight weight = SelectionWeight::kInverseCost);

// Splits both parents at a uniformly chosen pair of positions holding the same
// vertex and swaps the tails. nullopt when no vertex is shared.
std::optional<std::pair<Walk, Walk>> crossover(const Walk& a, const Walk& b, Rng& rng);

// Replaces two random non-base positions with random vertices and reconnects.
// Walks shorter than three vertices, or ones that cannot be reconnected, come
// back unchanged.
Walk mutate(const Walk& walk, const Instance& instance, ShortestPaths& paths, Rng& rng);

// Greedily appends the shortest path to the nearest vertex of a missing color.
// Throws InfeasibleInstance if a missing color is unreachable.
Walk complete_missing_colors(Walk walk, const Instance& instance, ShortestPaths& paths);

Solution ga_solve(const Instance& instance, const GaParams& params, Rng& rng);

}  // namespace acsp
