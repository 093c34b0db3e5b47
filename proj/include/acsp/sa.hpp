#pragma once

// Simulated annealing over feasible walks.

#include <optional>

#include "acsp/graph.hpp"
#include "acsp/rng.hpp"

namespace acsp {

struct SaParams {
  double initial_temperature = 1000.0;
  double cooling_rate = 0.999;
  double freezing_temperature = 1e-3;
  std::optional<long> iteration_count_override;
  // Crop and de-duplicate every candidate walk before its energy is taken.
  bool tidy_moves = true;
};

// Throws std::invalid_argument unless 0 < R < 1 and T0 > freezing > 0.
void check_params(const SaParams& params);

// Number of temperatures visited by the cooling loop.
long sa_outer_iterations(const SaParams& params);

// Neighbor moves per temperature: max(1, n*k/5) unless overridden.
long sa_inner_iterations(const Instance& instance, const SaParams& params);

// Random walk from the base, one uniformly chosen neighbor per step, until
// every color is seen. Throws InfeasibleInstance, or HeuristicFailure after
// n*k*64 steps.
Walk random_feasible_walk(const Instance& instance, Rng& rng);

// Drops the last vertex and re-inserts the same-colored vertex closest to a
// random position, spliced in by shortest paths.
Walk neighbor(const Walk& walk, const Instance& instance, ShortestPaths& paths, Rng& rng);
Walk neighbor(const Walk& walk, const Instance& instance, Rng& rng);

bool metropolis_accept(double delta_e, double temperature, Rng& rng);

Solution sa_solve(const Instance& instance, const SaParams& params, Rng& rng);

}  // namespace acsp
