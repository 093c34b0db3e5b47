#pragma once

// Ant colony search with per-color pheromones on edges and on ants.

#include <optional>
#include <span>
#include <vector>

#include "acsp/graph.hpp"
#include "acsp/rng.hpp"

namespace acsp {

struct AcoParams {
  double alpha = 0.4;
  double beta = 0.5;
  int colony_size = 200;
  double q = 0.9;      // probability of trying the pheromone rule first
  double delta = 0.1;  // evaporation
  int iteration_count = 100;
  std::optional<double> c0;  // defaults to max edge weight + 1
  double ant_pheromone = 0.0;  // initial Ph_t(k) carried by every ant
};

void check_params(const AcoParams& params);

// Levels Ph(e, k) per undirected edge and color, shared by both directions.
class PheromoneField {
 public:
  PheromoneField(int num_edges, int num_colors, double initial = 0.0);

  int num_colors() const { return num_colors_; }
  double& at(int edge, Color k) { return levels_[index(edge, k)]; }
  double at(int edge, Color k) const { return levels_[index(edge, k)]; }
  std::span<const double> levels() const { return levels_; }

  // sum_k Ph(e, k)^alpha
  double attraction(int edge, double alpha) const;

 private:
  std::size_t index(int edge, Color k) const {
    return static_cast<std::size_t>(edge) * static_cast<std::size_t>(num_colors_) + static_cast<std::size_t>(k);
  }

  int num_colors_;
  std::vector<double> levels_;
};

struct Ant {
  Walk walk;
  std::vector<char> has_color;
  int colors_seen = 0;
  std::vector<double> pheromone;  // Ph_t(k)
  std::vector<char> used;         // per directed traversal: 2*edge + (tail is the edge's v)
  bool done = false;
  bool discarded = false;

  Ant(const Instance& instance, double initial_pheromone = 1.0);
  Vertex current() const { return walk.back(); }
};

// (c0 - w) / sum (c0 - w'). Throws std::invalid_argument if c0 <= some weight
// or no edge is given.
std::vector<double> prob_distance(std::span<const double> weights, double c0);

// D^beta * A / sum D'^beta * A' with D = 1/w and A the edge's attraction.
// nullopt when every attraction is zero, which tells the caller to fall back
// to prob_distance.
std::optional<std::vector<double>> prob_pheromone(std::span<const double> weights,
                                                  std::span<const double> attractions, double beta);

// Picks an unused directed traversal out of the ant's current vertex, or marks
// the ant discarded and returns nullopt.
std::optional<Neighbor> select_edge(Ant& ant, const PheromoneField& field, const ColoredGraph& graph,
                                    const AcoParams& params, double c0, Rng& rng);

void local_update(PheromoneField& field, Ant& ant, int edge, double delta);

// Applied once per distinct edge of the walk. Skipped when cost <= 0.
void global_update(PheromoneField& field, std::span<const Vertex> walk, const ColoredGraph& graph, double cost,
                   double delta);

// Throws InfeasibleInstance, or HeuristicFailure if no ant ever finishes.
Solution aco_solve(const Instance& instance, const AcoParams& params, Rng& rng);

}  // namespace acsp
