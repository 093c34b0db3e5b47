#pragma once

// Core data model for all-colors shortest path instances: a colored,
// undirected, non-negatively weighted graph with a designated base vertex.
// Vertices and colors are 0-based in memory; text formats and the CLI use
// 1-based ids.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace acsp {

using Vertex = int;
using Color = int;
using Walk = std::vector<Vertex>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr Vertex kNoVertex = -1;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double w = 0.0;
};

struct Neighbor {
  Vertex to = 0;
  double w = 0.0;
  int edge = 0;  // index into ColoredGraph::edges()
};

// Raised when consecutive walk vertices are not joined by an edge.
class EdgeError : public std::invalid_argument {
 public:
  EdgeError(Vertex u, Vertex v);
  Vertex u() const { return u_; }
  Vertex v() const { return v_; }

 private:
  Vertex u_;
  Vertex v_;
};

// No feasible walk exists: some color is unreachable from the base.
class InfeasibleInstance : public std::invalid_argument {
 public:
  InfeasibleInstance() : std::invalid_argument("infeasible instance: some color is unreachable from the base") {}
};

// A heuristic ran to completion without producing a walk.
class HeuristicFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ColoredGraph {
 public:
  ColoredGraph() = default;

  // Builds adjacency from the edge list without checking invariants; use
  // validate() or make_graph() for checked construction.
  ColoredGraph(int num_colors, std::vector<Color> color_of, std::vector<Edge> edges);

  int num_vertices() const { return static_cast<int>(color_of_.size()); }
  int num_colors() const { return num_colors_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  Color color(Vertex v) const { return color_of_[static_cast<std::size_t>(v)]; }
  std::span<const Color> colors() const { return color_of_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Neighbor> neighbors(Vertex v) const {
    return adjacency_[static_cast<std::size_t>(v)];
  }

  // Index of the edge {u, v}, if present.
  std::optional<int> edge_index(Vertex u, Vertex v) const;
  std::optional<double> weight(Vertex u, Vertex v) const;

  double max_weight() const;

  // Vertices grouped by color; an empty class means the color is absent.
  const std::vector<std::vector<Vertex>>& color_classes() const { return color_classes_; }

 private:
  static std::uint64_t key(Vertex u, Vertex v);

  int num_colors_ = 0;
  std::vector<Color> color_of_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::vector<Vertex>> color_classes_;
  std::unordered_map<std::uint64_t, int> edge_lookup_;
};

struct Instance {
  ColoredGraph graph;
  Vertex base = 0;
};

struct Solution {
  Walk walk;
  double cost = 0.0;
};

// Every invariant violation of the graph, as human-readable strings.
std::vector<std::string> validate(const ColoredGraph& graph);
std::vector<std::string> validate(const Instance& instance);

// Validating constructor; throws std::invalid_argument listing violations.
ColoredGraph make_graph(int num_colors, std::vector<Color> color_of, std::vector<Edge> edges);

double walk_cost(std::span<const Vertex> walk, const ColoredGraph& graph);
bool is_edge_valid(std::span<const Vertex> walk, const ColoredGraph& graph);

// Sorted distinct colors visited by the walk.
std::vector<Color> colors_covered(std::span<const Vertex> walk, const ColoredGraph& graph);

bool is_feasible(const Instance& instance, std::span<const Vertex> walk);

// True iff every color has at least one vertex reachable from the base.
bool has_feasible_walk(const Instance& instance);

// No directed edge (u -> v) appears twice along the walk.
bool traverses_each_arc_once(std::span<const Vertex> walk);

struct ShortestPathTree {
  Vertex source = 0;
  std::vector<double> dist;
  std::vector<Vertex> pred;

  bool reachable(Vertex v) const { return dist[static_cast<std::size_t>(v)] < kInfinity; }
  // Vertex sequence source..target; empty when unreachable.
  Walk path_to(Vertex target) const;
};

ShortestPathTree dijkstra(const ColoredGraph& graph, Vertex source);

// Memoized single-source trees. Not thread-safe; each solver run owns one.
class ShortestPaths {
 public:
  explicit ShortestPaths(const ColoredGraph& graph);

  const ColoredGraph& graph() const { return *graph_; }
  const ShortestPathTree& from(Vertex source);
  double distance(Vertex from_vertex, Vertex to_vertex) { return from(from_vertex).dist[static_cast<std::size_t>(to_vertex)]; }

  // Appends the shortest path from walk.back() to target, excluding the
  // current tail. Returns false when target is unreachable.
  bool extend(Walk& walk, Vertex target);

 private:
  const ColoredGraph* graph_;
  std::vector<std::optional<ShortestPathTree>> trees_;
};

// Removes repeated directed edges: rewrites s,x,i,j,y,i,j,z into s,x,i,rev(y),j,z
// at the earliest repeat until none remain. Cost drops by 2*w(i,j) per rewrite.
Walk repair_double_traversal(Walk walk, const ColoredGraph& graph);

// Shortest prefix that still covers every color. Throws if the walk is
// infeasible for the instance.
Walk crop_tail(const Instance& instance, Walk walk);

// Splices shortest paths between consecutive vertices that are not adjacent and
// collapses immediate repeats. Returns false if some junction is unreachable.
bool ensure_connectivity(Walk& walk, ShortestPaths& paths);

}  // namespace acsp
