#include "acsp/transform.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace acsp {

DirectedInstance to_directed(const Instance& instance) {
  const auto& g = instance.graph;
  DirectedInstance d;
  d.n = g.num_vertices();
  d.num_colors = g.num_colors();
  d.base = instance.base + 1;
  d.color_of.assign(static_cast<std::size_t>(d.n + 2), 0);
  for (Vertex v = 0; v < d.n; ++v) d.color_of[static_cast<std::size_t>(v + 1)] = g.color(v) + 1;
  d.arcs.reserve(static_cast<std::size_t>(2 * g.num_edges() + 1 + d.n));
  d.arcs.push_back({0, d.base, 0.0});
  for (const Edge& e : g.edges()) {
    d.arcs.push_back({e.u + 1, e.v + 1, e.w});
    d.arcs.push_back({e.v + 1, e.u + 1, e.w});
  }
  for (int i = 1; i <= d.n; ++i) d.arcs.push_back({i, d.n + 1, 0.0});
  return d;
}

Walk directed_walk_to_walk(const DirectedInstance& d, std::span<const int> node_walk) {
  if (node_walk.size() < 3) throw std::invalid_argument("directed walk needs source, base and sink");
  if (node_walk.front() != d.source()) throw std::invalid_argument("directed walk must start at the source");
  if (node_walk.back() != d.sink()) throw std::invalid_argument("directed walk must end at the sink");
  Walk walk;
  walk.reserve(node_walk.size() - 2);
  for (std::size_t t = 1; t + 1 < node_walk.size(); ++t) {
    const int node = node_walk[t];
    if (node <= 0 || node > d.n) {
      throw std::invalid_argument("directed walk interior touches the source or sink");
    }
    walk.push_back(node - 1);
  }
  if (walk.front() != d.base - 1) throw std::invalid_argument("directed walk must enter the base first");
  return walk;
}

Instance reduce_hp(int num_vertices, std::span<const std::pair<Vertex, Vertex>> edges) {
  if (num_vertices < 1) throw std::invalid_argument("reduce_hp needs at least one vertex");
  const Vertex base = num_vertices;
  std::vector<Color> colors(static_cast<std::size_t>(num_vertices + 1));
  std::iota(colors.begin(), colors.end(), 0);
  std::vector<Edge> out;
  out.reserve(edges.size() + static_cast<std::size_t>(num_vertices));
  for (const auto& [u, v] : edges) out.push_back({u, v, 1.0});
  for (Vertex v = 0; v < num_vertices; ++v) out.push_back({base, v, 1.0});
  return Instance{make_graph(num_vertices + 1, std::move(colors), std::move(out)), base};
}

}  // namespace acsp
