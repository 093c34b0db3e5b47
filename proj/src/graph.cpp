#include "acsp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

namespace acsp {

namespace {

std::string pair_text(Vertex u, Vertex v) {
  std::ostringstream os;
  os << "(" << u + 1 << ", " << v + 1 << ")";
  return os.str();
}

}  // namespace

EdgeError::EdgeError(Vertex u, Vertex v)
    : std::invalid_argument("no edge between consecutive walk vertices " + pair_text(u, v)),
      u_(u),
      v_(v) {}

ColoredGraph::ColoredGraph(int num_colors, std::vector<Color> color_of, std::vector<Edge> edges)
    : num_colors_(num_colors), color_of_(std::move(color_of)), edges_(std::move(edges)) {
  const auto n = color_of_.size();
  adjacency_.assign(n, {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    const bool in_range = edge.u >= 0 && edge.v >= 0 && static_cast<std::size_t>(edge.u) < n &&
                          static_cast<std::size_t>(edge.v) < n;
    if (!in_range) continue;
    adjacency_[static_cast<std::size_t>(edge.u)].push_back({edge.v, edge.w, static_cast<int>(e)});
    if (edge.u != edge.v) {
      adjacency_[static_cast<std::size_t>(edge.v)].push_back({edge.u, edge.w, static_cast<int>(e)});
    }
    edge_lookup_.try_emplace(key(edge.u, edge.v), static_cast<int>(e));
  }
  for (auto& list : adjacency_) {
    std::stable_sort(list.begin(), list.end(),
                     [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
  }
  color_classes_.assign(static_cast<std::size_t>(std::max(num_colors_, 0)), {});
  for (std::size_t v = 0; v < n; ++v) {
    const Color c = color_of_[v];
    if (c >= 0 && c < num_colors_) color_classes_[static_cast<std::size_t>(c)].push_back(static_cast<Vertex>(v));
  }
}

std::uint64_t ColoredGraph::key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

std::optional<int> ColoredGraph::edge_index(Vertex u, Vertex v) const {
  const auto it = edge_lookup_.find(key(u, v));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> ColoredGraph::weight(Vertex u, Vertex v) const {
  const auto e = edge_index(u, v);
  if (!e) return std::nullopt;
  return edges_[static_cast<std::size_t>(*e)].w;
}

double ColoredGraph::max_weight() const {
  double best = 0.0;
  for (const Edge& e : edges_) best = std::max(best, e.w);
  return best;
}

std::vector<std::string> validate(const ColoredGraph& graph) {
  std::vector<std::string> violations;
  const int n = graph.num_vertices();
  const int k = graph.num_colors();
  if (k < 1) violations.push_back("color count must be positive");
  for (Vertex v = 0; v < n; ++v) {
    const Color c = graph.color(v);
    if (c < 0 || c >= k) {
      violations.push_back("color out of range at vertex " + std::to_string(v + 1) + ": " +
                           std::to_string(c + 1));
    }
  }
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const Edge& e : graph.edges()) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      violations.push_back("edge endpoint out of range " + pair_text(e.u, e.v));
      continue;
    }
    if (e.u == e.v) violations.push_back("self-loop at vertex " + std::to_string(e.u + 1));
    if (!std::isfinite(e.w)) violations.push_back("non-finite weight on edge " + pair_text(e.u, e.v));
    if (e.w < 0.0) violations.push_back("negative weight on edge " + pair_text(e.u, e.v));
    const auto p = std::minmax(e.u, e.v);
    if (!seen.insert({p.first, p.second}).second) {
      violations.push_back("duplicate edge " + pair_text(p.first, p.second));
    }
  }
  for (Vertex u = 0; u < n; ++u) {
    for (const Neighbor& nb : graph.neighbors(u)) {
      const auto back = graph.neighbors(nb.to);
      const bool mirrored = std::any_of(back.begin(), back.end(), [&](const Neighbor& b) {
        return b.to == u && b.w == nb.w;
      });
      if (!mirrored) violations.push_back("asymmetric adjacency " + pair_text(u, nb.to));
    }
  }
  return violations;
}

std::vector<std::string> validate(const Instance& instance) {
  auto violations = validate(instance.graph);
  if (instance.base < 0 || instance.base >= instance.graph.num_vertices()) {
    violations.push_back("base out of range: " + std::to_string(instance.base + 1));
  }
  return violations;
}

ColoredGraph make_graph(int num_colors, std::vector<Color> color_of, std::vector<Edge> edges) {
  ColoredGraph graph(num_colors, std::move(color_of), std::move(edges));
  const auto violations = validate(graph);
  if (!violations.empty()) {
    std::string message = "invalid graph:";
    for (const auto& v : violations) message += "\n  " + v;
    throw std::invalid_argument(message);
  }
  return graph;
}

double walk_cost(std::span<const Vertex> walk, const ColoredGraph& graph) {
  double cost = 0.0;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    const auto w = graph.weight(walk[i], walk[i + 1]);
    if (!w || walk[i] == walk[i + 1]) throw EdgeError(walk[i], walk[i + 1]);
    cost += *w;
  }
  return cost;
}

bool is_edge_valid(std::span<const Vertex> walk, const ColoredGraph& graph) {
  const int n = graph.num_vertices();
  for (Vertex v : walk) {
    if (v < 0 || v >= n) return false;
  }
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    if (walk[i] == walk[i + 1] || !graph.edge_index(walk[i], walk[i + 1])) return false;
  }
  return true;
}

std::vector<Color> colors_covered(std::span<const Vertex> walk, const ColoredGraph& graph) {
  std::vector<Color> colors;
  colors.reserve(walk.size());
  for (Vertex v : walk) colors.push_back(graph.color(v));
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
  return colors;
}

bool is_feasible(const Instance& instance, std::span<const Vertex> walk) {
  if (walk.empty() || walk.front() != instance.base) return false;
  if (!is_edge_valid(walk, instance.graph)) return false;
  return static_cast<int>(colors_covered(walk, instance.graph).size()) == instance.graph.num_colors();
}

bool has_feasible_walk(const Instance& instance) {
  const auto tree = dijkstra(instance.graph, instance.base);
  for (const auto& members : instance.graph.color_classes()) {
    const bool any = std::any_of(members.begin(), members.end(),
                                 [&](Vertex v) { return tree.reachable(v); });
    if (!any) return false;
  }
  return true;
}

bool traverses_each_arc_once(std::span<const Vertex> walk) {
  std::set<std::pair<Vertex, Vertex>> arcs;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    if (!arcs.insert({walk[i], walk[i + 1]}).second) return false;
  }
  return true;
}

Walk ShortestPathTree::path_to(Vertex target) const {
  if (!reachable(target)) return {};
  Walk path;
  for (Vertex v = target; v != kNoVertex; v = pred[static_cast<std::size_t>(v)]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

ShortestPathTree dijkstra(const ColoredGraph& graph, Vertex source) {
  const auto n = static_cast<std::size_t>(graph.num_vertices());
  ShortestPathTree tree;
  tree.source = source;
  tree.dist.assign(n, kInfinity);
  tree.pred.assign(n, kNoVertex);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  tree.dist[static_cast<std::size_t>(source)] = 0.0;
  queue.push({0.0, source});
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (done[static_cast<std::size_t>(u)]) continue;
    done[static_cast<std::size_t>(u)] = 1;
    for (const Neighbor& nb : graph.neighbors(u)) {
      const auto t = static_cast<std::size_t>(nb.to);
      const double candidate = d + nb.w;
      if (candidate < tree.dist[t]) {
        tree.dist[t] = candidate;
        tree.pred[t] = u;
        queue.push({candidate, nb.to});
      }
    }
  }
  return tree;
}

ShortestPaths::ShortestPaths(const ColoredGraph& graph)
    : graph_(&graph), trees_(static_cast<std::size_t>(graph.num_vertices())) {}

const ShortestPathTree& ShortestPaths::from(Vertex source) {
  auto& slot = trees_[static_cast<std::size_t>(source)];
  if (!slot) slot = dijkstra(*graph_, source);
  return *slot;
}

bool ShortestPaths::extend(Walk& walk, Vertex target) {
  const Vertex tail = walk.back();
  if (tail == target) return true;
  const auto& tree = from(tail);
  if (!tree.reachable(target)) return false;
  const std::size_t start = walk.size();
  for (Vertex v = target; v != tail; v = tree.pred[static_cast<std::size_t>(v)]) walk.push_back(v);
  std::reverse(walk.begin() + static_cast<std::ptrdiff_t>(start), walk.end());
  return true;
}

Walk repair_double_traversal(Walk walk, const ColoredGraph& /*graph*/) {
  for (;;) {
    std::unordered_map<std::uint64_t, std::size_t> first_use;
    std::optional<std::pair<std::size_t, std::size_t>> repeat;
    for (std::size_t t = 0; t + 1 < walk.size(); ++t) {
      const auto arc = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(walk[t])) << 32) |
                       static_cast<std::uint32_t>(walk[t + 1]);
      const auto [it, inserted] = first_use.try_emplace(arc, t);
      if (!inserted) {
        repeat = std::make_pair(it->second, t);
        break;
      }
    }
    if (!repeat) return walk;
    // walk = prefix..i(a), j(a+1), y = [a+2, b), i(b), j(b+1), z
    const auto [a, b] = *repeat;
    Walk rewritten(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(a) + 1);
    for (std::size_t t = b; t-- > a + 2;) rewritten.push_back(walk[t]);
    rewritten.insert(rewritten.end(), walk.begin() + static_cast<std::ptrdiff_t>(b) + 1, walk.end());
    walk = std::move(rewritten);
  }
}

Walk crop_tail(const Instance& instance, Walk walk) {
  if (!is_feasible(instance, walk)) throw std::invalid_argument("crop_tail: walk is not feasible");
  const auto k = static_cast<std::size_t>(instance.graph.num_colors());
  std::vector<char> seen(k, 0);
  std::size_t covered = 0;
  for (std::size_t t = 0; t < walk.size(); ++t) {
    auto& flag = seen[static_cast<std::size_t>(instance.graph.color(walk[t]))];
    if (!flag) {
      flag = 1;
      if (++covered == k) {
        walk.resize(t + 1);
        break;
      }
    }
  }
  return walk;
}

bool ensure_connectivity(Walk& walk, ShortestPaths& paths) {
  if (walk.empty()) return true;
  Walk fixed;
  fixed.reserve(walk.size());
  fixed.push_back(walk.front());
  for (std::size_t t = 1; t < walk.size(); ++t) {
    const Vertex next = walk[t];
    if (next == fixed.back()) continue;
    if (paths.graph().edge_index(fixed.back(), next)) {
      fixed.push_back(next);
    } else if (!paths.extend(fixed, next)) {
      return false;
    }
  }
  walk = std::move(fixed);
  return true;
}

}  // namespace acsp
