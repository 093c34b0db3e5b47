#pragma once
// Fixtures, random instances and independent oracles shared by the unit tests
// and the acceptance runner. Nothing here calls into the solvers under test.
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "acsp/graph.hpp"
#include "acsp/rng.hpp"

namespace fixtures {

using acsp::Edge;
using acsp::Instance;

// Vertices 0,1,2 colored 0,1,2; unit edges 0-1, 1-2, 0-2.
inline Instance triangle() {
  return {acsp::make_graph(3, {0, 1, 2}, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}), 0};
}

// Center 0 (color 0), leaf 1 (color 1, w 2), leaf 2 (color 2, w 3).
inline Instance star() {
  return {acsp::make_graph(3, {0, 1, 2}, {{0, 1, 2.0}, {0, 2, 3.0}}), 0};
}

inline Instance single_vertex() { return {acsp::make_graph(1, {0}, {}), 0}; }

// Color 1 lives on a vertex nobody can reach.
inline Instance isolated_color() {
  return {acsp::make_graph(2, {0, 0, 1}, {{0, 1, 1.0}}), 0};
}

struct RandomSpec {
  int n = 8;
  int k = 4;
  int min_degree = 2;     // raised edge by edge until every vertex meets it
  int max_weight = 9;
  double zero_weight = 0.0;  // probability of a zero-weight edge
  bool connected = true;
};

// Random instance with every color present. When `connected`, a random
// spanning tree is laid first; extra edges are then added until each vertex
// reaches min_degree (capped at n-1).
inline Instance random_instance(acsp::Rng& rng, const RandomSpec& spec) {
  const int n = spec.n;
  std::vector<int> colors(static_cast<std::size_t>(n));
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(order[static_cast<std::size_t>(i)], order[rng.index(static_cast<std::size_t>(i) + 1)]);
  for (int i = 0; i < n; ++i) {
    colors[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] =
        i < spec.k ? i : static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.k)));
  }

  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  std::vector<Edge> edges;
  auto weight = [&] {
    if (spec.zero_weight > 0 && rng.uniform01() < spec.zero_weight) return 0.0;
    return static_cast<double>(rng.uniform_int(1, spec.max_weight));
  };
  auto add = [&](int u, int v) {
    if (u == v || adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) return;
    adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
    ++degree[static_cast<std::size_t>(u)];
    ++degree[static_cast<std::size_t>(v)];
    edges.push_back({u, v, weight()});
  };
  if (spec.connected) {
    for (int i = 1; i < n; ++i) add(order[static_cast<std::size_t>(i)], order[rng.index(static_cast<std::size_t>(i))]);
  }
  const int target = std::min(spec.min_degree, n - 1);
  for (int v = 0; v < n; ++v) {
    while (degree[static_cast<std::size_t>(v)] < target) {
      add(v, static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
    }
  }
  const auto base = static_cast<acsp::Vertex>(rng.below(static_cast<std::uint64_t>(n)));
  return {acsp::make_graph(spec.k, std::move(colors), std::move(edges)), base};
}

// Upper bound on the optimum: twice the weight of a BFS spanning tree of the
// base's component walks every reachable vertex and returns.
inline double tour_bound(const Instance& instance) {
  const auto& g = instance.graph;
  std::vector<char> seen(static_cast<std::size_t>(g.num_vertices()), 0);
  std::vector<acsp::Vertex> queue{instance.base};
  seen[static_cast<std::size_t>(instance.base)] = 1;
  double total = 0.0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& nb : g.neighbors(queue[head])) {
      if (seen[static_cast<std::size_t>(nb.to)]) continue;
      seen[static_cast<std::size_t>(nb.to)] = 1;
      total += nb.w;
      queue.push_back(nb.to);
    }
  }
  return 2.0 * total;
}

// Hamiltonian path by trying every vertex permutation.
inline bool has_hamiltonian_path(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n <= 1) return true;
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (auto [u, v] : edges) adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i + 1 < n && ok; ++i) ok = adj[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])][static_cast<std::size_t>(p[static_cast<std::size_t>(i) + 1])];
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// One representative per isomorphism class of simple graphs on n <= 7
// vertices. Labeled graphs are bucketed by a refinement invariant and each is
// compared against the bucket's representatives by backtracking.
class GraphClasses {
 public:
  explicit GraphClasses(int n) : n_(n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
      const auto adj = adjacency(mask);
      const auto inv = invariant(adj);
      auto& bucket = buckets_[inv.key];
      bool fresh = true;
      for (int rep : bucket) {
        if (isomorphic(adj, inv.label, reps_adj_[static_cast<std::size_t>(rep)], reps_label_[static_cast<std::size_t>(rep)])) {
          fresh = false;
          break;
        }
      }
      if (!fresh) continue;
      bucket.push_back(static_cast<int>(reps_.size()));
      reps_.push_back(mask);
      reps_adj_.push_back(adj);
      reps_label_.push_back(inv.label);
    }
  }

  std::size_t size() const { return reps_.size(); }

  std::vector<std::pair<int, int>> edges(std::size_t i) const {
    std::vector<std::pair<int, int>> out;
    const auto& adj = reps_adj_[i];
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (adj[static_cast<std::size_t>(u)] >> v & 1u) out.emplace_back(u, v);
    return out;
  }

 private:
  using Adj = std::vector<std::uint32_t>;  // neighbor bitsets

  struct Invariant {
    std::vector<std::uint64_t> label;  // per-vertex color after refinement
    std::vector<std::uint64_t> key;    // sorted labels
  };

  Adj adjacency(std::uint32_t mask) const {
    Adj adj(static_cast<std::size_t>(n_), 0);
    int bit = 0;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v, ++bit)
        if (mask >> bit & 1u) {
          adj[static_cast<std::size_t>(u)] |= 1u << v;
          adj[static_cast<std::size_t>(v)] |= 1u << u;
        }
    return adj;
  }

  // Two rounds of color refinement starting from degrees. Labels are
  // isomorphism-invariant, so a mapping must preserve them.
  Invariant invariant(const Adj& adj) const {
    std::vector<std::uint64_t> label(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) label[static_cast<std::size_t>(v)] = static_cast<std::uint64_t>(__builtin_popcount(adj[static_cast<std::size_t>(v)]));
    for (int round = 0; round < 2; ++round) {
      std::vector<std::uint64_t> next(static_cast<std::size_t>(n_));
      for (int v = 0; v < n_; ++v) {
        std::vector<std::uint64_t> around;
        for (int u = 0; u < n_; ++u)
          if (adj[static_cast<std::size_t>(v)] >> u & 1u) around.push_back(label[static_cast<std::size_t>(u)]);
        std::sort(around.begin(), around.end());
        std::uint64_t h = acsp::splitmix64(label[static_cast<std::size_t>(v)]);
        for (auto a : around) h = acsp::hash_combine(h, a);
        next[static_cast<std::size_t>(v)] = h;
      }
      label = std::move(next);
    }
    auto key = label;
    std::sort(key.begin(), key.end());
    return {std::move(label), std::move(key)};
  }

  bool isomorphic(const Adj& a, const std::vector<std::uint64_t>& la, const Adj& b,
                  const std::vector<std::uint64_t>& lb) const {
    std::vector<int> map(static_cast<std::size_t>(n_), -1);
    std::uint32_t used = 0;
    return extend(a, la, b, lb, map, used, 0);
  }

  bool extend(const Adj& a, const std::vector<std::uint64_t>& la, const Adj& b, const std::vector<std::uint64_t>& lb,
              std::vector<int>& map, std::uint32_t& used, int v) const {
    if (v == n_) return true;
    for (int w = 0; w < n_; ++w) {
      if (used >> w & 1u || la[static_cast<std::size_t>(v)] != lb[static_cast<std::size_t>(w)]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) {
        const bool ea = a[static_cast<std::size_t>(v)] >> u & 1u;
        const bool eb = b[static_cast<std::size_t>(w)] >> map[static_cast<std::size_t>(u)] & 1u;
        ok = ea == eb;
      }
      if (!ok) continue;
      map[static_cast<std::size_t>(v)] = w;
      used |= 1u << w;
      if (extend(a, la, b, lb, map, used, v + 1)) return true;
      used &= ~(1u << w);
    }
    return false;
  }

  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& k) const {
      std::uint64_t h = 0;
      for (auto x : k) h = acsp::hash_combine(h, x);
      return static_cast<std::size_t>(h);
    }
  };

  int n_;
  std::vector<std::uint32_t> reps_;
  std::vector<Adj> reps_adj_;
  std::vector<std::vector<std::uint64_t>> reps_label_;
  std::unordered_map<std::vector<std::uint64_t>, std::vector<int>, KeyHash> buckets_;
};

}  // namespace fixtures
