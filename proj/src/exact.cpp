#include "acsp/exact.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace acsp {

namespace {

struct Key {
  double cost = kInfinity;
  int edges = 0;
};

bool same_cost(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

bool less(const Key& a, const Key& b) {
  if (!same_cost(a.cost, b.cost)) return a.cost < b.cost;
  return a.edges < b.edges;
}

bool equal(const Key& a, const Key& b) { return same_cost(a.cost, b.cost) && a.edges == b.edges; }

struct Label {
  Key key;
  bool closed = false;
};

class ProductSearch {
 public:
  explicit ProductSearch(const Instance& instance)
      : instance_(instance), k_(instance.graph.num_colors()), full_((std::uint64_t{1} << k_) - 1) {}

  std::optional<Solution> run() {
    const Vertex s = instance_.base;
    const std::uint64_t start = pack(s, bit(s));
    labels_[start] = Label{{0.0, 0}, false};
    queue_.push({{0.0, 0}, start});
    std::optional<Key> best;
    while (!queue_.empty()) {
      const auto [key, id] = queue_.top();
      if (best && less(*best, key)) break;
      queue_.pop();
      auto& label = labels_[id];
      if (label.closed || !equal(label.key, key)) continue;
      label.closed = true;
      const Vertex v = vertex_of(id);
      const std::uint64_t mask = mask_of(id);
      if (mask == full_) {
        if (!best) best = key;
        goals_.push_back(id);
        continue;
      }
      for (const Neighbor& nb : instance_.graph.neighbors(v)) {
        const std::uint64_t next = pack(nb.to, mask | bit(nb.to));
        const Key candidate{key.cost + nb.w, key.edges + 1};
        auto [it, inserted] = labels_.try_emplace(next, Label{candidate, false});
        if (!inserted) {
          if (it->second.closed || !less(candidate, it->second.key)) continue;
          it->second.key = candidate;
        }
        queue_.push({candidate, next});
      }
    }
    if (!best) return std::nullopt;
    mark_optimal_region(*best);
    return Solution{trace(start), best->cost};
  }

 private:
  struct Entry {
    Key key;
    std::uint64_t id;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (less(b.key, a.key)) return true;
      if (less(a.key, b.key)) return false;
      return a.id > b.id;
    }
  };

  std::uint64_t bit(Vertex v) const { return std::uint64_t{1} << instance_.graph.color(v); }
  std::uint64_t pack(Vertex v, std::uint64_t mask) const {
    return (static_cast<std::uint64_t>(v) << k_) | mask;
  }
  Vertex vertex_of(std::uint64_t id) const { return static_cast<Vertex>(id >> k_); }
  std::uint64_t mask_of(std::uint64_t id) const { return id & full_; }

  const Label* closed_label(std::uint64_t id) const {
    const auto it = labels_.find(id);
    if (it == labels_.end() || !it->second.closed) return nullptr;
    return &it->second;
  }

  bool tight(const Label& from, double w, const Label& to) const {
    return equal(Key{from.key.cost + w, from.key.edges + 1}, to.key);
  }

  // States lying on some optimal walk, found by walking tight edges backwards
  // from the optimal goals.
  void mark_optimal_region(const Key& best) {
    std::vector<std::uint64_t> stack;
    for (auto id : goals_) {
      if (equal(labels_.at(id).key, best) && marked_.insert(id).second) stack.push_back(id);
    }
    while (!stack.empty()) {
      const auto id = stack.back();
      stack.pop_back();
      const Label& to = labels_.at(id);
      const Vertex u = vertex_of(id);
      const std::uint64_t mask = mask_of(id);
      const std::uint64_t masks[2] = {mask, mask & ~bit(u)};
      for (const Neighbor& nb : instance_.graph.neighbors(u)) {
        for (int variant = 0; variant < (masks[0] == masks[1] ? 1 : 2); ++variant) {
          const std::uint64_t prev_mask = masks[variant];
          if (!(prev_mask & bit(nb.to))) continue;
          const std::uint64_t prev = pack(nb.to, prev_mask);
          const Label* from = closed_label(prev);
          if (!from || !tight(*from, nb.w, to)) continue;
          if (marked_.insert(prev).second) stack.push_back(prev);
        }
      }
    }
  }

  Walk trace(std::uint64_t start) const {
    Walk walk{vertex_of(start)};
    std::uint64_t id = start;
    while (mask_of(id) != full_) {
      const Label& from = labels_.at(id);
      bool moved = false;
      for (const Neighbor& nb : instance_.graph.neighbors(vertex_of(id))) {
        const std::uint64_t next = pack(nb.to, mask_of(id) | bit(nb.to));
        const Label* to = closed_label(next);
        if (!to || !marked_.count(next) || !tight(from, nb.w, *to)) continue;
        walk.push_back(nb.to);
        id = next;
        moved = true;
        break;
      }
      if (!moved) throw std::logic_error("solve_exact: optimal walk reconstruction failed");
    }
    return walk;
  }

  const Instance& instance_;
  int k_;
  std::uint64_t full_;
  std::unordered_map<std::uint64_t, Label> labels_;
  std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
  std::vector<std::uint64_t> goals_;
  std::unordered_set<std::uint64_t> marked_;
};

class WalkEnumerator {
 public:
  WalkEnumerator(const Instance& instance, double bound)
      : graph_(instance.graph),
        bound_(bound),
        counts_(static_cast<std::size_t>(graph_.num_colors()), 0),
        used_(static_cast<std::size_t>(graph_.num_vertices() * graph_.num_vertices()), 0) {}

  std::optional<double> run(Vertex base) {
    enter(base);
    dfs(base, 0.0);
    return best_;
  }

 private:
  void enter(Vertex v) {
    if (counts_[static_cast<std::size_t>(graph_.color(v))]++ == 0) ++covered_;
  }
  void leave(Vertex v) {
    if (--counts_[static_cast<std::size_t>(graph_.color(v))] == 0) --covered_;
  }

  void dfs(Vertex v, double cost) {
    if (covered_ == graph_.num_colors()) {
      if (!best_ || cost < *best_) best_ = cost;
      return;
    }
    const auto n = static_cast<std::size_t>(graph_.num_vertices());
    for (const Neighbor& nb : graph_.neighbors(v)) {
      const double next_cost = cost + nb.w;
      if (next_cost > bound_) continue;
      auto& arc = used_[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(nb.to)];
      if (arc) continue;
      arc = 1;
      enter(nb.to);
      dfs(nb.to, next_cost);
      leave(nb.to);
      arc = 0;
    }
  }

  const ColoredGraph& graph_;
  double bound_;
  std::vector<int> counts_;
  std::vector<char> used_;
  int covered_ = 0;
  std::optional<double> best_;
};

}  // namespace

std::optional<Solution> solve_exact(const Instance& instance) {
  if (instance.graph.num_colors() > kMaxExactColors) {
    throw std::invalid_argument("solve_exact supports at most " + std::to_string(kMaxExactColors) +
                                " colors");
  }
  if (!has_feasible_walk(instance)) return std::nullopt;
  return ProductSearch(instance).run();
}

std::optional<double> enumerate_oracle(const Instance& instance, double cost_bound) {
  if (!(cost_bound >= 0.0)) throw std::invalid_argument("enumerate_oracle: negative cost bound");
  return WalkEnumerator(instance, cost_bound).run(instance.base);
}

std::optional<double> lgmst_bruteforce(const ColoredGraph& graph) {
  const int n = graph.num_vertices();
  const int k = graph.num_colors();
  if (n > 20) throw std::invalid_argument("lgmst_bruteforce supports at most 20 vertices");
  std::vector<double> w(static_cast<std::size_t>(n * n), kInfinity);
  for (const Edge& e : graph.edges()) {
    auto& a = w[static_cast<std::size_t>(e.u * n + e.v)];
    a = std::min(a, e.w);
    w[static_cast<std::size_t>(e.v * n + e.u)] = a;
  }
  std::optional<double> best;
  std::vector<Vertex> members;
  std::vector<double> reach(static_cast<std::size_t>(n));
  std::vector<char> in_tree(static_cast<std::size_t>(n));
  const std::uint64_t all_colors = (std::uint64_t{1} << k) - 1;
  for (std::uint32_t subset = 1; subset < (std::uint32_t{1} << n); ++subset) {
    std::uint64_t colors = 0;
    members.clear();
    for (Vertex v = 0; v < n; ++v) {
      if (subset >> v & 1U) {
        members.push_back(v);
        colors |= std::uint64_t{1} << graph.color(v);
      }
    }
    if (colors != all_colors) continue;
    // Prim over the induced subgraph; an infinite key means disconnected.
    for (Vertex v : members) {
      reach[static_cast<std::size_t>(v)] = kInfinity;
      in_tree[static_cast<std::size_t>(v)] = 0;
    }
    reach[static_cast<std::size_t>(members.front())] = 0.0;
    double total = 0.0;
    bool connected = true;
    for (std::size_t step = 0; step < members.size(); ++step) {
      Vertex pick = kNoVertex;
      for (Vertex v : members) {
        if (!in_tree[static_cast<std::size_t>(v)] &&
            (pick == kNoVertex || reach[static_cast<std::size_t>(v)] < reach[static_cast<std::size_t>(pick)])) {
          pick = v;
        }
      }
      if (reach[static_cast<std::size_t>(pick)] == kInfinity) {
        connected = false;
        break;
      }
      in_tree[static_cast<std::size_t>(pick)] = 1;
      total += reach[static_cast<std::size_t>(pick)];
      if (best && total >= *best) {
        connected = false;
        break;
      }
      for (Vertex v : members) {
        auto& r = reach[static_cast<std::size_t>(v)];
        r = std::min(r, w[static_cast<std::size_t>(pick * n + v)]);
      }
    }
    if (connected && (!best || total < *best)) best = total;
  }
  return best;
}

}  // namespace acsp
