#include "acsp/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "acsp/rng.hpp"

namespace acsp {

namespace {

long edge_budget(const GenSpec& spec) { return std::lround(spec.n * spec.avg_degree / 2.0); }

std::vector<int> permutation(int n, Rng& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = p.size(); i > 1; --i) std::swap(p[i - 1], p[rng.index(i)]);
  return p;
}

}  // namespace

void check_spec(const GenSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("generate: need at least one node");
  if (spec.k < 1 || spec.k > spec.n) throw std::invalid_argument("generate: need 1 <= colors <= nodes");
  if (spec.avg_degree < 2.0 && spec.n > 2) throw std::invalid_argument("generate: average degree must be at least 2");
  const long max_edges = static_cast<long>(spec.n) * (spec.n - 1) / 2;
  if (edge_budget(spec) > max_edges) throw std::invalid_argument("generate: too many edges for a simple graph");
  if (edge_budget(spec) < spec.n - 1) throw std::invalid_argument("generate: too few edges to connect the graph");
  if (!(spec.avg_weight >= 1.0)) throw std::invalid_argument("generate: average weight must be at least 1");
}

Instance generate(const GenSpec& spec) {
  check_spec(spec);
  Rng rng(spec.seed);
  const long max_w = std::lround(2.0 * spec.avg_weight - 1.0);
  auto weight = [&] { return static_cast<double>(rng.uniform_int(1, max_w)); };

  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> present;
  auto add = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
    if (u == v || !present.insert(key).second) return false;
    edges.push_back({u, v, weight()});
    return true;
  };

  const std::vector<int> order = permutation(spec.n, rng);
  for (std::size_t i = 1; i < order.size(); ++i) add(order[i], order[rng.index(i)]);
  const long budget = edge_budget(spec);
  while (static_cast<long>(edges.size()) < budget) {
    add(static_cast<int>(rng.index(static_cast<std::size_t>(spec.n))),
        static_cast<int>(rng.index(static_cast<std::size_t>(spec.n))));
  }

  std::vector<Color> colors(static_cast<std::size_t>(spec.n));
  const std::vector<int> first = permutation(spec.n, rng);
  for (std::size_t i = 0; i < first.size(); ++i) {
    colors[static_cast<std::size_t>(first[i])] = i < static_cast<std::size_t>(spec.k)
                                                     ? static_cast<Color>(i)
                                                     : static_cast<Color>(rng.index(static_cast<std::size_t>(spec.k)));
  }
  return Instance{make_graph(spec.k, std::move(colors), std::move(edges)), 0};
}

std::string instance_name(int n, int k) { return "n" + std::to_string(n) + "-c" + std::to_string(k); }

std::vector<NamedInstance> table1_suite(std::uint64_t seed) {
  static constexpr int rows[][2] = {{50, 10}, {50, 20}, {50, 25}, {100, 25}, {100, 40}, {100, 50}, {200, 50}, {200, 75}};
  std::vector<NamedInstance> suite;
  for (std::size_t i = 0; i < std::size(rows); ++i) {
    GenSpec spec;
    spec.n = rows[i][0];
    spec.k = rows[i][1];
    spec.seed = seed + i;
    suite.push_back({instance_name(spec.n, spec.k), generate(spec)});
  }
  return suite;
}

}  // namespace acsp
