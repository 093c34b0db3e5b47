#pragma once

#include <cstdint>
#include <optional>

#include "acsp/graph.hpp"

namespace acsp {

// Node of the (vertex, covered-color-set) product graph.
struct SearchState {
  Vertex vertex = 0;
  std::uint64_t mask = 0;
};

inline constexpr int kMaxExactColors = 30;

// Minimum-cost feasible walk by uniform-cost search over SearchState. Among
// optimal walks the one with fewest edges is returned, ties broken by the
// lexicographically smallest vertex sequence. nullopt when infeasible.
std::optional<Solution> solve_exact(const Instance& instance);

// Optimum by depth-first enumeration of walks with cost <= cost_bound that
// never reuse a directed edge; independent of solve_exact. nullopt if no
// feasible walk fits under the bound.
std::optional<double> enumerate_oracle(const Instance& instance, double cost_bound);

// Cheapest spanning tree over a connected vertex subset that meets every
// color, by subset enumeration. Only for small graphs (n <= 20).
std::optional<double> lgmst_bruteforce(const ColoredGraph& graph);

}  // namespace acsp
