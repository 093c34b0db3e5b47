#pragma once

// Directed source/sink graph used by the integer program, plus the
// Hamiltonian-path reduction used as a hardness test fixture.

#include <span>
#include <vector>

#include "acsp/graph.hpp"

namespace acsp {

struct Arc {
  int tail = 0;  // 0 = source, 1..n = original vertices, n+1 = sink
  int head = 0;
  double w = 0.0;
};

// Node ids follow the 1-based external numbering: the source is 0, original
// vertex v (0-based) is v+1 and the sink is n+1. Colors of original vertices
// are 1..k here; the source and sink carry color 0.
struct DirectedInstance {
  int n = 0;
  int num_colors = 0;  // original k, excluding the extra color 0
  int base = 1;        // node id of the base
  std::vector<Arc> arcs;
  std::vector<int> color_of;  // size n+2

  int source() const { return 0; }
  int sink() const { return n + 1; }
  int num_nodes() const { return n + 2; }
};

// Arcs are laid out as: (0, base), then (i, j) and (j, i) for every edge in
// edge order, then (i, n+1) for i = 1..n.
DirectedInstance to_directed(const Instance& instance);

// Maps a source-to-sink node sequence back to a 0-based walk.
Walk directed_walk_to_walk(const DirectedInstance& d, std::span<const int> node_walk);

// Adds a fresh base adjacent to every vertex, one distinct color per vertex and
// unit weights. The base is the last vertex.
Instance reduce_hp(int num_vertices, std::span<const std::pair<Vertex, Vertex>> edges);

}  // namespace acsp
