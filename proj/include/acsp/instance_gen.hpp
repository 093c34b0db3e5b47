#pragma once

// Seeded random instances: connected graphs with a fixed edge budget, integer
// weights and every color present.

#include <cstdint>
#include <string>
#include <vector>

#include "acsp/graph.hpp"

namespace acsp {

struct GenSpec {
  int n = 50;
  int k = 10;
  double avg_degree = 6.0;
  double avg_weight = 10.0;
  std::uint64_t seed = 0;
};

// Throws std::invalid_argument when the requested graph cannot be built.
void check_spec(const GenSpec& spec);

// round(n * avg_degree / 2) edges over a random spanning tree, weights uniform
// on [1, 2*avg_weight - 1], base is the first vertex.
Instance generate(const GenSpec& spec);

struct NamedInstance {
  std::string name;
  Instance instance;
};

// The eight benchmark graph types, "n50-c10" through "n200-c75"; row i uses
// seed + i.
std::vector<NamedInstance> table1_suite(std::uint64_t seed);

std::string instance_name(int n, int k);

}  // namespace acsp
