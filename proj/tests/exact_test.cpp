#include "acsp/exact.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace acsp;

TEST_SUITE("exact") {

TEST_CASE("fixture optima") {
  const auto tri = solve_exact(fixtures::triangle());
  REQUIRE(tri);
  CHECK(tri->cost == 2.0);
  CHECK(tri->walk == Walk{0, 1, 2});

  const auto star = solve_exact(fixtures::star());
  REQUIRE(star);
  CHECK(star->cost == 7.0);
  CHECK(star->walk == Walk{0, 1, 0, 2});

  const auto single = solve_exact(fixtures::single_vertex());
  REQUIRE(single);
  CHECK(single->cost == 0.0);
  CHECK(single->walk == Walk{0});

  CHECK_FALSE(solve_exact(fixtures::isolated_color()));
}

TEST_CASE("enumeration oracle") {
  CHECK(enumerate_oracle(fixtures::triangle(), 2.0) == 2.0);
  CHECK_FALSE(enumerate_oracle(fixtures::star(), 6.0));
  CHECK(enumerate_oracle(fixtures::star(), 7.0) == 7.0);
  CHECK_THROWS_AS(enumerate_oracle(fixtures::star(), -1.0), std::invalid_argument);
}

TEST_CASE("lgmst brute force") {
  CHECK(lgmst_bruteforce(fixtures::triangle().graph) == 2.0);
  CHECK(lgmst_bruteforce(fixtures::star().graph) == 5.0);
  CHECK_FALSE(lgmst_bruteforce(fixtures::isolated_color().graph));
}

TEST_CASE("exact search agrees with enumeration and returns clean walks") {
  Rng rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(6));
    const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(n, 4))));
    const auto inst = fixtures::random_instance(rng, {.n = n, .k = k, .zero_weight = 0.15});
    const auto s = solve_exact(inst);
    REQUIRE(s);
    CHECK(is_feasible(inst, s->walk));
    CHECK(walk_cost(s->walk, inst.graph) == s->cost);
    CHECK(traverses_each_arc_once(s->walk));
    CHECK(enumerate_oracle(inst, fixtures::tour_bound(inst)) == s->cost);
  }
}

TEST_CASE("adding an edge never raises the optimum") {
  Rng rng(103);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = fixtures::random_instance(rng, {.n = 8, .k = 4});
    const double before = solve_exact(inst)->cost;
    std::vector<Edge> edges(inst.graph.edges().begin(), inst.graph.edges().end());
    for (int tries = 0; tries < 20; ++tries) {
      const auto u = static_cast<Vertex>(rng.below(8));
      const auto v = static_cast<Vertex>(rng.below(8));
      if (u == v || inst.graph.edge_index(u, v)) continue;
      edges.push_back({u, v, static_cast<double>(rng.uniform_int(1, 9))});
      break;
    }
    const std::vector<Color> colors(inst.graph.colors().begin(), inst.graph.colors().end());
    const Instance more{make_graph(4, colors, edges), inst.base};
    CHECK(solve_exact(more)->cost <= before);
  }
}

TEST_CASE("equal-cost ties prefer fewer edges, then the smaller sequence") {
  // 0-1-2 costs 2 along two edges; 0-2 directly also costs 2.
  const Instance inst{make_graph(2, {0, 0, 1}, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 2.0}}), 0};
  CHECK(solve_exact(inst)->walk == Walk{0, 2});
  // Two single-edge optima: vertex 1 wins over vertex 2.
  const Instance twin{make_graph(2, {0, 1, 1}, {{0, 1, 3.0}, {0, 2, 3.0}}), 0};
  CHECK(solve_exact(twin)->walk == Walk{0, 1});
}

}  // TEST_SUITE
