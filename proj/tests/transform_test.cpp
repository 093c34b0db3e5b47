#include <map>

#include "acsp/exact.hpp"
#include "acsp/transform.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace acsp;

TEST_SUITE("transform") {

TEST_CASE("arc counts") {
  CHECK(to_directed(fixtures::triangle()).arcs.size() == 10);
  CHECK(to_directed(fixtures::star()).arcs.size() == 8);
  const auto single = to_directed(fixtures::single_vertex());
  REQUIRE(single.arcs.size() == 2);
  CHECK(single.arcs[0].tail == 0);
  CHECK(single.arcs[0].head == 1);
  CHECK(single.arcs[1].tail == 1);
  CHECK(single.arcs[1].head == 2);
}

TEST_CASE("directed instance layout") {
  const auto inst = fixtures::star();
  const auto d = to_directed(inst);
  CHECK(d.n == 3);
  CHECK(d.base == 1);
  CHECK(d.source() == 0);
  CHECK(d.sink() == 4);
  CHECK(d.color_of == std::vector<int>{0, 1, 2, 3, 0});
  CHECK(d.arcs.front().w == 0.0);
  for (int i = 1; i <= 3; ++i) {
    const Arc& a = d.arcs[d.arcs.size() - 4 + static_cast<std::size_t>(i)];
    CHECK(a.tail == i);
    CHECK(a.head == 4);
    CHECK(a.w == 0.0);
  }
}

TEST_CASE("collapsing arc pairs recovers the edge set") {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = fixtures::random_instance(rng, {.n = 9, .k = 3, .min_degree = 3});
    const auto d = to_directed(inst);
    CHECK(d.arcs.size() == 2 * inst.graph.edges().size() + 1 + 9);
    std::map<std::pair<int, int>, double> arcs;
    for (const Arc& a : d.arcs) {
      if (a.tail == d.source() || a.head == d.sink()) {
        CHECK(a.w == 0.0);
        continue;
      }
      CHECK(arcs.emplace(std::pair{a.tail, a.head}, a.w).second);
    }
    for (const auto& [key, w] : arcs) {
      const auto mirror = arcs.find({key.second, key.first});
      REQUIRE(mirror != arcs.end());
      CHECK(mirror->second == w);
      CHECK(inst.graph.weight(key.first - 1, key.second - 1) == w);
    }
    CHECK(arcs.size() == 2 * inst.graph.edges().size());
  }
}

TEST_CASE("directed_walk_to_walk") {
  const auto tri = to_directed(fixtures::triangle());
  CHECK(directed_walk_to_walk(tri, std::vector<int>{0, 1, 2, 3, 4}) == Walk{0, 1, 2});
  const auto single = to_directed(fixtures::single_vertex());
  CHECK(directed_walk_to_walk(single, std::vector<int>{0, 1, 2}) == Walk{0});
  CHECK_THROWS_AS(directed_walk_to_walk(tri, std::vector<int>{1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(directed_walk_to_walk(tri, std::vector<int>{0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(directed_walk_to_walk(tri, std::vector<int>{0, 1, 0, 4}), std::invalid_argument);
}

TEST_CASE("reduce_hp construction") {
  const std::vector<std::pair<Vertex, Vertex>> path{{0, 1}, {1, 2}};
  const auto p = reduce_hp(3, path);
  CHECK(p.graph.num_vertices() == 4);
  CHECK(p.graph.num_edges() == 5);
  CHECK(p.graph.num_colors() == 4);
  CHECK(p.base == 3);
  for (const auto& e : p.graph.edges()) CHECK(e.w == 1.0);
  CHECK(validate(p).empty());

  const std::vector<std::pair<Vertex, Vertex>> k3{{0, 1}, {1, 2}, {0, 2}};
  const auto t = reduce_hp(3, k3);
  CHECK(t.graph.num_vertices() == 4);
  CHECK(t.graph.num_edges() == 6);
  CHECK(t.graph.num_colors() == 4);

  const auto one = reduce_hp(1, {});
  CHECK(one.graph.num_vertices() == 2);
  CHECK(one.graph.num_edges() == 1);
  CHECK(one.graph.num_colors() == 2);
  CHECK(solve_exact(one)->cost == 1.0);
}

TEST_CASE("Hamiltonian path reduction on every graph up to five vertices") {
  for (int n = 1; n <= 5; ++n) {
    const fixtures::GraphClasses classes(n);
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const auto edges = classes.edges(i);
      const auto opt = solve_exact(reduce_hp(n, edges));
      REQUIRE(opt);
      CHECK((opt->cost == n) == fixtures::has_hamiltonian_path(n, edges));
    }
  }
}

}  // TEST_SUITE
