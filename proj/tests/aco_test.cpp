#include <numeric>

#include "acsp/aco.hpp"
#include "acsp/exact.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace acsp;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

AcoParams quick() {
  AcoParams p;
  p.colony_size = 20;
  p.iteration_count = 20;
  return p;
}

}  // namespace

TEST_SUITE("aco") {

TEST_CASE("parameter checks") {
  CHECK_NOTHROW(check_params(AcoParams{}));
  AcoParams p;
  p.alpha = 0.6;  // alpha above beta
  CHECK_THROWS_AS(check_params(p), std::invalid_argument);
  p = {};
  p.delta = 1.5;
  CHECK_THROWS_AS(check_params(p), std::invalid_argument);
  p = {};
  p.q = -0.1;
  CHECK_THROWS_AS(check_params(p), std::invalid_argument);
  p = {};
  p.colony_size = 0;
  CHECK_THROWS_AS(check_params(p), std::invalid_argument);
}

TEST_CASE("distance rule") {
  const auto two = prob_distance(std::vector<double>{2.0, 3.0}, 10.0);
  CHECK(two[0] == doctest::Approx(8.0 / 15.0));
  CHECK(two[1] == doctest::Approx(7.0 / 15.0));
  CHECK(prob_distance(std::vector<double>{4.0}, 5.0) == std::vector<double>{1.0});
  for (double p : prob_distance(std::vector<double>{3.0, 3.0, 3.0, 3.0}, 4.0)) CHECK(p == doctest::Approx(0.25));
  CHECK_THROWS_AS(prob_distance(std::vector<double>{2.0, 5.0}, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(prob_distance(std::vector<double>{}, 5.0), std::invalid_argument);
}

TEST_CASE("pheromone rule") {
  // alpha = 1 is folded into the attractions passed in.
  const auto p = prob_pheromone(std::vector<double>{1.0, 1.0}, std::vector<double>{2.0, 1.0}, 0.0);
  REQUIRE(p);
  CHECK((*p)[0] == doctest::Approx(2.0 / 3.0));
  CHECK((*p)[1] == doctest::Approx(1.0 / 3.0));

  const auto even = prob_pheromone(std::vector<double>{2.0, 2.0, 2.0}, std::vector<double>{0.7, 0.7, 0.7}, 0.5);
  REQUIRE(even);
  for (double x : *even) CHECK(x == doctest::Approx(1.0 / 3.0));

  CHECK_FALSE(prob_pheromone(std::vector<double>{1.0, 2.0}, std::vector<double>{0.0, 0.0}, 0.5));
}

TEST_CASE("alpha and beta zero give uniform choice") {
  PheromoneField field(3, 2);
  field.at(0, 0) = 5.0;
  field.at(1, 1) = 0.25;
  field.at(2, 0) = 0.0;
  std::vector<double> attractions;
  for (int e = 0; e < 3; ++e) attractions.push_back(field.attraction(e, 0.0));
  for (double a : attractions) CHECK(a == 2.0);
  const auto p = prob_pheromone(std::vector<double>{1.0, 5.0, 9.0}, attractions, 0.0);
  REQUIRE(p);
  for (double x : *p) CHECK(x == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("local update") {
  const auto inst = fixtures::triangle();
  for (double delta : {0.0, 1.0, 0.1}) {
    PheromoneField field(inst.graph.num_edges(), 3, 1.0);
    Ant ant(inst, 2.0);
    local_update(field, ant, 1, delta);
    for (Color k = 0; k < 3; ++k) {
      if (delta == 0.0) {
        CHECK(field.at(1, k) == 1.0);
        CHECK(ant.pheromone[static_cast<std::size_t>(k)] == 2.0);
      } else if (delta == 1.0) {
        CHECK(field.at(1, k) == 2.0);
        CHECK(ant.pheromone[static_cast<std::size_t>(k)] == 0.0);
      } else {
        CHECK(field.at(1, k) == doctest::Approx(1.1));
        CHECK(ant.pheromone[static_cast<std::size_t>(k)] == doctest::Approx(1.8));
      }
      CHECK(field.at(0, k) == 1.0);
    }
  }
}

TEST_CASE("global update") {
  const auto inst = fixtures::triangle();
  PheromoneField field(inst.graph.num_edges(), 3, 0.0);
  global_update(field, Walk{0, 1}, inst.graph, 2.0, 0.0);
  for (double v : field.levels()) CHECK(v == 0.0);

  global_update(field, Walk{0, 1}, inst.graph, 2.0, 0.5);
  const int on = *inst.graph.edge_index(0, 1);
  for (int e = 0; e < inst.graph.num_edges(); ++e)
    for (Color k = 0; k < 3; ++k) CHECK(field.at(e, k) == (e == on ? 0.25 : 0.0));

  // Zero cost is skipped.
  global_update(field, Walk{0, 2}, inst.graph, 0.0, 0.5);
  CHECK(field.at(*inst.graph.edge_index(0, 2), 0) == 0.0);
}

TEST_CASE("edge selection") {
  const auto star = fixtures::star();
  PheromoneField field(star.graph.num_edges(), 3);
  const AcoParams params;
  Rng rng(4);
  Ant center(star);
  const auto pick = select_edge(center, field, star.graph, params, 4.0, rng);
  REQUIRE(pick);
  CHECK((pick->to == 1 || pick->to == 2));

  Ant leaf(star);
  leaf.walk = {0, 1};
  leaf.used[static_cast<std::size_t>(2 * *star.graph.edge_index(0, 1) + 1)] = 1;  // 1 -> 0 taken
  CHECK_FALSE(select_edge(leaf, field, star.graph, params, 4.0, rng));
  CHECK(leaf.discarded);

  Rng a(11), b(11);
  Ant x(star), y(star);
  CHECK(select_edge(x, field, star.graph, params, 4.0, a)->to == select_edge(y, field, star.graph, params, 4.0, b)->to);
}

TEST_CASE("fuzzed probability laws and conservation") {
  Rng rng(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t m = 1 + rng.index(8);
    std::vector<double> w(m), attraction(m);
    double wmax = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      w[i] = rng.below(4) == 0 ? 0.0 : rng.uniform01() * 50.0;
      attraction[i] = rng.below(3) == 0 ? 0.0 : rng.uniform01() * 3.0;
      wmax = std::max(wmax, w[i]);
    }
    const auto pd = prob_distance(w, wmax + 0.5 + rng.uniform01() * 10.0);
    CHECK(std::abs(sum(pd) - 1.0) <= 1e-12);
    for (double p : pd) CHECK(p > 0.0);
    if (const auto pp = prob_pheromone(w, attraction, rng.uniform01())) {
      CHECK(std::abs(sum(*pp) - 1.0) <= 1e-12);
      for (double p : *pp) CHECK(p >= 0.0);
    }
  }
}

TEST_CASE("field levels stay non-negative under mixed updates") {
  Rng gen(5);
  const auto inst = fixtures::random_instance(gen, {.n = 8, .k = 3});
  PheromoneField field(inst.graph.num_edges(), 3, 0.0);
  Ant ant(inst, 1.0);
  Rng rng(6);
  for (int step = 0; step < 500; ++step) {
    const auto e = static_cast<int>(rng.below(static_cast<std::uint64_t>(inst.graph.num_edges())));
    if (rng.below(2)) {
      local_update(field, ant, e, rng.uniform01());
    } else {
      const Edge& edge = inst.graph.edges()[static_cast<std::size_t>(e)];
      global_update(field, Walk{edge.u, edge.v}, inst.graph, 1.0 + rng.uniform01() * 20.0, rng.uniform01());
    }
  }
  for (double v : field.levels()) {
    CHECK(v >= 0.0);
    CHECK(std::isfinite(v));
  }
  for (double v : ant.pheromone) CHECK(v >= 0.0);
}

TEST_CASE("fixture solves") {
  Rng three(3);
  CHECK(aco_solve(fixtures::triangle(), {}, three).cost == 2.0);
  Rng three_again(3);
  CHECK(aco_solve(fixtures::star(), {}, three_again).cost == 7.0);
  Rng rng(1);
  CHECK(aco_solve(fixtures::single_vertex(), {}, rng).cost == 0.0);
  CHECK_THROWS_AS(aco_solve(fixtures::isolated_color(), {}, rng), InfeasibleInstance);
}

TEST_CASE("solutions are feasible, honest and reproducible") {
  Rng gen(91);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = fixtures::random_instance(gen, {.n = 10, .k = 4});
    const double opt = solve_exact(inst)->cost;
    for (double ant_pheromone : {0.0, 1.0}) {
      AcoParams p = quick();
      p.ant_pheromone = ant_pheromone;
      Rng a(trial), b(trial);
      const auto s = aco_solve(inst, p, a);
      CHECK(is_feasible(inst, s.walk));
      CHECK(traverses_each_arc_once(s.walk));
      CHECK(s.cost == walk_cost(s.walk, inst.graph));
      CHECK(s.cost >= opt - 1e-9);
      CHECK(aco_solve(inst, p, b).walk == s.walk);
    }
  }
}

}  // TEST_SUITE
