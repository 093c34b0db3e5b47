#include <cmath>
#include <set>
#include <sstream>

#include "acsp/instance_gen.hpp"
#include "acsp/io.hpp"
#include "doctest.h"

using namespace acsp;

namespace {

bool connected(const ColoredGraph& g) {
  const auto t = dijkstra(g, 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (!t.reachable(v)) return false;
  return true;
}

std::string text(const Instance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

}  // namespace

TEST_SUITE("instance_gen") {

TEST_CASE("default shape") {
  GenSpec spec;
  spec.seed = 1;
  const auto inst = generate(spec);
  CHECK(inst.graph.num_vertices() == 50);
  CHECK(inst.graph.num_edges() == 150);
  CHECK(inst.base == 0);
  CHECK(connected(inst.graph));
  CHECK(validate(inst).empty());
  for (const auto& cls : inst.graph.color_classes()) CHECK_FALSE(cls.empty());
  for (const auto& e : inst.graph.edges()) {
    CHECK(e.w >= 1.0);
    CHECK(e.w <= 19.0);
    CHECK(e.w == std::floor(e.w));
  }
}

TEST_CASE("a tight budget forces the complete graph") {
  GenSpec spec;
  spec.n = 4;
  spec.k = 4;
  spec.avg_degree = 3;
  spec.seed = 1;
  const auto inst = generate(spec);
  CHECK(inst.graph.num_edges() == 6);
  std::set<Color> colors(inst.graph.colors().begin(), inst.graph.colors().end());
  CHECK(colors.size() == 4);
}

TEST_CASE("same seed gives the same bytes") {
  GenSpec spec;
  spec.seed = 99;
  CHECK(text(generate(spec)) == text(generate(spec)));
  GenSpec other = spec;
  other.seed = 100;
  CHECK(text(generate(spec)) != text(generate(other)));
}

TEST_CASE("generator argument checks") {
  GenSpec spec;
  spec.k = 60;
  CHECK_THROWS_AS(check_spec(spec), std::invalid_argument);
  spec = {};
  spec.avg_degree = 1.0;
  CHECK_THROWS_AS(check_spec(spec), std::invalid_argument);
  spec = {};
  spec.n = 5;
  spec.k = 2;
  spec.avg_degree = 10.0;
  CHECK_THROWS_AS(check_spec(spec), std::invalid_argument);
}

TEST_CASE("connectivity, color coverage and mean weight over many seeds") {
  double total = 0.0;
  long count = 0;
  for (std::uint64_t seed = 0; seed < 70; ++seed) {
    GenSpec spec;
    spec.n = 60;
    spec.k = 12;
    spec.seed = seed;
    const auto inst = generate(spec);
    CHECK(connected(inst.graph));
    for (const auto& cls : inst.graph.color_classes()) CHECK_FALSE(cls.empty());
    for (const auto& e : inst.graph.edges()) {
      total += e.w;
      ++count;
    }
  }
  REQUIRE(count >= 10000);
  CHECK(std::abs(total / static_cast<double>(count) - 10.0) <= 0.5);
}

TEST_CASE("benchmark suite") {
  const auto suite = table1_suite(0);
  REQUIRE(suite.size() == 8);
  const char* names[] = {"n50-c10", "n50-c20", "n50-c25", "n100-c25", "n100-c40", "n100-c50", "n200-c50", "n200-c75"};
  for (std::size_t i = 0; i < 8; ++i) CHECK(suite[i].name == names[i]);
  CHECK(suite[0].instance.graph.num_vertices() == 50);
  CHECK(suite[0].instance.graph.num_colors() == 10);
  CHECK(suite[7].instance.graph.num_vertices() == 200);
  CHECK(suite[7].instance.graph.num_colors() == 75);
  GenSpec row3;
  row3.n = 100;
  row3.k = 25;
  row3.seed = 3;
  CHECK(text(suite[3].instance) == text(generate(row3)));
  CHECK(instance_name(50, 10) == "n50-c10");
}

}  // TEST_SUITE
