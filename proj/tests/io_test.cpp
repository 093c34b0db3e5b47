#include <sstream>

#include "acsp/io.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace acsp;

TEST_SUITE("io") {

TEST_CASE("reads the text format with 1-based ids and comments") {
  std::istringstream in(
      "# star\n"
      "3 3 1\n"
      "1 2 3\n"
      "1 2 2\n"
      "# second edge\n"
      "1 3 3.5\n");
  const Instance inst = read_instance(in);
  CHECK(inst.base == 0);
  CHECK(inst.graph.num_vertices() == 3);
  CHECK(inst.graph.num_colors() == 3);
  CHECK(inst.graph.color(2) == 2);
  CHECK(inst.graph.weight(0, 2) == 3.5);
}

TEST_CASE("integer weights round-trip byte-exactly") {
  const std::string text = "3 3 1\n1 2 3\n1 2 2\n1 3 3\n";
  std::istringstream in(text);
  std::ostringstream out;
  write_instance(out, read_instance(in));
  CHECK(out.str() == text);
}

TEST_CASE("random instances round-trip") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = fixtures::random_instance(rng, {.n = 9, .k = 4, .min_degree = 3});
    std::ostringstream first;
    write_instance(first, inst);
    std::istringstream back(first.str());
    std::ostringstream second;
    write_instance(second, read_instance(back));
    CHECK(first.str() == second.str());
  }
}

TEST_CASE("format_number") {
  CHECK(format_number(7.0) == "7");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(2.5) == "2.5");
  CHECK(std::stod(format_number(0.1)) == 0.1);
}

TEST_CASE("malformed input raises ParseError") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_instance(in);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("3 3 4\n1 2 3\n"), ParseError);         // base out of range
  CHECK_THROWS_AS(parse("3 3 1\n1 2\n"), ParseError);           // missing colors
  CHECK_THROWS_AS(parse("3 3 1\n1 2 3\n1 2\n"), ParseError);    // short edge line
  CHECK_THROWS_AS(parse("3 3 1\n1 2 3\n1 2 -1\n"), ParseError); // negative weight
  CHECK_THROWS_AS(parse("3 3 1\n1 2 9\n"), ParseError);         // color out of range
  CHECK_THROWS_AS(parse("3 3 1\n1 2 x\n"), ParseError);
  CHECK_THROWS_AS(load_instance("/nonexistent/file.acsp"), ParseError);
}

}  // TEST_SUITE
