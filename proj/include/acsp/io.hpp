#pragma once

// Instance text format, one instance per file:
//   line 1: n k base
//   line 2: c_1 ... c_n          (colors in 1..k)
//   rest:   u v w                (one undirected edge per line)
// Ids are 1-based, tokens are whitespace separated and '#' starts a comment
// line. Integer weights round-trip byte-exactly.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "acsp/graph.hpp"

namespace acsp {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Instance read_instance(std::istream& in);
void write_instance(std::ostream& out, const Instance& instance);

Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& instance);

std::string format_number(double value);

}  // namespace acsp
