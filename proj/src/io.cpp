#include "acsp/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace acsp {

namespace {

std::vector<std::string> tokens_of(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string token;
    while (ls >> token) tokens.push_back(token);
  }
  return tokens;
}

long long parse_int(const std::string& token, const char* what) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(std::string("expected integer ") + what + ", got '" + token + "'");
  }
  return value;
}

double parse_double(const std::string& token) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("expected weight, got '" + token + "'");
  }
  return value;
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  (void)ec;
  return std::string(buffer, ptr);
}

Instance read_instance(std::istream& in) {
  const auto tokens = tokens_of(in);
  if (tokens.size() < 3) throw ParseError("missing header 'n k base'");
  const auto n = parse_int(tokens[0], "n");
  const auto k = parse_int(tokens[1], "k");
  const auto base = parse_int(tokens[2], "base");
  if (n < 1) throw ParseError("vertex count must be positive");
  if (k < 1) throw ParseError("color count must be positive");
  if (base < 1 || base > n) throw ParseError("base out of range");
  if (tokens.size() < 3 + static_cast<std::size_t>(n)) throw ParseError("missing vertex colors");
  std::vector<Color> colors;
  colors.reserve(static_cast<std::size_t>(n));
  for (long long v = 0; v < n; ++v) {
    colors.push_back(static_cast<Color>(parse_int(tokens[3 + static_cast<std::size_t>(v)], "color") - 1));
  }
  const std::size_t rest = tokens.size() - 3 - static_cast<std::size_t>(n);
  if (rest % 3 != 0) throw ParseError("edge lines must have exactly 'u v w'");
  std::vector<Edge> edges;
  for (std::size_t t = 3 + static_cast<std::size_t>(n); t < tokens.size(); t += 3) {
    const auto u = parse_int(tokens[t], "vertex");
    const auto v = parse_int(tokens[t + 1], "vertex");
    edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), parse_double(tokens[t + 2])});
  }
  Instance instance{ColoredGraph(static_cast<int>(k), std::move(colors), std::move(edges)),
                    static_cast<Vertex>(base - 1)};
  const auto violations = validate(instance);
  if (!violations.empty()) throw ParseError("invalid instance: " + violations.front());
  return instance;
}

void write_instance(std::ostream& out, const Instance& instance) {
  const auto& g = instance.graph;
  out << g.num_vertices() << ' ' << g.num_colors() << ' ' << instance.base + 1 << '\n';
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (v) out << ' ';
    out << g.color(v) + 1;
  }
  out << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u + 1 << ' ' << e.v + 1 << ' ' << format_number(e.w) << '\n';
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  return read_instance(in);
}

void save_instance(const std::string& path, const Instance& instance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write instance file '" + path + "'");
  write_instance(out, instance);
}

}  // namespace acsp
