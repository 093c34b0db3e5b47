#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "acsp/lp.hpp"

namespace acsp {

namespace {

struct BoundChange {
  int var;
  double lower;
  double upper;
};

struct Node {
  std::vector<BoundChange> changes;
  double bound = -std::numeric_limits<double>::infinity();
  SimplexBasis basis;
  long parent = -1;
};

// Most fractional integer variable within the best priority class that has
// any fractional member; -1 when the point is integral.
int branching_variable(const LpModel& model, const std::vector<double>& values, double tol) {
  int best = -1;
  int best_priority = std::numeric_limits<int>::max();
  double best_score = -1.0;
  for (int j = 0; j < model.num_variables(); ++j) {
    const auto& var = model.variables[static_cast<std::size_t>(j)];
    if (!var.is_integer) continue;
    const double v = values[static_cast<std::size_t>(j)];
    const double frac = v - std::floor(v);
    if (frac <= tol || frac >= 1.0 - tol) continue;
    const double score = std::min(frac, 1.0 - frac);
    if (var.branch_priority < best_priority ||
        (var.branch_priority == best_priority && score > best_score + 1e-12)) {
      best = j;
      best_priority = var.branch_priority;
      best_score = score;
    }
  }
  return best;
}

bool prunable(double bound, const std::optional<double>& incumbent) {
  if (!incumbent) return false;
  return bound >= *incumbent - 1e-9 * std::max(1.0, std::abs(*incumbent));
}

}  // namespace

LpSolution branch_and_bound(const LpModel& model, long node_limit) {
  BranchAndBoundOptions options;
  options.node_limit = node_limit;
  return branch_and_bound(model, options);
}

LpSolution branch_and_bound(const LpModel& model, const BranchAndBoundOptions& options) {
  if (options.node_limit <= 0) throw std::invalid_argument("branch_and_bound: node_limit must be positive");
  LpSolver solver(model);
  const int n = model.num_variables();

  std::optional<double> incumbent;
  std::vector<double> incumbent_values;
  std::vector<Node> open;
  open.push_back(Node{});
  long nodes = 0;
  long iterations = 0;
  long last_solved = -2;
  bool unbounded = false;

  while (!open.empty()) {
    if (nodes >= options.node_limit) break;
    if (nodes > 0 && nodes % options.restart_interval == 0) {
      // Best-bound restart: continue the dive from the most promising node.
      const auto best = std::min_element(open.begin(), open.end(),
                                         [](const Node& a, const Node& b) { return a.bound < b.bound; });
      std::iter_swap(best, open.end() - 1);
    }
    Node node = std::move(open.back());
    open.pop_back();
    if (prunable(node.bound, incumbent)) continue;

    for (int j = 0; j < n; ++j) {
      const auto& v = model.variables[static_cast<std::size_t>(j)];
      solver.set_bounds(j, v.lower, v.upper);
    }
    for (const auto& c : node.changes) solver.set_bounds(c.var, c.lower, c.upper);
    if (node.parent != last_solved && !node.basis.head.empty()) solver.set_basis(node.basis);

    const long id = nodes++;
    LpSolution relaxed = solver.solve();
    iterations += relaxed.iterations;
    last_solved = id;
    if (relaxed.status == LpStatus::kUnbounded) {
      unbounded = true;
      break;
    }
    if (relaxed.status != LpStatus::kOptimal) continue;
    if (prunable(relaxed.objective, incumbent)) continue;

    const int var = branching_variable(model, relaxed.values, options.integrality_tol);
    if (var < 0) {
      incumbent = relaxed.objective;
      incumbent_values = relaxed.values;
      for (int j = 0; j < n; ++j) {
        if (model.variables[static_cast<std::size_t>(j)].is_integer) {
          incumbent_values[static_cast<std::size_t>(j)] = std::round(incumbent_values[static_cast<std::size_t>(j)]);
        }
      }
      continue;
    }

    const double value = relaxed.values[static_cast<std::size_t>(var)];
    const SimplexBasis basis = solver.basis();
    Node down{node.changes, relaxed.objective, basis, id};
    down.changes.push_back({var, solver.lower(var), std::floor(value)});
    Node up{std::move(node.changes), relaxed.objective, basis, id};
    up.changes.push_back({var, std::ceil(value), solver.upper(var)});
    open.push_back(std::move(down));
    open.push_back(std::move(up));
  }

  LpSolution result;
  result.nodes = nodes;
  result.iterations = iterations;
  if (unbounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  const bool exhausted = open.empty();
  if (incumbent) {
    result.status = exhausted ? LpStatus::kOptimal : LpStatus::kNodeLimit;
    result.values = std::move(incumbent_values);
    double objective = 0.0;
    for (const auto& t : model.objective) objective += t.coef * result.values[static_cast<std::size_t>(t.var)];
    result.objective = objective;
  } else {
    result.status = exhausted ? LpStatus::kInfeasible : LpStatus::kNodeLimitNoIncumbent;
  }
  return result;
}

}  // namespace acsp
