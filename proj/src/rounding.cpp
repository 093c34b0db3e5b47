#include "acsp/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "acsp/lp.hpp"

namespace acsp {

const char* to_string(RoundingStrategy strategy) {
  switch (strategy) {
    case RoundingStrategy::kX: return "lpx";
    case RoundingStrategy::kF: return "lpf";
    case RoundingStrategy::kFOverX: return "lpfx";
  }
  return "?";
}

const char* to_string(RoundingStatus status) {
  switch (status) {
    case RoundingStatus::kSuccess: return "success";
    case RoundingStatus::kInfeasibleInstance: return "infeasible";
    case RoundingStatus::kLpInfeasible: return "lp infeasible after fixing";
    case RoundingStatus::kExtractionFailed: return "extraction failed";
  }
  return "?";
}

ExtractResult extract_walk(const Instance& instance, const DirectedInstance& d, std::span<const int> chosen_arcs) {
  ExtractResult result;
  const int nodes = d.num_nodes();
  std::vector<int> in(static_cast<std::size_t>(nodes), 0), out(static_cast<std::size_t>(nodes), 0);
  std::vector<std::vector<int>> outgoing(static_cast<std::size_t>(nodes));
  bool has_source_arc = false;
  for (int e : chosen_arcs) {
    if (e < 0 || e >= static_cast<int>(d.arcs.size())) {
      result.diagnostic = "arc index out of range";
      return result;
    }
    const Arc& a = d.arcs[static_cast<std::size_t>(e)];
    ++out[static_cast<std::size_t>(a.tail)];
    ++in[static_cast<std::size_t>(a.head)];
    outgoing[static_cast<std::size_t>(a.tail)].push_back(e);
    if (a.tail == d.source() && a.head == d.base) has_source_arc = true;
  }
  if (!has_source_arc) {
    result.diagnostic = "missing source arc";
    return result;
  }
  if (out[0] != 1 || in[0] != 0) {
    result.diagnostic = "source degree";
    return result;
  }
  if (in[static_cast<std::size_t>(d.sink())] != 1) {
    result.diagnostic = "sink in-degree " + std::to_string(in[static_cast<std::size_t>(d.sink())]);
    return result;
  }
  for (int i = 1; i <= d.n; ++i) {
    if (in[static_cast<std::size_t>(i)] != out[static_cast<std::size_t>(i)]) {
      result.diagnostic = "degree imbalance at vertex " + std::to_string(i);
      return result;
    }
  }

  // Hierholzer, always leaving by the smallest unused head so the trail is
  // deterministic.
  for (auto& list : outgoing) {
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      const int ha = d.arcs[static_cast<std::size_t>(a)].head, hb = d.arcs[static_cast<std::size_t>(b)].head;
      return ha != hb ? ha > hb : a > b;  // popped from the back
    });
  }
  std::vector<int> stack{d.source()}, trail;
  while (!stack.empty()) {
    const int v = stack.back();
    auto& list = outgoing[static_cast<std::size_t>(v)];
    if (list.empty()) {
      trail.push_back(v);
      stack.pop_back();
    } else {
      const int e = list.back();
      list.pop_back();
      stack.push_back(d.arcs[static_cast<std::size_t>(e)].head);
    }
  }
  std::reverse(trail.begin(), trail.end());
  if (trail.size() != chosen_arcs.size() + 1 || trail.back() != d.sink()) {
    result.diagnostic = "disconnected";
    return result;
  }

  Walk walk = directed_walk_to_walk(d, trail);
  if (!is_feasible(instance, walk)) {
    result.diagnostic = "trail misses a color";
    return result;
  }
  walk = crop_tail(instance, std::move(walk));
  result.walk = repair_double_traversal(std::move(walk), instance.graph);
  return result;
}

RoundingResult iterative_round(const Instance& instance, RoundingStrategy strategy, double tol) {
  RoundingResult result;
  if (!has_feasible_walk(instance)) {
    result.status = RoundingStatus::kInfeasibleInstance;
    result.diagnostic = "some color is unreachable from the base";
    return result;
  }
  const DirectedInstance d = to_directed(instance);
  const IlpLayout layout = ilp_layout(d);
  LpModel model = relax(build_ilp(d));
  const std::vector<LpTerm> primary = model.objective;
  // Flows are far from unique on the optimal face, so the flow-keyed
  // strategies take the optimum with the least total flow. Circulating excess
  // would otherwise steer their keys.
  const bool least_flow = strategy != RoundingStrategy::kX;
  std::vector<LpTerm> total_flow;
  for (int e = 0; e < layout.num_arcs; ++e) total_flow.push_back({layout.f(e), 1.0});
  constexpr double inf = std::numeric_limits<double>::infinity();
  // Row bounding the primary objective; open while the primary is solved.
  const int cut = model.num_variables() + model.add_constraint({"objective cut", primary, Relation::kLessEqual, inf});
  LpSolver solver(model);
  auto solve = [&] {
    if (!least_flow) return solver.solve();
    solver.set_objective(primary);
    solver.set_bounds(cut, -inf, inf);
    LpSolution lp = solver.solve();
    if (lp.status != LpStatus::kOptimal) return lp;
    const double objective = lp.objective;
    solver.set_bounds(cut, -inf, objective + 1e-7 * std::max(1.0, std::abs(objective)));
    solver.set_objective(total_flow);
    lp = solver.solve();
    lp.objective = objective;
    return lp;
  };

  ArcSplit split;
  std::vector<int> fixed;  // arcs fixed in the latest round
  for (;;) {
    LpSolution lp = solve();
    if (lp.status != LpStatus::kOptimal && fixed.size() > 1) {
      // Fixing a whole tie at once can close the LP. Undo the round and
      // settle for the first tied arc that keeps it open.
      for (int e : fixed) solver.set_bounds(layout.x(e), 0.0, 1.0);
      for (int e : fixed) {
        solver.set_bounds(layout.x(e), 1.0, 1.0);
        lp = solve();
        if (lp.status == LpStatus::kOptimal) break;
        solver.set_bounds(layout.x(e), 0.0, 1.0);
      }
      ++result.tie_fallbacks;
    }
    fixed.clear();
    if (lp.status != LpStatus::kOptimal) {
      result.status = RoundingStatus::kLpInfeasible;
      result.diagnostic = std::string("relaxation ") + to_string(lp.status) + " at iteration " + std::to_string(result.iterations);
      return result;
    }
    result.lp_objective = lp.objective;
    split = extract_arcs(lp, d, tol);
    if (split.fractional.empty()) break;

    std::vector<double> keys;
    keys.reserve(split.fractional.size());
    for (int e : split.fractional) {
      const double x = lp.values[static_cast<std::size_t>(layout.x(e))];
      const double f = lp.values[static_cast<std::size_t>(layout.f(e))];
      switch (strategy) {
        case RoundingStrategy::kX: keys.push_back(x); break;
        case RoundingStrategy::kF: keys.push_back(f); break;
        case RoundingStrategy::kFOverX: keys.push_back(f / x); break;
      }
    }
    const double best = *std::max_element(keys.begin(), keys.end());
    const double threshold = best - 1e-9 * std::max(1.0, std::abs(best));
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i] >= threshold) fixed.push_back(split.fractional[i]);
    }
    for (int e : fixed) solver.set_bounds(layout.x(e), 1.0, 1.0);
    ++result.iterations;
  }

  ExtractResult extracted = extract_walk(instance, d, split.ones);
  if (!extracted.walk) {
    result.status = RoundingStatus::kExtractionFailed;
    result.diagnostic = extracted.diagnostic;
    return result;
  }
  const double cost = walk_cost(*extracted.walk, instance.graph);
  result.solution = Solution{std::move(*extracted.walk), cost};
  return result;
}

}  // namespace acsp
