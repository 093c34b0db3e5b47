#pragma once

// Linear and mixed-integer models for the directed formulation, solved with
// the in-repo simplex (continuous) and branch-and-bound (integer).

#include <iosfwd>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "acsp/simplex.hpp"
#include "acsp/transform.hpp"

namespace acsp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LpTerm {
  int var = 0;
  double coef = 0.0;
};

struct LpVariable {
  std::string name;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  bool is_integer = false;
  int branch_priority = 0;  // lower values are branched on first
};

struct LpConstraint {
  std::string name;
  std::vector<LpTerm> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

// Minimization model with sparse rows.
struct LpModel {
  std::vector<LpVariable> variables;
  std::vector<LpTerm> objective;
  std::vector<LpConstraint> constraints;

  int add_variable(LpVariable v);
  int add_constraint(LpConstraint c);
  int num_variables() const { return static_cast<int>(variables.size()); }
  int num_constraints() const { return static_cast<int>(constraints.size()); }
  bool has_integers() const;
};

// Throws std::invalid_argument on bad bounds or undeclared variables.
void check_model(const LpModel& model);

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kNodeLimit, kNodeLimitNoIncumbent };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> values;
  std::vector<double> row_duals;      // continuous solves only
  std::vector<double> reduced_costs;  // continuous solves only
  long iterations = 0;
  long nodes = 0;

  bool has_values() const { return !values.empty(); }
};

inline constexpr double kFeasibilityTol = 1e-7;
inline constexpr double kOptimalityTol = 1e-9;

// Column layout of build_ilp: x per arc, y per node 1..n+1, f per arc.
struct IlpLayout {
  int num_arcs = 0;
  int num_y = 0;

  int x(int arc) const { return arc; }
  int y(int node) const { return num_arcs + node - 1; }
  int f(int arc) const { return num_arcs + num_y + arc; }
  int num_variables() const { return 2 * num_arcs + num_y; }
};

IlpLayout ilp_layout(const DirectedInstance& d);

// Row blocks of build_ilp, in order: source arc, color cover (colors 0..k),
// degree balance (1..n), y >= x (per arc), in-arcs >= y (1..n+1), flow
// balance (1..n), then x <= f and f <= (n+1) x per arc.
LpModel build_ilp(const DirectedInstance& d);

// Same model with integrality dropped; bounds stay 0<=x<=1, 0<=y<=1, 0<=f<=n+1.
LpModel relax(LpModel model);

// Warm-startable continuous solver over a fixed model. Bounds may be changed
// between solves; each solve restarts from the previous basis.
class LpSolver {
 public:
  explicit LpSolver(const LpModel& model);

  // var in [0, num_variables) addresses a variable; num_variables + i
  // addresses the activity of row i.
  void set_bounds(int var, double lower, double upper);
  // Replaces the objective; variables not listed get cost 0.
  void set_objective(std::span<const LpTerm> objective);
  double lower(int var) const { return simplex_->lower(var); }
  double upper(int var) const { return simplex_->upper(var); }

  LpSolution solve();

  SimplexBasis basis() const { return simplex_->basis(); }
  void set_basis(const SimplexBasis& basis) { simplex_->set_basis(basis); }

 private:
  int num_vars_;
  int num_rows_;
  std::unique_ptr<BoundedSimplex<double>> simplex_;
};

// Continuous solve; throws std::invalid_argument if integer flags are set.
LpSolution simplex_solve(const LpModel& model);

struct BranchAndBoundOptions {
  long node_limit = 100000;
  double integrality_tol = 1e-6;
  int restart_interval = 1000;
};

LpSolution branch_and_bound(const LpModel& model, long node_limit);
LpSolution branch_and_bound(const LpModel& model, const BranchAndBoundOptions& options);

struct ArcSplit {
  std::vector<int> ones;        // arc indices with x >= 1 - tol
  std::vector<int> fractional;  // tol < x < 1 - tol
};

ArcSplit extract_arcs(const LpSolution& solution, const DirectedInstance& d, double tol);

// Fixed-field MPS export with integer markers.
void write_mps(std::ostream& out, const LpModel& model, const std::string& name);

}  // namespace acsp
