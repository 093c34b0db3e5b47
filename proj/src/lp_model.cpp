#include "acsp/lp.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace acsp {

int LpModel::add_variable(LpVariable v) {
  variables.push_back(std::move(v));
  return static_cast<int>(variables.size()) - 1;
}

int LpModel::add_constraint(LpConstraint c) {
  constraints.push_back(std::move(c));
  return static_cast<int>(constraints.size()) - 1;
}

bool LpModel::has_integers() const {
  for (const auto& v : variables) {
    if (v.is_integer) return true;
  }
  return false;
}

void check_model(const LpModel& model) {
  const int n = model.num_variables();
  for (const auto& v : model.variables) {
    if (!(v.lower <= v.upper)) throw std::invalid_argument("variable " + v.name + " has lower > upper");
  }
  auto check_terms = [n](const std::vector<LpTerm>& terms, const std::string& where) {
    for (const auto& t : terms) {
      if (t.var < 0 || t.var >= n) throw std::invalid_argument(where + " references an undeclared variable");
    }
  };
  check_terms(model.objective, "objective");
  for (const auto& c : model.constraints) check_terms(c.terms, "constraint " + c.name);
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration-limit";
    case LpStatus::kNodeLimit: return "node-limit";
    case LpStatus::kNodeLimitNoIncumbent: return "node-limit-no-incumbent";
  }
  return "unknown";
}

IlpLayout ilp_layout(const DirectedInstance& d) {
  return IlpLayout{static_cast<int>(d.arcs.size()), d.n + 1};
}

LpModel build_ilp(const DirectedInstance& d) {
  const IlpLayout layout = ilp_layout(d);
  const int arcs = layout.num_arcs;
  const double big = d.n + 1;
  LpModel model;
  model.variables.reserve(static_cast<std::size_t>(layout.num_variables()));
  for (const Arc& a : d.arcs) {
    model.add_variable({"x_" + std::to_string(a.tail) + "_" + std::to_string(a.head), 0.0, 1.0, true, 0});
  }
  for (int node = 1; node <= d.n + 1; ++node) {
    model.add_variable({"y_" + std::to_string(node), 0.0, 1.0, true, 1});
  }
  for (const Arc& a : d.arcs) {
    model.add_variable({"f_" + std::to_string(a.tail) + "_" + std::to_string(a.head), 0.0, big, true, 1});
  }
  for (int e = 0; e < arcs; ++e) {
    if (d.arcs[static_cast<std::size_t>(e)].w != 0.0) {
      model.objective.push_back({layout.x(e), d.arcs[static_cast<std::size_t>(e)].w});
    }
  }

  std::vector<std::vector<int>> in_arcs(static_cast<std::size_t>(d.num_nodes()));
  std::vector<std::vector<int>> out_arcs(static_cast<std::size_t>(d.num_nodes()));
  for (int e = 0; e < arcs; ++e) {
    in_arcs[static_cast<std::size_t>(d.arcs[static_cast<std::size_t>(e)].head)].push_back(e);
    out_arcs[static_cast<std::size_t>(d.arcs[static_cast<std::size_t>(e)].tail)].push_back(e);
  }

  // Source arc into the base.
  model.add_constraint({"source", {{layout.x(0), 1.0}}, Relation::kEqual, 1.0});

  // Every color, including the sink's color 0, is entered at least once.
  for (int c = 0; c <= d.num_colors; ++c) {
    LpConstraint row{"color_" + std::to_string(c), {}, Relation::kGreaterEqual, 1.0};
    for (int e = 0; e < arcs; ++e) {
      if (d.color_of[static_cast<std::size_t>(d.arcs[static_cast<std::size_t>(e)].head)] == c) {
        row.terms.push_back({layout.x(e), 1.0});
      }
    }
    model.add_constraint(std::move(row));
  }

  for (int i = 1; i <= d.n; ++i) {
    LpConstraint row{"balance_" + std::to_string(i), {}, Relation::kEqual, 0.0};
    for (int e : in_arcs[static_cast<std::size_t>(i)]) row.terms.push_back({layout.x(e), 1.0});
    for (int e : out_arcs[static_cast<std::size_t>(i)]) row.terms.push_back({layout.x(e), -1.0});
    model.add_constraint(std::move(row));
  }

  for (int e = 0; e < arcs; ++e) {
    const Arc& a = d.arcs[static_cast<std::size_t>(e)];
    model.add_constraint({"visit_" + std::to_string(e), {{layout.y(a.head), 1.0}, {layout.x(e), -1.0}},
                          Relation::kGreaterEqual, 0.0});
  }

  for (int j = 1; j <= d.n + 1; ++j) {
    LpConstraint row{"enter_" + std::to_string(j), {}, Relation::kGreaterEqual, 0.0};
    for (int e : in_arcs[static_cast<std::size_t>(j)]) row.terms.push_back({layout.x(e), 1.0});
    row.terms.push_back({layout.y(j), -1.0});
    model.add_constraint(std::move(row));
  }

  for (int i = 1; i <= d.n; ++i) {
    LpConstraint row{"flow_" + std::to_string(i), {}, Relation::kEqual, 0.0};
    for (int e : in_arcs[static_cast<std::size_t>(i)]) row.terms.push_back({layout.f(e), 1.0});
    for (int e : out_arcs[static_cast<std::size_t>(i)]) row.terms.push_back({layout.f(e), -1.0});
    row.terms.push_back({layout.y(i), -1.0});
    model.add_constraint(std::move(row));
  }

  for (int e = 0; e < arcs; ++e) {
    model.add_constraint({"flow_lo_" + std::to_string(e), {{layout.f(e), 1.0}, {layout.x(e), -1.0}},
                          Relation::kGreaterEqual, 0.0});
    model.add_constraint({"flow_hi_" + std::to_string(e), {{layout.f(e), 1.0}, {layout.x(e), -big}},
                          Relation::kLessEqual, 0.0});
  }
  return model;
}

LpModel relax(LpModel model) {
  for (auto& v : model.variables) v.is_integer = false;
  return model;
}

LpSolver::LpSolver(const LpModel& model)
    : num_vars_(model.num_variables()), num_rows_(model.num_constraints()) {
  check_model(model);
  using Simplex = BoundedSimplex<double>;
  std::vector<Simplex::Column> columns(static_cast<std::size_t>(num_vars_));
  for (int r = 0; r < num_rows_; ++r) {
    for (const auto& t : model.constraints[static_cast<std::size_t>(r)].terms) {
      if (t.coef != 0.0) columns[static_cast<std::size_t>(t.var)].push_back({r, t.coef});
    }
  }
  std::vector<double> cost(static_cast<std::size_t>(num_vars_), 0.0);
  for (const auto& t : model.objective) cost[static_cast<std::size_t>(t.var)] += t.coef;
  std::vector<double> lower, upper;
  for (const auto& v : model.variables) {
    lower.push_back(v.lower);
    upper.push_back(v.upper);
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> row_lower, row_upper;
  for (const auto& c : model.constraints) {
    row_lower.push_back(c.relation == Relation::kLessEqual ? -inf : c.rhs);
    row_upper.push_back(c.relation == Relation::kGreaterEqual ? inf : c.rhs);
  }
  Simplex::Tolerances tol;
  tol.feasibility = kFeasibilityTol;
  tol.optimality = kOptimalityTol;
  simplex_ = std::make_unique<Simplex>(num_rows_, std::move(columns), std::move(cost), std::move(lower),
                                       std::move(upper), row_lower, row_upper, tol);
}

void LpSolver::set_bounds(int var, double lower, double upper) {
  if (!(lower <= upper)) throw std::invalid_argument("set_bounds: lower > upper");
  simplex_->set_bounds(var, lower, upper);
}

void LpSolver::set_objective(std::span<const LpTerm> objective) {
  for (int j = 0; j < num_vars_; ++j) simplex_->set_cost(j, 0.0);
  for (const auto& t : objective) {
    if (t.var < 0 || t.var >= num_vars_) throw std::invalid_argument("set_objective: unknown variable");
    simplex_->set_cost(t.var, simplex_->cost(t.var) + t.coef);
  }
}

LpSolution LpSolver::solve() {
  LpSolution solution;
  const SimplexStatus status = simplex_->solve();
  solution.iterations = simplex_->iterations();
  switch (status) {
    case SimplexStatus::kOptimal: solution.status = LpStatus::kOptimal; break;
    case SimplexStatus::kInfeasible: solution.status = LpStatus::kInfeasible; return solution;
    case SimplexStatus::kUnbounded: solution.status = LpStatus::kUnbounded; return solution;
    case SimplexStatus::kIterationLimit: solution.status = LpStatus::kIterationLimit; return solution;
  }
  solution.values.resize(static_cast<std::size_t>(num_vars_));
  solution.reduced_costs.resize(static_cast<std::size_t>(num_vars_));
  for (int j = 0; j < num_vars_; ++j) {
    solution.values[static_cast<std::size_t>(j)] = simplex_->value(j);
    solution.reduced_costs[static_cast<std::size_t>(j)] = simplex_->reduced_cost(j);
  }
  const auto& pi = simplex_->duals();
  solution.row_duals.assign(pi.data(), pi.data() + pi.size());
  solution.objective = simplex_->objective();
  return solution;
}

LpSolution simplex_solve(const LpModel& model) {
  if (model.has_integers()) {
    throw std::invalid_argument("simplex_solve: model has integer variables; relax it first");
  }
  LpSolver solver(model);
  return solver.solve();
}

ArcSplit extract_arcs(const LpSolution& solution, const DirectedInstance& d, double tol) {
  if (solution.values.empty()) throw std::invalid_argument("extract_arcs: solution carries no values");
  const IlpLayout layout = ilp_layout(d);
  ArcSplit split;
  for (int e = 0; e < layout.num_arcs; ++e) {
    const double x = solution.values[static_cast<std::size_t>(layout.x(e))];
    if (x >= 1.0 - tol) {
      split.ones.push_back(e);
    } else if (x > tol) {
      split.fractional.push_back(e);
    }
  }
  return split;
}

namespace {

std::string mps_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string field(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string col_name(int j) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "C%07d", j + 1);
  return buf;
}

std::string row_name(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "R%07d", i + 1);
  return buf;
}

// Fields start at columns 2, 5, 15, 25, 40, 50.
void entry(std::ostream& out, const std::string& kind, const std::string& name1, const std::string& name2,
           const std::string& value) {
  out << ' ' << field(kind, 2) << ' ' << field(name1, 8) << "  " << field(name2, 8) << "  " << value << '\n';
}

void marker_line(std::ostream& out, int index, const char* tag) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "M%07d", index);
  out << "    " << field(buf, 8) << "  'MARKER'" << std::string(17, ' ') << tag << '\n';
}

}  // namespace

void write_mps(std::ostream& out, const LpModel& model, const std::string& name) {
  check_model(model);
  out << "NAME          " << name << '\n';
  for (int j = 0; j < model.num_variables(); ++j) {
    out << "* " << col_name(j) << " = " << model.variables[static_cast<std::size_t>(j)].name << '\n';
  }
  out << "ROWS\n";
  out << " N  COST\n";
  for (int i = 0; i < model.num_constraints(); ++i) {
    const auto rel = model.constraints[static_cast<std::size_t>(i)].relation;
    const char* kind = rel == Relation::kLessEqual ? "L" : rel == Relation::kEqual ? "E" : "G";
    out << ' ' << field(kind, 2) << ' ' << row_name(i) << '\n';
  }
  std::vector<std::vector<std::pair<int, double>>> by_column(static_cast<std::size_t>(model.num_variables()));
  for (const auto& t : model.objective) by_column[static_cast<std::size_t>(t.var)].push_back({-1, t.coef});
  for (int i = 0; i < model.num_constraints(); ++i) {
    for (const auto& t : model.constraints[static_cast<std::size_t>(i)].terms) {
      by_column[static_cast<std::size_t>(t.var)].push_back({i, t.coef});
    }
  }
  out << "COLUMNS\n";
  bool in_integer_block = false;
  int marker = 0;
  for (int j = 0; j < model.num_variables(); ++j) {
    const bool integer = model.variables[static_cast<std::size_t>(j)].is_integer;
    if (integer != in_integer_block) {
      marker_line(out, ++marker, integer ? "'INTORG'" : "'INTEND'");
      in_integer_block = integer;
    }
    if (by_column[static_cast<std::size_t>(j)].empty()) {
      entry(out, "", col_name(j), "COST", "0");
      continue;
    }
    for (const auto& [row, coef] : by_column[static_cast<std::size_t>(j)]) {
      entry(out, "", col_name(j), row < 0 ? "COST" : row_name(row), mps_number(coef));
    }
  }
  if (in_integer_block) marker_line(out, ++marker, "'INTEND'");
  out << "RHS\n";
  for (int i = 0; i < model.num_constraints(); ++i) {
    const double rhs = model.constraints[static_cast<std::size_t>(i)].rhs;
    if (rhs != 0.0) entry(out, "", "RHS", row_name(i), mps_number(rhs));
  }
  out << "BOUNDS\n";
  for (int j = 0; j < model.num_variables(); ++j) {
    const auto& v = model.variables[static_cast<std::size_t>(j)];
    const bool lo_inf = std::isinf(v.lower);
    const bool up_inf = std::isinf(v.upper);
    if (v.lower == v.upper) {
      entry(out, "FX", "BND", col_name(j), mps_number(v.lower));
      continue;
    }
    if (lo_inf && up_inf) {
      entry(out, "FR", "BND", col_name(j), "");
      continue;
    }
    if (lo_inf) entry(out, "MI", "BND", col_name(j), "");
    else if (v.lower != 0.0) entry(out, "LO", "BND", col_name(j), mps_number(v.lower));
    if (!up_inf) entry(out, "UP", "BND", col_name(j), mps_number(v.upper));
  }
  out << "ENDATA\n";
}

}  // namespace acsp
