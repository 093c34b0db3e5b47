#pragma once

// Bounded-variable revised primal simplex. The basis is held as a sparse LU
// factorization followed by a file of product-form eta updates.
//
// The problem is held as
//     minimize c'x   subject to   A x - s = 0,   l <= (x, s) <= u
// with one logical variable s_i per row carrying the row's bounds. Phase 1 is
// composite: while some basic variable violates a bound, the pricing objective
// is the sum of infeasibilities. This lets a solve restart from any basis
// after bounds change, which the rounding loop and branch-and-bound rely on.

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace acsp {

enum class SimplexStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

enum class VarStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

struct SimplexBasis {
  std::vector<int> head;
  std::vector<VarStatus> status;
};

template <typename Scalar>
struct SparseEntry {
  int row;
  Scalar value;
};

template <typename Scalar = double>
class BoundedSimplex {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Sparse = Eigen::SparseMatrix<Scalar, Eigen::ColMajor>;
  using Column = std::vector<SparseEntry<Scalar>>;

  struct Tolerances {
    Scalar feasibility = Scalar(1e-7);
    Scalar optimality = Scalar(1e-9);
    Scalar pivot = Scalar(1e-7);
  };

  static constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

  // columns: structural columns of A (m rows); row_lower/row_upper: bounds on
  // each row activity; lower/upper/cost per structural.
  BoundedSimplex(int num_rows, std::vector<Column> columns, std::vector<Scalar> cost,
                 std::vector<Scalar> lower, std::vector<Scalar> upper, const std::vector<Scalar>& row_lower,
                 const std::vector<Scalar>& row_upper, Tolerances tol = {})
      : m_(num_rows),
        n_(static_cast<int>(columns.size())),
        columns_(std::move(columns)),
        tol_(tol) {
    cost_ = std::move(cost);
    cost_.resize(static_cast<std::size_t>(n_ + m_), Scalar(0));
    lower_ = std::move(lower);
    upper_ = std::move(upper);
    lower_.insert(lower_.end(), row_lower.begin(), row_lower.end());
    upper_.insert(upper_.end(), row_upper.begin(), row_upper.end());
    x_.assign(static_cast<std::size_t>(n_ + m_), Scalar(0));
    reset_to_slack_basis();
  }

  int num_rows() const { return m_; }
  int num_structurals() const { return n_; }

  void set_bounds(int var, Scalar lower, Scalar upper) {
    lower_[static_cast<std::size_t>(var)] = lower;
    upper_[static_cast<std::size_t>(var)] = upper;
  }
  Scalar lower(int var) const { return lower_[static_cast<std::size_t>(var)]; }
  // Structural costs only; the current basis stays usable as a warm start.
  void set_cost(int var, Scalar cost) { cost_[static_cast<std::size_t>(var)] = cost; }
  Scalar cost(int var) const { return cost_[static_cast<std::size_t>(var)]; }
  Scalar upper(int var) const { return upper_[static_cast<std::size_t>(var)]; }

  void reset_to_slack_basis() {
    head_.resize(static_cast<std::size_t>(m_));
    status_.assign(static_cast<std::size_t>(n_ + m_), VarStatus::kAtLower);
    for (int j = 0; j < n_; ++j) status_[static_cast<std::size_t>(j)] = resting_status(j);
    for (int i = 0; i < m_; ++i) {
      head_[static_cast<std::size_t>(i)] = n_ + i;
      status_[static_cast<std::size_t>(n_ + i)] = VarStatus::kBasic;
    }
    factor_valid_ = false;
  }

  SimplexBasis basis() const { return {head_, status_}; }

  void set_basis(const SimplexBasis& basis) {
    head_ = basis.head;
    status_ = basis.status;
    factor_valid_ = false;
  }

  SimplexStatus solve(long iteration_limit = -1) {
    if (iteration_limit < 0) iteration_limit = 50L * (m_ + n_) + 1000;
    iterations_ = 0;
    if (!factor_valid_ && !refactor()) {
      reset_to_slack_basis();
      refactor();
    }
    compute_primal();
    int degenerate_run = 0;
    bool bland = false;
    bool perturbed = false;
    bool perturbation_used = false;
    int since_refactor = 0;
    auto restore = [&] {
      if (!perturbed) return;
      lower_ = saved_lower_;
      upper_ = saved_upper_;
      perturbed = false;
      compute_primal();
    };
    for (;;) {
      if (iterations_ >= iteration_limit) {
        restore();
        return SimplexStatus::kIterationLimit;
      }
      if (since_refactor >= kRefactorInterval) {
        refresh();
        since_refactor = 0;
      }
      const bool phase1 = price_costs();
      const int entering = choose_entering(bland);
      if (entering < 0) {
        // Confirm on a fresh factorization before declaring the outcome.
        if (since_refactor > 0) {
          refresh();
          since_refactor = 0;
          continue;
        }
        if (perturbed) {
          // Drop the perturbation and let the loop clean up what it broke.
          restore();
          degenerate_run = 0;
          continue;
        }
        if (phase1) return SimplexStatus::kInfeasible;
        finalize_duals();
        return SimplexStatus::kOptimal;
      }
      const Scalar dir = reduced_[static_cast<std::size_t>(entering)] < 0 ? Scalar(1) : Scalar(-1);
      transformed_column(entering);
      const Step step = ratio_test(entering, dir, phase1, bland);
      if (step.unbounded) {
        if (phase1) {
          // Numerically impossible in exact arithmetic; refresh and retry.
          refresh();
          since_refactor = 0;
          bland = true;
          ++iterations_;
          continue;
        }
        restore();
        return SimplexStatus::kUnbounded;
      }
      apply_step(entering, dir, step);
      ++iterations_;
      ++since_refactor;
      if (step.theta <= Scalar(1e-12)) {
        if (++degenerate_run > kDegenerateSwitch) {
          if (!perturbation_used) {
            perturb();
            perturbed = perturbation_used = true;
            degenerate_run = 0;
          } else {
            bland = true;
          }
        }
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }
  }

  long iterations() const { return iterations_; }

  Scalar value(int var) const { return x_[static_cast<std::size_t>(var)]; }
  Scalar objective() const {
    Scalar total = 0;
    for (int j = 0; j < n_; ++j) total += cost_[static_cast<std::size_t>(j)] * x_[static_cast<std::size_t>(j)];
    return total;
  }
  // Row multipliers and reduced costs from the last optimal solve.
  const Vector& duals() const { return pi_; }
  Scalar reduced_cost(int var) const { return reduced_[static_cast<std::size_t>(var)]; }

 private:
  static constexpr int kRefactorInterval = 100;
  static constexpr int kDegenerateSwitch = 50;
  static constexpr Scalar kPerturbation = Scalar(1e-6);

  // Widens every finite bound by a small pseudo-random amount so that ties in
  // the ratio test stop being exact. The amounts depend only on the index.
  void perturb() {
    saved_lower_ = lower_;
    saved_upper_ = upper_;
    for (int j = 0; j < n_ + m_; ++j) {
      std::uint64_t h = static_cast<std::uint64_t>(j) * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL;
      h ^= h >> 31;
      h *= 0xbf58476d1ce4e5b9ULL;
      h ^= h >> 29;
      const Scalar u = Scalar(0.5) + Scalar(0.5) * static_cast<Scalar>(h >> 11) * Scalar(0x1.0p-53);
      auto& l = lower_[static_cast<std::size_t>(j)];
      auto& up = upper_[static_cast<std::size_t>(j)];
      if (l == up) continue;
      if (l > -kInf) l -= kPerturbation * u * (Scalar(1) + std::abs(l));
      if (up < kInf) up += kPerturbation * u * (Scalar(1) + std::abs(up));
    }
    compute_primal();
  }

  struct Step {
    bool unbounded = false;
    bool flip = false;
    int position = -1;
    bool leaves_at_upper = false;
    Scalar theta = 0;
  };

  void refresh() {
    if (!refactor()) {
      reset_to_slack_basis();
      refactor();
    }
    compute_primal();
  }

  VarStatus resting_status(int j) const {
    const Scalar l = lower_[static_cast<std::size_t>(j)];
    const Scalar u = upper_[static_cast<std::size_t>(j)];
    if (l > -kInf) return VarStatus::kAtLower;
    if (u < kInf) return VarStatus::kAtUpper;
    return VarStatus::kFree;
  }

  // Keeps nonbasic statuses consistent with the current bounds.
  Scalar nonbasic_value(int j) {
    auto& st = status_[static_cast<std::size_t>(j)];
    const Scalar l = lower_[static_cast<std::size_t>(j)];
    const Scalar u = upper_[static_cast<std::size_t>(j)];
    if (st == VarStatus::kAtLower && !(l > -kInf)) st = resting_status(j);
    if (st == VarStatus::kAtUpper && !(u < kInf)) st = resting_status(j);
    if (st == VarStatus::kFree && (l > -kInf || u < kInf)) st = resting_status(j);
    switch (st) {
      case VarStatus::kAtLower: return l;
      case VarStatus::kAtUpper: return u;
      default: return Scalar(0);
    }
  }

  // y <- B^-1 y
  void ftran(Vector& y) const {
    y = lu_.solve(y).eval();
    for (const Eta& eta : etas_) {
      Scalar& yr = y(eta.position);
      if (yr == Scalar(0)) continue;
      yr /= eta.pivot;
      for (const auto& [p, a] : eta.entries) y(p) -= a * yr;
    }
  }

  // y <- B^-T y
  void btran(Vector& y) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      Scalar z = y(it->position);
      for (const auto& [p, a] : it->entries) z -= a * y(p);
      y(it->position) = z / it->pivot;
    }
    y = lu_.transpose().solve(y).eval();
  }

  // alpha = B^-1 a_j
  void transformed_column(int j) {
    alpha_.setZero(m_);
    if (j < n_) {
      for (const auto& e : columns_[static_cast<std::size_t>(j)]) alpha_(e.row) += e.value;
    } else {
      alpha_(j - n_) = Scalar(-1);
    }
    ftran(alpha_);
  }

  bool refactor() {
    std::vector<Eigen::Triplet<Scalar>> triplets;
    for (int p = 0; p < m_; ++p) {
      const int j = head_[static_cast<std::size_t>(p)];
      if (j < n_) {
        for (const auto& e : columns_[static_cast<std::size_t>(j)]) triplets.emplace_back(e.row, p, e.value);
      } else {
        triplets.emplace_back(j - n_, p, Scalar(-1));
      }
    }
    Sparse basis(m_, m_);
    basis.setFromTriplets(triplets.begin(), triplets.end());
    basis.makeCompressed();
    lu_.analyzePattern(basis);
    lu_.factorize(basis);
    etas_.clear();
    if (lu_.info() != Eigen::Success) {
      factor_valid_ = false;
      return false;
    }
    // Reject numerically singular bases that slipped past the pivot check.
    Vector probe = Vector::Ones(m_);
    Vector image = basis * probe;
    ftran(image);
    if (!((image - probe).cwiseAbs().maxCoeff() < Scalar(1e-6))) {
      factor_valid_ = false;
      return false;
    }
    pos_.assign(static_cast<std::size_t>(n_ + m_), -1);
    for (int p = 0; p < m_; ++p) {
      const int j = head_[static_cast<std::size_t>(p)];
      pos_[static_cast<std::size_t>(j)] = p;
      status_[static_cast<std::size_t>(j)] = VarStatus::kBasic;
    }
    for (int j = 0; j < n_ + m_; ++j) {
      if (pos_[static_cast<std::size_t>(j)] < 0 && status_[static_cast<std::size_t>(j)] == VarStatus::kBasic) {
        status_[static_cast<std::size_t>(j)] = resting_status(j);
      }
    }
    factor_valid_ = true;
    return true;
  }

  void compute_primal() {
    Vector rhs = Vector::Zero(m_);
    for (int j = 0; j < n_ + m_; ++j) {
      if (status_[static_cast<std::size_t>(j)] == VarStatus::kBasic) continue;
      const Scalar v = nonbasic_value(j);
      x_[static_cast<std::size_t>(j)] = v;
      if (v == Scalar(0)) continue;
      if (j < n_) {
        for (const auto& e : columns_[static_cast<std::size_t>(j)]) rhs(e.row) -= e.value * v;
      } else {
        rhs(j - n_) += v;
      }
    }
    ftran(rhs);
    for (int p = 0; p < m_; ++p) x_[static_cast<std::size_t>(head_[static_cast<std::size_t>(p)])] = rhs(p);
  }

  // Fills reduced_ for the current phase; returns true while in phase 1.
  bool price_costs() {
    Vector cb(m_);
    bool phase1 = false;
    for (int p = 0; p < m_; ++p) {
      const int j = head_[static_cast<std::size_t>(p)];
      const Scalar v = x_[static_cast<std::size_t>(j)];
      if (v < lower_[static_cast<std::size_t>(j)] - tol_.feasibility) {
        cb(p) = Scalar(-1);
        phase1 = true;
      } else if (v > upper_[static_cast<std::size_t>(j)] + tol_.feasibility) {
        cb(p) = Scalar(1);
        phase1 = true;
      } else {
        cb(p) = Scalar(0);
      }
    }
    if (!phase1) {
      for (int p = 0; p < m_; ++p) cb(p) = cost_[static_cast<std::size_t>(head_[static_cast<std::size_t>(p)])];
    }
    pi_ = cb;
    btran(pi_);
    reduced_.assign(static_cast<std::size_t>(n_ + m_), Scalar(0));
    for (int j = 0; j < n_; ++j) {
      if (status_[static_cast<std::size_t>(j)] == VarStatus::kBasic) continue;
      Scalar d = phase1 ? Scalar(0) : cost_[static_cast<std::size_t>(j)];
      for (const auto& e : columns_[static_cast<std::size_t>(j)]) d -= pi_(e.row) * e.value;
      reduced_[static_cast<std::size_t>(j)] = d;
    }
    for (int i = 0; i < m_; ++i) {
      if (status_[static_cast<std::size_t>(n_ + i)] != VarStatus::kBasic) reduced_[static_cast<std::size_t>(n_ + i)] = pi_(i);
    }
    return phase1;
  }

  bool improving(int j) const {
    const auto st = status_[static_cast<std::size_t>(j)];
    if (st == VarStatus::kBasic) return false;
    if (lower_[static_cast<std::size_t>(j)] == upper_[static_cast<std::size_t>(j)]) return false;
    const Scalar d = reduced_[static_cast<std::size_t>(j)];
    switch (st) {
      case VarStatus::kAtLower: return d < -tol_.optimality;
      case VarStatus::kAtUpper: return d > tol_.optimality;
      case VarStatus::kFree: return std::abs(d) > tol_.optimality;
      default: return false;
    }
  }

  int choose_entering(bool bland) const {
    int best = -1;
    Scalar best_score = 0;
    for (int j = 0; j < n_ + m_; ++j) {
      if (!improving(j)) continue;
      if (bland) return j;
      const Scalar score = std::abs(reduced_[static_cast<std::size_t>(j)]);
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  // Step length at which basic position p hits a breakpoint, with the bound
  // it stops at. Infinite when p does not block.
  std::pair<Scalar, bool> limit(int p, Scalar rate, bool phase1, Scalar slack) const {
    const int b = head_[static_cast<std::size_t>(p)];
    const Scalar v = x_[static_cast<std::size_t>(b)];
    const Scalar l = lower_[static_cast<std::size_t>(b)];
    const Scalar u = upper_[static_cast<std::size_t>(b)];
    const bool below = phase1 && v < l - tol_.feasibility;
    const bool above = phase1 && v > u + tol_.feasibility;
    if (rate > 0) {
      if (below) return {(l - v) / rate, false};
      if (above || !(u < kInf)) return {kInf, true};
      return {std::max(Scalar(0), (u + slack - v) / rate), true};
    }
    if (above) return {(v - u) / -rate, true};
    if (below || !(l > -kInf)) return {kInf, false};
    return {std::max(Scalar(0), (v - l + slack) / -rate), false};
  }

  Step ratio_test(int entering, Scalar dir, bool phase1, bool bland) const {
    Step step;
    Scalar flip = upper_[static_cast<std::size_t>(entering)] - lower_[static_cast<std::size_t>(entering)];
    if (!(flip < kInf)) flip = kInf;
    if (bland) {
      Scalar best = kInf;
      for (int p = 0; p < m_; ++p) {
        const Scalar a = alpha_(p);
        if (std::abs(a) <= tol_.pivot) continue;
        const auto [t, at_upper] = limit(p, -dir * a, phase1, Scalar(0));
        if (!(t < kInf)) continue;
        bool take = t < best - Scalar(1e-12);
        if (!take && t <= best + Scalar(1e-12) && step.position >= 0) {
          take = head_[static_cast<std::size_t>(p)] < head_[static_cast<std::size_t>(step.position)];
        }
        if (take) {
          best = std::min(best, t);
          step.position = p;
          step.leaves_at_upper = at_upper;
        }
      }
      step.theta = best;
    } else {
      // Harris: bound the step with relaxed bounds, then take the largest pivot.
      Scalar relaxed = kInf;
      for (int p = 0; p < m_; ++p) {
        const Scalar a = alpha_(p);
        if (std::abs(a) <= tol_.pivot) continue;
        relaxed = std::min(relaxed, limit(p, -dir * a, phase1, tol_.feasibility).first);
      }
      Scalar best_pivot = 0;
      for (int p = 0; p < m_; ++p) {
        const Scalar a = alpha_(p);
        if (std::abs(a) <= tol_.pivot) continue;
        const auto [t, at_upper] = limit(p, -dir * a, phase1, Scalar(0));
        if (t <= relaxed && std::abs(a) > best_pivot) {
          best_pivot = std::abs(a);
          step.position = p;
          step.leaves_at_upper = at_upper;
          step.theta = t;
        }
      }
      if (step.position < 0) step.theta = kInf;
    }
    if (flip <= step.theta) {
      step.flip = flip < kInf;
      step.position = -1;
      step.theta = flip;
    }
    step.unbounded = !step.flip && step.position < 0;
    return step;
  }

  void apply_step(int entering, Scalar dir, const Step& step) {
    const Scalar delta = dir * step.theta;
    if (delta != Scalar(0)) {
      x_[static_cast<std::size_t>(entering)] += delta;
      for (int p = 0; p < m_; ++p) x_[static_cast<std::size_t>(head_[static_cast<std::size_t>(p)])] -= delta * alpha_(p);
    }
    if (step.flip) {
      auto& st = status_[static_cast<std::size_t>(entering)];
      st = dir > 0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
      x_[static_cast<std::size_t>(entering)] =
          dir > 0 ? upper_[static_cast<std::size_t>(entering)] : lower_[static_cast<std::size_t>(entering)];
      return;
    }
    const int r = step.position;
    const int leaving = head_[static_cast<std::size_t>(r)];
    status_[static_cast<std::size_t>(leaving)] = step.leaves_at_upper ? VarStatus::kAtUpper : VarStatus::kAtLower;
    x_[static_cast<std::size_t>(leaving)] =
        step.leaves_at_upper ? upper_[static_cast<std::size_t>(leaving)] : lower_[static_cast<std::size_t>(leaving)];
    pos_[static_cast<std::size_t>(leaving)] = -1;
    head_[static_cast<std::size_t>(r)] = entering;
    pos_[static_cast<std::size_t>(entering)] = r;
    status_[static_cast<std::size_t>(entering)] = VarStatus::kBasic;

    Eta eta;
    eta.position = r;
    eta.pivot = alpha_(r);
    for (int p = 0; p < m_; ++p) {
      if (p != r && alpha_(p) != Scalar(0)) eta.entries.emplace_back(p, alpha_(p));
    }
    etas_.push_back(std::move(eta));
  }

  void finalize_duals() {
    // reduced_ and pi_ already hold phase 2 values; basic reduced costs are 0.
    for (int p = 0; p < m_; ++p) reduced_[static_cast<std::size_t>(head_[static_cast<std::size_t>(p)])] = Scalar(0);
  }

  int m_;
  int n_;
  std::vector<Column> columns_;
  Tolerances tol_;
  std::vector<Scalar> cost_;
  std::vector<Scalar> lower_;
  std::vector<Scalar> upper_;
  std::vector<Scalar> x_;
  std::vector<Scalar> saved_lower_;
  std::vector<Scalar> saved_upper_;
  std::vector<int> head_;
  std::vector<int> pos_;
  std::vector<VarStatus> status_;
  struct Eta {
    int position = 0;
    Scalar pivot = 1;
    std::vector<std::pair<int, Scalar>> entries;
  };

  mutable Eigen::SparseLU<Sparse, Eigen::COLAMDOrdering<int>> lu_;  // transpose() is non-const
  std::vector<Eta> etas_;
  Vector pi_;
  Vector alpha_;
  std::vector<Scalar> reduced_;
  bool factor_valid_ = false;
  long iterations_ = 0;
};

}  // namespace acsp
