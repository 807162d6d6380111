#include "antipodal/lp.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include <Eigen/Dense>

#include "antipodal/errors.hpp"

namespace antipodal::lp {
namespace {

// Dense tableau: rows 0..m-1 are constraints, row m is the reduced-cost row.
// Column `cols` holds the right-hand side.
class Tableau {
 public:
  Tableau(Eigen::MatrixXd t, std::vector<int> basis, double tol)
      : t_(std::move(t)), basis_(std::move(basis)), tol_(tol) {}

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  double rhs(int i) const { return t_(i, cols()); }
  double& at(int i, int j) { return t_(i, j); }
  double at(int i, int j) const { return t_(i, j); }
  const std::vector<int>& basis() const { return basis_; }

  // Resets the reduced-cost row for objective c (maximize).
  void set_objective(const std::vector<double>& c) {
    const int m = rows();
    t_.row(m).setZero();
    for (int j = 0; j < cols(); ++j) t_(m, j) = c[j];
    for (int i = 0; i < m; ++i) {
      const double cb = c[basis_[i]];
      if (cb != 0.0) t_.row(m) -= cb * t_.row(i);
    }
  }

  double objective_value() const { return -t_(rows(), cols()); }

  enum class Outcome { kOptimal, kUnbounded, kStalled };

  // Runs simplex iterations over columns allowed by `usable`.
  Outcome optimize(const std::vector<bool>& usable) {
    const int m = rows();
    // Bland's rule cannot cycle in exact arithmetic; the cap guards against
    // rounding-induced cycling on degenerate vertices.
    const long cap = 50L * (m + cols()) + 1000;
    for (long iter = 0;; ++iter) {
      if (iter >= cap) return Outcome::kStalled;
      int enter = -1;
      for (int j = 0; j < cols(); ++j) {
        if (usable[j] && t_(m, j) > tol_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Outcome::kOptimal;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double a = t_(i, enter);
        if (a <= tol_) continue;
        const double ratio = t_(i, cols()) / a;
        if (ratio < best - tol_ ||
            (leave >= 0 && std::abs(ratio - best) <= tol_ && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return Outcome::kUnbounded;
      pivot(leave, enter);
    }
  }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = c;
    for (int i = 0; i < rows(); ++i) {
      if (t_(i, cols()) < 0.0 && t_(i, cols()) > -tol_) t_(i, cols()) = 0.0;
    }
  }

  void drop_row(int r) {
    const int n = static_cast<int>(t_.rows());
    for (int i = r; i + 1 < n; ++i) t_.row(i) = t_.row(i + 1);
    t_.conservativeResize(n - 1, Eigen::NoChange);
    basis_.erase(basis_.begin() + r);
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  double tol_;
};

}  // namespace

Result solve(const Problem& problem, double tol) {
  const int n = problem.num_vars;
  const int m = static_cast<int>(problem.constraints.size());
  for (const auto& c : problem.constraints) {
    if (static_cast<int>(c.coeffs.size()) != n)
      throw DimensionMismatch("lp: constraint width does not match variable count");
  }
  auto is_free = [&](int j) {
    return !problem.free_var.empty() && problem.free_var[j];
  };

  // Column layout: structural (free vars split into +/-), slacks, artificials.
  std::vector<int> pos_col(n), neg_col(n, -1);
  int cols = 0;
  for (int j = 0; j < n; ++j) {
    pos_col[j] = cols++;
    if (is_free(j)) neg_col[j] = cols++;
  }
  const int structural = cols;
  int slack_count = 0, art_count = 0;
  for (const auto& c : problem.constraints) {
    if (c.sense != Sense::kEqual) ++slack_count;
    const bool flip = c.rhs < 0;
    const bool needs_art = c.sense == Sense::kEqual ||
                           (c.sense == Sense::kGreaterEqual) != flip;
    if (needs_art) ++art_count;
  }
  const int slack_begin = structural;
  const int art_begin = slack_begin + slack_count;
  cols = art_begin + art_count;

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, cols + 1);
  std::vector<int> basis(m);
  int next_slack = slack_begin, next_art = art_begin;
  for (int i = 0; i < m; ++i) {
    const auto& c = problem.constraints[i];
    const double sign = c.rhs < 0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      t(i, pos_col[j]) = sign * c.coeffs[j];
      if (neg_col[j] >= 0) t(i, neg_col[j]) = -sign * c.coeffs[j];
    }
    t(i, cols) = sign * c.rhs;
    Sense s = c.sense;
    if (sign < 0 && s != Sense::kEqual)
      s = s == Sense::kLessEqual ? Sense::kGreaterEqual : Sense::kLessEqual;
    if (s == Sense::kLessEqual) {
      t(i, next_slack) = 1.0;
      basis[i] = next_slack++;
    } else {
      if (s == Sense::kGreaterEqual) t(i, next_slack++) = -1.0;
      t(i, next_art) = 1.0;
      basis[i] = next_art++;
    }
  }

  Tableau tab(std::move(t), std::move(basis), tol);
  std::vector<bool> usable(cols, true);

  // Phase 1: drive artificials to zero.
  if (art_count > 0) {
    std::vector<double> c1(cols, 0.0);
    for (int j = art_begin; j < cols; ++j) c1[j] = -1.0;
    tab.set_objective(c1);
    if (tab.optimize(usable) == Tableau::Outcome::kStalled) return {Status::kIterationLimit, {}, 0.0};
    if (tab.objective_value() < -tol * std::max(1, m)) return {Status::kInfeasible, {}, 0.0};
    // Pivot remaining artificials out of the basis; drop redundant rows.
    for (int i = 0; i < tab.rows();) {
      if (tab.basis()[i] < art_begin) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < art_begin; ++j) {
        if (std::abs(tab.at(i, j)) > tol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        tab.pivot(i, col);
        ++i;
      } else {
        tab.drop_row(i);
      }
    }
    for (int j = art_begin; j < cols; ++j) usable[j] = false;
  }

  // Phase 2.
  std::vector<double> c2(cols, 0.0);
  for (int j = 0; j < n && j < static_cast<int>(problem.objective.size()); ++j) {
    c2[pos_col[j]] = problem.objective[j];
    if (neg_col[j] >= 0) c2[neg_col[j]] = -problem.objective[j];
  }
  tab.set_objective(c2);
  const auto outcome = tab.optimize(usable);
  if (outcome == Tableau::Outcome::kStalled) return {Status::kIterationLimit, {}, 0.0};

  std::vector<double> col_value(cols, 0.0);
  for (int i = 0; i < tab.rows(); ++i) col_value[tab.basis()[i]] = tab.rhs(i);
  Result result;
  result.status = outcome == Tableau::Outcome::kOptimal ? Status::kOptimal : Status::kUnbounded;
  result.x.resize(n);
  for (int j = 0; j < n; ++j) {
    result.x[j] = col_value[pos_col[j]] - (neg_col[j] >= 0 ? col_value[neg_col[j]] : 0.0);
  }
  result.objective = 0.0;
  for (int j = 0; j < n && j < static_cast<int>(problem.objective.size()); ++j)
    result.objective += problem.objective[j] * result.x[j];
  return result;
}

}  // namespace antipodal::lp
