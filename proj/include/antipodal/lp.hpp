#pragma once

// Small dense linear programs: two-phase primal simplex with Bland's rule.
// Sized for feasibility questions over a few hundred constraints.

#include <vector>

namespace antipodal::lp {

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

struct Constraint {
  std::vector<double> coeffs;
  Sense sense;
  double rhs;
};

// maximize objective . x subject to constraints; variables are nonnegative
// unless flagged free.
struct Problem {
  int num_vars = 0;
  std::vector<double> objective;  // empty means pure feasibility
  std::vector<bool> free_var;     // empty means all nonnegative
  std::vector<Constraint> constraints;

  explicit Problem(int n) : num_vars(n) {}
  void add(std::vector<double> coeffs, Sense sense, double rhs) {
    constraints.push_back({std::move(coeffs), sense, rhs});
  }
};

// kIterationLimit: the pivot cap was hit (numerical cycling); no answer.
enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct Result {
  Status status = Status::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;

  bool feasible() const { return status == Status::kOptimal || status == Status::kUnbounded; }
};

Result solve(const Problem& problem, double tol = 1e-9);

}  // namespace antipodal::lp
