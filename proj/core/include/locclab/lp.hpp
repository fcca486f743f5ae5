#pragma once

// Tiny dense feasibility solvers for {x >= 0 : A x = b}.

#include <Eigen/Dense>

namespace locclab::lp {

struct Feasibility {
  bool feasible = false;
  Eigen::VectorXd x;            // a feasible point when feasible
  double infeasibility = 0.0;   // sum of artificials (simplex) or worst negativity (vertex)
};

/// Tries every basic solution; A must have full row rank and at most 20
/// columns.
Feasibility vertex_enumeration(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol = 1e-9);

/// Phase-1 simplex with Bland's rule.
Feasibility phase_one_simplex(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol = 1e-9);

}  // namespace locclab::lp
