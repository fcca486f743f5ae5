#include "locclab/lp.hpp"

#include <limits>
#include <vector>

#include "locclab/errors.hpp"

namespace locclab::lp {

Feasibility vertex_enumeration(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol) {
  const auto m = a.rows();
  const auto k = a.cols();
  if (b.size() != m) throw DimensionMismatch("A and b row counts differ");
  if (k > 20) throw BudgetExceeded("vertex enumeration is limited to 20 columns");
  if (m > k) throw InvalidArgument("vertex enumeration needs rows <= columns");
  Feasibility best;
  best.infeasibility = std::numeric_limits<double>::infinity();
  if (m == 0) {
    best.feasible = true;
    best.x = Eigen::VectorXd::Zero(k);
    best.infeasibility = 0.0;
    return best;
  }
  // Lexicographic m-subsets of the k columns.
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = static_cast<int>(i);
  while (true) {
    Eigen::MatrixXd basis(m, m);
    for (Eigen::Index i = 0; i < m; ++i) basis.col(i) = a.col(idx[static_cast<std::size_t>(i)]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
    lu.setThreshold(1e-12);
    if (lu.rank() == m) {
      const Eigen::VectorXd xb = lu.solve(b);
      const double worst = std::max(0.0, -xb.minCoeff());
      if (worst < best.infeasibility) {
        best.infeasibility = worst;
        best.x = Eigen::VectorXd::Zero(k);
        for (Eigen::Index i = 0; i < m; ++i) best.x[idx[static_cast<std::size_t>(i)]] = xb[i];
      }
      if (worst <= tol) {
        best.feasible = true;
        return best;
      }
    }
    Eigen::Index pos = m - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == static_cast<int>(k - m + pos)) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (Eigen::Index i = pos + 1; i < m; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
  return best;
}

Feasibility phase_one_simplex(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol) {
  const auto m = a.rows();
  const auto k = a.cols();
  if (b.size() != m) throw DimensionMismatch("A and b row counts differ");
  const Eigen::Index cols = k + m + 1;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, cols);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    t.row(i).head(k) = sign * a.row(i);
    t(i, k + i) = 1.0;
    t(i, cols - 1) = sign * b[i];
  }
  // Objective row: minimize the sum of artificials, written in reduced form.
  for (Eigen::Index i = 0; i < m; ++i) {
    t.row(m).head(k) -= t.row(i).head(k);
    t(m, cols - 1) -= t(i, cols - 1);
  }
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = k + i;

  const double eps = 1e-12;
  for (int iter = 0; iter < 100000; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < k + m; ++j) {
      if (t(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, enter) > eps) {
        const double r = t(i, cols - 1) / t(i, enter);
        if (r < ratio - 1e-15 ||
            (r <= ratio + 1e-15 && leave >= 0 && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          ratio = r;
          leave = i;
        }
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase 1
    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  Feasibility out;
  out.x = Eigen::VectorXd::Zero(k);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] < k) out.x[basis[static_cast<std::size_t>(i)]] = t(i, cols - 1);
  }
  out.infeasibility = std::max(0.0, -t(m, cols - 1));
  out.feasible = out.infeasibility <= tol;
  return out;
}

}  // namespace locclab::lp
