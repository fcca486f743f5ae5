#include "doctest.h"
#include "locclab/lp.hpp"
#include "locclab/random.hpp"

using namespace locclab;

TEST_CASE("small feasible and infeasible systems") {
  Eigen::MatrixXd a(1, 2);
  a << 1, 1;
  Eigen::VectorXd b(1);
  b << 1;
  for (auto solve : {lp::vertex_enumeration, lp::phase_one_simplex}) {
    const auto f = solve(a, b, 1e-9);
    REQUIRE(f.feasible);
    CHECK((a * f.x - b).norm() <= 1e-9);
    CHECK(f.x.minCoeff() >= -1e-12);
  }
  Eigen::MatrixXd c(2, 2);
  c << 1, 1, 1, -1;
  Eigen::VectorXd e(2);
  e << 1, 3;  // x0 = 2, x1 = -1
  CHECK_FALSE(lp::vertex_enumeration(c, e, 1e-9).feasible);
  CHECK_FALSE(lp::phase_one_simplex(c, e, 1e-9).feasible);
}

TEST_CASE("vertex enumeration and simplex agree on random systems") {
  int feasible = 0;
  for (int t = 0; t < 200; ++t) {
    Rng rng = make_rng(31, static_cast<std::uint64_t>(t));
    std::uniform_int_distribution<int> dim(1, 3);
    std::normal_distribution<double> nd;
    const int rows = dim(rng);
    const int cols = rows + dim(rng);
    Eigen::MatrixXd a(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) a(i, j) = nd(rng);
    Eigen::VectorXd b(rows);
    if (t % 2 == 0) {
      // b in the cone of the columns
      Eigen::VectorXd x(cols);
      for (int j = 0; j < cols; ++j) x(j) = std::abs(nd(rng));
      b = a * x;
    } else {
      for (int i = 0; i < rows; ++i) b(i) = nd(rng);
    }
    const auto v = lp::vertex_enumeration(a, b, 1e-9);
    const auto s = lp::phase_one_simplex(a, b, 1e-9);
    CHECK(v.feasible == s.feasible);
    if (t % 2 == 0) CHECK(v.feasible);
    if (v.feasible) {
      ++feasible;
      CHECK((a * v.x - b).norm() <= 1e-7 * (1.0 + b.norm()));
      CHECK((a * s.x - b).norm() <= 1e-7 * (1.0 + b.norm()));
      CHECK(v.x.minCoeff() >= -1e-9);
      CHECK(s.x.minCoeff() >= -1e-9);
    }
  }
  CHECK(feasible >= 100);
}
