#include <cmath>

#include "doctest.h"
#include "locclab/critical.hpp"
#include "locclab/errors.hpp"
#include "locclab/random.hpp"
#include "locclab/symmetry.hpp"
#include "locclab/transform.hpp"
#include "locclab/zoo.hpp"
#include "oracles.hpp"

using namespace locclab;

namespace {
Matrix sigma_x() {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}
Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}
}  // namespace

TEST_CASE("pmax examples") {
  const QuditState psi = psi_nd(5, 2).normalized();
  const auto id = pmax(psi, LocalOperator::identity(5, 2));
  CHECK(id.p_max == doctest::Approx(1.0));
  CHECK(id.deterministic);

  // h = sqrt2 diag(1, 1/2) on party 0: H_0 = diag(2, 1/2). A state with
  // weight w on |0...> at party 0 has ||h psi||^2 = 2w + (1-w)/2 = 1 at w = 1/3.
  QuditState engineered = QuditState::zero(5, 2);
  const std::vector<int> zeros{0, 0, 0, 0, 0}, ones{1, 1, 1, 1, 1};
  engineered += std::sqrt(1.0 / 3.0) * QuditState::basis(2, zeros);
  engineered += std::sqrt(2.0 / 3.0) * QuditState::basis(2, ones);
  std::vector<Matrix> f(5, Matrix::Identity(2, 2));
  f[0] = std::sqrt(2.0) * diag2(1.0, 0.5);
  const LocalOperator h(f);
  CHECK(apply_local(h, engineered).norm() == doctest::Approx(1.0));
  const auto half = pmax(engineered, h);
  CHECK(half.lambda_max == doctest::Approx(2.0));
  CHECK(half.p_max == doctest::Approx(0.5));
  CHECK_FALSE(half.deterministic);
}

TEST_CASE("pmax equals 1 / lambda_max of the explicit H") {
  for (int t = 0; t < 10; ++t) {
    Rng rng = make_rng(41, static_cast<std::uint64_t>(t));
    const QuditState psi = apply_local(random_local_unitary(5, 2, rng), psi_nd(5, 2).normalized());
    const LocalOperator h = normalize_filter(random_local_invertible(5, 2, rng), psi);
    CHECK(apply_local(h, psi).norm() == doctest::Approx(psi.norm()).epsilon(1e-12));
    const Matrix full = h.expand();
    Eigen::SelfAdjointEigenSolver<Matrix> es(full.adjoint() * full, Eigen::EigenvaluesOnly);
    CHECK(pmax(psi, h).p_max == doctest::Approx(1.0 / es.eigenvalues().maxCoeff()).epsilon(1e-10));
    CHECK(pmax(psi, h).p_max < 1.0);
    // Unitary filters are deterministic.
    const auto u = pmax(psi, random_local_unitary(5, 2, rng));
    CHECK(u.p_max == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(u.lu_witness.has_value());
  }
  CHECK_THROWS_AS(pmax(psi_nd(5, 2), LocalOperator::identity(5, 2)), NotNormalized);
}

TEST_CASE("sep_residual") {
  const int n = 4;
  SepInstance id{LocalOperator::uniform(n, 1.5 * Matrix::Identity(2, 2)), {LocalOperator::identity(n, 2)}, std::pow(1.5, 4)};
  CHECK(sep_residual(id, {1.0}) == doctest::Approx(0.0));
  std::vector<Matrix> hf(n, Matrix::Identity(2, 2));
  hf[0] = diag2(3.0, 1.0);
  SepInstance flip{LocalOperator(hf), {LocalOperator::identity(n, 2), LocalOperator::uniform(n, sigma_x())}, 2.0};
  CHECK(sep_residual(flip, {0.5, 0.5}) == doctest::Approx(0.0));
  Rng rng = make_rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const double p = u(rng);
    if (std::abs(p - 0.5) > 1e-3) CHECK(sep_residual(flip, {p, 1.0 - p}) > 0.0);
  }
}

TEST_CASE("sep feasibility decisions") {
  const int n = 4;
  SepInstance id{LocalOperator::uniform(n, Matrix::Identity(2, 2)), {LocalOperator::identity(n, 2)}, 1.0};
  CHECK(sep_feasible(id).feasible);
  std::vector<Matrix> hf(n, Matrix::Identity(2, 2));
  hf[0] = diag2(2.0, 1.0);
  SepInstance bad{LocalOperator(hf), {LocalOperator::identity(n, 2)}, 1.0};
  CHECK_FALSE(sep_feasible(bad).feasible);
  hf[0] = diag2(3.0, 1.0);
  SepInstance flip{LocalOperator(hf), {LocalOperator::identity(n, 2), LocalOperator::uniform(n, sigma_x())}, 2.0};
  for (bool simplex : {false, true}) {
    SepOptions o;
    o.force_simplex = simplex;
    o.force_vertex = !simplex;
    const auto r = sep_feasible(flip, o);
    REQUIRE(r.feasible);
    CHECK(r.p[0] == doctest::Approx(0.5));
    CHECK(r.p[1] == doctest::Approx(0.5));
    CHECK(r.residual <= 1e-8);
    CHECK(r.method == (simplex ? "simplex" : "vertex"));
  }
}

TEST_CASE("sep: vertex and simplex agree on random diagonal instances") {
  const int n = 3;
  Matrix z = diag2(1.0, -1.0);
  for (int t = 0; t < 30; ++t) {
    Rng rng = make_rng(43, static_cast<std::uint64_t>(t));
    std::uniform_real_distribution<double> u(0.5, 2.0);
    std::vector<Matrix> hf;
    for (int i = 0; i < n; ++i) hf.push_back(diag2(u(rng), u(rng)));
    std::vector<LocalOperator> syms{LocalOperator::identity(n, 2), LocalOperator::uniform(n, sigma_x()),
                                    LocalOperator::uniform(n, z)};
    const double r = t % 3 == 0 ? 1.0 : LocalOperator(hf).expand().trace().real() / 8.0;
    SepInstance inst{LocalOperator(hf), syms, r};
    SepOptions v, s;
    v.force_vertex = true;
    s.force_simplex = true;
    const auto a = sep_feasible(inst, v);
    const auto b = sep_feasible(inst, s);
    CHECK(a.feasible == b.feasible);
    if (a.feasible) CHECK(sep_residual(inst, a.p) <= 1e-8);
  }
}

TEST_CASE("lu_equiv_same_seed") {
  Rng rng = make_rng(44);
  const LocalOperator g = random_local_invertible(3, 3, rng);
  CHECK(lu_equiv_same_seed(g, g));
  CHECK(lu_equiv_same_seed(g, random_local_unitary(3, 3, rng) * g));
  CHECK(lu_equiv_same_seed(g, g.scaled(1, 2.0).scaled(2, 0.5)));
  std::vector<Matrix> d(3, Matrix::Identity(3, 3));
  d[1](0, 0) = 2.0;
  CHECK_FALSE(lu_equiv_same_seed(g, g * LocalOperator(d)));
}

TEST_CASE("find_lu_alignment") {
  const QuditState a = psi_nd(5, 2).normalized();
  const auto self = find_lu_alignment(a, a);
  REQUIRE(self.has_value());
  CHECK(self->restart == 0);
  Rng rng = make_rng(45);
  const LocalOperator u = random_local_unitary(5, 2, rng);
  const QuditState b = apply_local(u.adjoint(), a);
  const auto found = find_lu_alignment(a, b);
  REQUIRE(found.has_value());
  CHECK(found->overlap >= 1.0 - 1e-10);
  CHECK((apply_local(found->u, b).amps() - a.amps()).norm() <= 1e-6);
  AlignmentOptions few;
  few.restarts = 10;
  CHECK_FALSE(find_lu_alignment(a, ghz(5, 2), few).has_value());
  CHECK_THROWS_AS(find_lu_alignment(a, apply_local(random_local_invertible(5, 2, rng), a).normalized()), PreconditionFailed);
}

TEST_CASE("lu_equiv_states decisions") {
  const QuditState psi = psi_nd(5, 2).normalized();
  Rng rng = make_rng(46);
  const LocalOperator u = random_local_unitary(5, 2, rng);
  const auto yes = lu_equiv_states(psi, apply_local(u, psi));
  CHECK(yes.decision == Decision::True);
  REQUIRE(yes.witness.has_value());
  CHECK(yes.witness->is_unitary(1e-8));
  CHECK((apply_local(*yes.witness, apply_local(u, psi)).amps() - psi.amps()).norm() <= 1e-8);

  const QuditState seed = psi_nd(5, 3).normalized();
  const QuditState x = apply_local(random_local_invertible(5, 3, rng), seed).normalized();
  const QuditState y = apply_local(random_local_invertible(5, 3, rng), seed).normalized();
  CHECK(lu_equiv_states(x, y).decision == Decision::False);
  CHECK(lu_equiv_states(x, apply_local(random_local_unitary(5, 3, rng), x)).decision == Decision::True);

  const auto other = lu_equiv_states(psi, ghz(5, 2));
  CHECK(other.decision == Decision::False);
  CHECK(other.reason.find("NotSLOCCEquivalent") != std::string::npos);
  CHECK(lu_equiv_states(psi, 2.0 * psi).decision == Decision::False);
}

TEST_CASE("deterministic_convertible needs trivial-stabilizer evidence") {
  SearchOptions opt;
  opt.restarts = 5;
  const auto cert = certify_trivial_stabilizer(ghz(3, 2), std::nullopt, opt);
  CHECK_THROWS_AS(deterministic_convertible(ghz(3, 2), ghz(3, 2), cert), PreconditionFailed);
}
