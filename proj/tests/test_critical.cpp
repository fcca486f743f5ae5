#include <cmath>

#include "doctest.h"
#include "locclab/critical.hpp"
#include "locclab/errors.hpp"
#include "locclab/random.hpp"
#include "locclab/symmetry.hpp"
#include "locclab/zoo.hpp"
#include "oracles.hpp"

using namespace locclab;

namespace {
// max_i ||rho_i/Tr - I/d||_F by explicit summation.
double oracle_residual(const QuditState& s) {
  double worst = 0.0;
  for (int p = 0; p < s.parties(); ++p) {
    const Matrix rho = oracle::reduce(s, {p});
    worst = std::max(worst, (rho / rho.trace().real() - Matrix::Identity(s.dim(), s.dim()) / static_cast<double>(s.dim())).norm());
  }
  return worst;
}
}  // namespace

TEST_CASE("is_critical examples") {
  CHECK(is_critical(ghz(3, 2)).critical);
  const std::vector<int> zeros{0, 0, 0};
  const auto c = is_critical(QuditState::basis(2, zeros));
  CHECK_FALSE(c.critical);
  CHECK(c.residual == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(is_critical(psi_nd(5, 2), 1e-10).critical);
  CHECK_THROWS_AS(is_critical(QuditState::zero(2, 2)), ZeroState);
}

TEST_CASE("criticality residual agrees with explicit reductions") {
  for (int t = 0; t < 20; ++t) {
    Rng rng = make_rng(11, static_cast<std::uint64_t>(t));
    const QuditState s = random_state(3, 2 + t % 2, rng);
    CHECK(criticality_residual(s) == doctest::Approx(oracle_residual(s)).epsilon(1e-10));
  }
  CHECK(criticality_residual(psi_nd(7, 3)) <= 1e-12);
}

TEST_CASE("lie_criticality_residual") {
  CHECK(lie_criticality_residual(ghz(3, 3)) <= 1e-12);
  const std::vector<int> zeros{0, 0};
  CHECK(lie_criticality_residual(QuditState::basis(2, zeros)) == doctest::Approx(0.5));
  int agree = 0;
  for (int t = 0; t < 100; ++t) {
    Rng rng = make_rng(12, static_cast<std::uint64_t>(t));
    // Mix critical and generic inputs so both answers occur.
    const QuditState s = t % 2 == 0 ? random_state(3, 2, rng) : apply_local(random_local_unitary(5, 2, rng), psi_nd(5, 2)).normalized();
    const bool a = lie_criticality_residual(s) <= 1e-10;
    const bool b = is_critical(s, 1e-10).critical;
    agree += a == b;
  }
  CHECK(agree == 100);
}

TEST_CASE("is_fully_entangled") {
  CHECK(is_fully_entangled(ghz(4, 2)));
  const std::vector<int> zero{0};
  CHECK_FALSE(is_fully_entangled(tensor(QuditState::basis(2, zero), bell_phi_plus(2))));
  CHECK(is_fully_entangled(psi_nd(7, 2)));
}

TEST_CASE("normal form of a critical input is immediate") {
  const auto r = normal_form(psi_nd(5, 2).normalized());
  CHECK(r.converged());
  CHECK(r.iterations <= 2);
  for (const auto& f : r.accumulated.factors()) CHECK((f - Matrix::Identity(2, 2)).norm() <= 1e-8);
}

TEST_CASE("normal form recovers the critical seed up to local unitaries") {
  const QuditState seed = psi_nd(5, 2).normalized();
  for (int t = 0; t < 6; ++t) {
    Rng rng = make_rng(13, static_cast<std::uint64_t>(t));
    const LocalOperator g = random_local_invertible(5, 2, rng);
    const QuditState x = apply_local(g, seed);
    const auto r = normal_form(x);
    REQUIRE(r.converged());
    CHECK(r.residual <= 1e-10);
    CHECK(criticality_residual(r.critical) <= 1e-10);
    // monotone norm trace
    for (std::size_t i = 1; i < r.norm_trace.size(); ++i) CHECK(r.norm_trace[i] <= r.norm_trace[i - 1] * (1.0 + 1e-12));
    // determinant-1 factors
    for (const auto& f : r.accumulated.factors()) CHECK(std::abs(f.determinant() - 1.0) <= 1e-9);
    // reconstruction s = scale * acc * critical
    const QuditState back = apply_local(r.accumulated, r.critical).scaled(r.scale);
    CHECK((back.amps() - x.amps()).norm() <= 1e-8 * x.norm());
    // one- and two-body spectra match the seed
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) {
        const RealVector a = reduced_spectrum(r.critical, i, j).eigenvalues;
        const RealVector b = reduced_spectrum(seed, i, j).eigenvalues;
        CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-8);
      }
    }
    // idempotence
    const auto again = normal_form(r.critical);
    CHECK(again.converged());
    for (const auto& f : again.accumulated.factors()) CHECK((f - Matrix::Identity(2, 2)).norm() <= 1e-8);
  }
}

TEST_CASE("W state: norm runs off to zero") {
  const QuditState w = dicke(DickeSpec{3, 2, 1, 1}).normalized();
  const auto r = normal_form(w);
  CHECK(r.status == NormalFormStatus::NotConverged);
  CHECK(r.norm_trace.back() < 1e-3);
  for (std::size_t i = 1; i < r.norm_trace.size(); ++i) CHECK(r.norm_trace[i] <= r.norm_trace[i - 1] * (1.0 + 1e-12));
}

TEST_CASE("rank-deficient input is a singular reduction") {
  const std::vector<int> zero{0};
  const auto r = normal_form(tensor(QuditState::basis(2, zero), bell_phi_plus(2)));
  CHECK(r.status == NormalFormStatus::SingularReduction);
  CHECK_THROWS_AS(normal_form(QuditState::zero(3, 2)), ZeroState);
  CHECK_THROWS_AS(normal_form(ghz(3, 2), -1.0), InvalidArgument);
}
