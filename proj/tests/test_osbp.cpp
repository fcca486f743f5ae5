#include <cmath>

#include "doctest.h"
#include "locclab/critical.hpp"
#include "locclab/osbp.hpp"
#include "locclab/random.hpp"
#include "locclab/transform.hpp"
#include "locclab/zoo.hpp"

using namespace locclab;

namespace {
// psi = sqrt(0.2)|000> + sqrt(0.8)|111>, h_0 = diag(sqrt2, sqrt(3/4)):
// <H> = 0.4 + 0.6 = 1 and lambda_max = 2, so p = 1/2.
std::pair<QuditState, LocalOperator> half_fixture() {
  QuditState psi = QuditState::zero(3, 2);
  psi += std::sqrt(0.2) * QuditState::basis(2, std::vector<int>{0, 0, 0});
  psi += std::sqrt(0.8) * QuditState::basis(2, std::vector<int>{1, 1, 1});
  std::vector<Matrix> f(3, Matrix::Identity(2, 2));
  f[0](0, 0) = std::sqrt(2.0);
  f[0](1, 1) = std::sqrt(0.75);
  return {psi, LocalOperator(f)};
}
}  // namespace

TEST_CASE("identity protocol") {
  const QuditState psi = psi_nd(5, 2).normalized();
  const auto proto = build_osbp(LocalOperator::identity(5, 2), psi);
  for (int i = 0; i < 5; ++i) {
    CHECK((proto.success[static_cast<std::size_t>(i)] - Matrix::Identity(2, 2)).norm() <= 1e-12);
    CHECK(proto.failure[static_cast<std::size_t>(i)].norm() <= 1e-7);
  }
  CHECK(exact_success_probability(proto, psi) == doctest::Approx(1.0));
  const auto sim = simulate(proto, psi, 1000, 7);
  CHECK(sim.rate == 1.0);
  CHECK(sim.successes == 1000);
}

TEST_CASE("lambda_max = 2 gives success probability one half") {
  const auto [psi, h] = half_fixture();
  CHECK(apply_local(h, psi).norm() == doctest::Approx(1.0));
  const auto proto = build_osbp(h, psi);
  CHECK(exact_success_probability(proto, psi) == doctest::Approx(0.5).epsilon(1e-12));
  const auto sim = simulate(proto, psi, 100000, 7);
  CHECK(sim.rate >= 0.4937);
  CHECK(sim.rate <= 0.5063);
}

TEST_CASE("completeness and agreement with pmax on random fixtures") {
  const QuditState seed = psi_nd(5, 2).normalized();
  for (int t = 0; t < 50; ++t) {
    Rng rng = make_rng(61, static_cast<std::uint64_t>(t));
    const QuditState psi = apply_local(random_local_unitary(5, 2, rng), seed);
    const LocalOperator h = normalize_filter(random_local_invertible(5, 2, rng), psi);
    const auto proto = build_osbp(h, psi);
    CHECK(proto.completeness_residual < 1e-10);
    for (int i = 0; i < 5; ++i) {
      const Matrix& a = proto.success[static_cast<std::size_t>(i)];
      const Matrix& b = proto.failure[static_cast<std::size_t>(i)];
      CHECK((a.adjoint() * a + b.adjoint() * b - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK(exact_success_probability(proto, psi) == doctest::Approx(pmax(psi, h).p_max).epsilon(1e-12));
  }
}

TEST_CASE("per-party scale does not change the protocol value") {
  const QuditState psi = psi_nd(5, 2).normalized();
  Rng rng = make_rng(62);
  const LocalOperator h = normalize_filter(random_local_invertible(5, 2, rng), psi);
  const LocalOperator skew = h.scaled(1, 3.0).scaled(2, 1.0 / 3.0);
  const double a = exact_success_probability(build_osbp(h, psi), psi);
  const double b = exact_success_probability(build_osbp(skew, psi), psi);
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("failure branches lose full entanglement") {
  const QuditState psi = psi_nd(5, 2).normalized();
  Rng rng = make_rng(63);
  const LocalOperator h = normalize_filter(random_local_invertible(5, 2, rng), psi);
  const auto proto = build_osbp(h, psi);
  for (int p = 0; p < 5; ++p) {
    // The first failure happens at party p.
    std::vector<bool> first_fail(static_cast<std::size_t>(p + 1), true);
    first_fail.back() = false;
    first_fail.resize(5, true);
    const QuditState post = branch_state(proto, psi, first_fail);
    if (post.norm() < 1e-12) continue;
    const int side[] = {p};
    CHECK(schmidt_rank(post, side, 1e-8) < 2);
  }
}

TEST_CASE("simulation is reproducible and tallies add up") {
  const auto [psi, h] = half_fixture();
  const auto proto = build_osbp(h, psi);
  const auto a = simulate(proto, psi, 20000, 11);
  const auto b = simulate(proto, psi, 20000, 11);
  CHECK(a.successes == b.successes);
  CHECK(a.branch_tallies == b.branch_tallies);
  std::int64_t total = 0;
  for (const auto& [key, count] : a.branch_tallies) {
    CHECK(key.size() == 3);
    total += count;
  }
  CHECK(total == a.shots);
  CHECK(a.branch_tallies.at("AAA") == a.successes);
}
