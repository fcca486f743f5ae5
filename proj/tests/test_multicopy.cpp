#include <cmath>

#include "doctest.h"
#include "locclab/errors.hpp"
#include "locclab/multicopy.hpp"
#include "locclab/random.hpp"
#include "locclab/transform.hpp"
#include "locclab/zoo.hpp"

using namespace locclab;

namespace {
// Direct binomial tail in long double.
long double tail(long double p, int k, int m) {
  long double sum = 0.0L;
  for (int j = m; j <= k; ++j) {
    long double c = 1.0L;
    for (int i = 1; i <= j; ++i) c = c * (k - j + i) / i;
    sum += c * std::pow(p, j) * std::pow(1.0L - p, k - j);
  }
  return sum;
}
}  // namespace

TEST_CASE("multicopy examples") {
  CHECK(multicopy_lower_bound(0.3, 1, 1) == doctest::Approx(0.3));
  for (int k = 1; k <= 5; ++k)
    for (int m = 0; m <= k; ++m) CHECK(multicopy_lower_bound(1.0, k, m) == 1.0);
  CHECK(multicopy_lower_bound(0.5, 2, 1) == 0.75);
  CHECK(multicopy_lower_bound(0.0, 4, 1) == 0.0);
  CHECK(multicopy_lower_bound(0.4, 7, 0) == 1.0);
  CHECK_THROWS(multicopy_lower_bound(0.5, 2, 3));
  CHECK_THROWS(multicopy_lower_bound(1.5, 2, 1));
}

TEST_CASE("multicopy agrees with the direct sum and is monotone") {
  Rng rng = make_rng(51);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const double p = u(rng);
    const int k = 1 + t % 150;
    const int m = static_cast<int>(u(rng) * (k + 1)) % (k + 1);
    const double got = multicopy_lower_bound(p, k, m);
    CHECK(got == doctest::Approx(static_cast<double>(tail(p, k, m))).epsilon(1e-9));
    CHECK(got >= 0.0);
    CHECK(got <= 1.0);
    CHECK(multicopy_lower_bound(std::min(1.0, p + 0.05), k, m) >= got - 1e-12);
    if (m < k) CHECK(multicopy_lower_bound(p, k, m + 1) <= got + 1e-12);
  }
}

TEST_CASE("entropy bound") {
  CHECK(eisert_bound(ghz(3, 2), ghz(3, 2)) == doctest::Approx(0.5).epsilon(1e-9));
  const auto rep = rate_lower_bounds(ghz(3, 2), ghz(3, 2), LocalOperator::identity(3, 2));
  CHECK(*rep.eisert_bound == doctest::Approx(0.5));
  CHECK(rep.best == doctest::Approx(1.0));
  const QuditState t = tripartite_state(tripartite_unitaries(4)).normalized();
  const auto tt = rate_lower_bounds(t, t, LocalOperator::identity(3, 4));
  CHECK(*tt.eisert_bound == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(*tt.pmax_bound == doctest::Approx(1.0));
  CHECK(tt.best == doctest::Approx(1.0));
  const std::vector<int> zeros{0, 0, 0};
  CHECK_THROWS(eisert_bound(ghz(3, 2), QuditState::basis(2, zeros)));
  CHECK_THROWS(rate_lower_bounds(psi_nd(5, 2).normalized(), psi_nd(5, 2).normalized(), std::nullopt, true));
}

TEST_CASE("rate bounds: best is the larger available bound") {
  const QuditState psi = tripartite_state(tripartite_unitaries(4)).normalized();
  for (int t = 0; t < 10; ++t) {
    Rng rng = make_rng(52, static_cast<std::uint64_t>(t));
    const LocalOperator h = normalize_filter(random_local_invertible(3, 4, rng), psi);
    const QuditState phi = apply_local(h, psi);
    const auto r = rate_lower_bounds(psi, phi, h);
    REQUIRE(r.pmax_bound.has_value());
    REQUIRE(r.eisert_bound.has_value());
    CHECK(r.best == doctest::Approx(std::max(*r.pmax_bound, *r.eisert_bound)));
    CHECK(*r.pmax_bound == doctest::Approx(pmax(psi, h).p_max));
  }
}
