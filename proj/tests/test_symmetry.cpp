#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "locclab/config.hpp"
#include "locclab/errors.hpp"
#include "locclab/random.hpp"
#include "locclab/symmetry.hpp"
#include "locclab/verification.hpp"
#include "locclab/zoo.hpp"
#include "oracles.hpp"

using namespace locclab;

namespace {

// Lie algebra of the stabilizer: sl(d) basis E_ab (a != b), E_aa - E_{a+1,a+1},
// embedded by explicit Kronecker products.
int oracle_lie_dim(const QuditState& s) {
  const int n = s.parties();
  const int d = s.dim();
  std::vector<Vector> cols;
  for (int p = 0; p < n; ++p) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        if (a == b && a == d - 1) continue;
        Matrix e = Matrix::Zero(d, d);
        e(a, b) = 1.0;
        if (a == b) e(a + 1, a + 1) = -1.0;
        cols.push_back(oracle::embed(e, p, n) * s.amps());
      }
    }
  }
  Matrix m(s.size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = cols[i];
  return oracle::null_dim(m / s.norm());
}

// {B : (B (x) I ...) s = (I (x) B ...) s}
int oracle_pair_dim(const QuditState& s) {
  const int n = s.parties();
  const int d = s.dim();
  Matrix m(s.size(), d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Matrix e = Matrix::Zero(d, d);
      e(a, b) = 1.0;
      m.col(a * d + b) = (oracle::embed(e, 0, n) - oracle::embed(e, 1, n)) * s.amps();
    }
  return oracle::null_dim(m / s.norm());
}

// Solutions of the system divided by the constant-phase orbit, by plain
// enumeration of every assignment.
std::int64_t brute_force_count(const ExponentSystem& sys) {
  const int m = sys.modulus;
  const int v = sys.num_vars;
  std::int64_t total = 1;
  for (int i = 0; i < v; ++i) total *= m;
  std::int64_t solutions = 0;
  std::vector<int> e(static_cast<std::size_t>(v));
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t c = code;
    for (int i = 0; i < v; ++i) {
      e[static_cast<std::size_t>(i)] = static_cast<int>(c % m);
      c /= m;
    }
    bool ok = true;
    for (const auto& row : sys.equations) {
      long long acc = 0;
      for (int i = 0; i < v; ++i) acc += static_cast<long long>(row[static_cast<std::size_t>(i)]) * e[static_cast<std::size_t>(i)];
      if (acc % m != 0) {
        ok = false;
        break;
      }
    }
    solutions += ok;
  }
  std::int64_t orbit = 0;
  for (int t = 0; t < m; ++t) {
    bool ok = true;
    for (const auto& row : sys.equations) {
      long long sum = 0;
      for (int c : row) sum += c;
      if ((sum * t) % m != 0) ok = false;
    }
    orbit += ok;
  }
  return solutions / orbit;
}

std::set<std::vector<int>> rows_of(const ExponentSystem& sys) { return {sys.equations.begin(), sys.equations.end()}; }

std::vector<double> nonzero(const Spectrum& s) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    if (std::abs(s.eigenvalues[i]) > 1e-9) out.push_back(s.eigenvalues[i]);
  return out;
}

}  // namespace

TEST_CASE("stabilizer Lie dimension") {
  CHECK(stabilizer_lie_dim(ghz(3, 2)) == 2);
  CHECK(stabilizer_lie_dim(psi_nd(5, 2)) == 0);
  CHECK(stabilizer_lie_dim(bell_phi_plus(2)) == 3);
  for (auto [n, d] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {3, 3}, {5, 2}}) {
    CHECK(stabilizer_lie_dim(ghz(n, d)) == (n - 1) * (d - 1));
  }
}

TEST_CASE("stabilizer Lie dimension agrees with the Kronecker oracle") {
  const std::vector<int> zeros{0, 0, 0};
  std::vector<QuditState> states{ghz(3, 2), ghz(3, 3), psi_nd(5, 2), bell_phi_plus(2), bell_phi_plus(3),
                                 QuditState::basis(2, zeros), phi_4d(3), dicke(DickeSpec{3, 2, 1, 1})};
  for (int t = 0; t < 4; ++t) {
    Rng rng = make_rng(21, static_cast<std::uint64_t>(t));
    states.push_back(random_state(3, 2, rng));
  }
  for (const auto& s : states) CHECK(stabilizer_lie_dim(s) == oracle_lie_dim(s));
  // |000>: per party the traceless X with X|0> = c_i|0>, sum_i c_i = 0.
  CHECK(stabilizer_lie_dim(QuditState::basis(2, zeros)) == 3 * (4 - 2) - 1);
}

TEST_CASE("pair condition kernel") {
  const PairKernel k = pair_condition_kernel(psi_nd(5, 2));
  CHECK(k.dimension == 1);
  CHECK(k.identity_only());
  const std::vector<int> zeros{0, 0, 0};
  for (const auto& s : {bell_phi_plus(2), bell_phi_plus(3), QuditState::basis(2, zeros), ghz(3, 2), phi_4d(3), psi_nd(5, 3)})
    CHECK(pair_condition_kernel(s).dimension == oracle_pair_dim(s));
  // The basis really solves the pair condition.
  const QuditState s = bell_phi_plus(3);
  for (const auto& b : pair_condition_kernel(s).basis) {
    CHECK((oracle::embed(b, 0, 2) * s.amps() - oracle::embed(b, 1, 2) * s.amps()).norm() <= 1e-10);
  }
}

TEST_CASE("exponent systems") {
  const auto psi = build_exponent_system(Family::Psi, 5, 2);
  CHECK(psi.modulus == 5);
  CHECK(rows_of(psi) == std::set<std::vector<int>>{{5, 0}, {0, 5}, {2, 3}});
  // u_i^4 (3 rows), u_i^3 u_{i-1} (2), u_i^2 u_{i-1}^2 (2): seven distinct rows.
  const auto phi4 = build_exponent_system(Family::Phi4, 4, 3);
  CHECK(phi4.num_vars == 3);
  CHECK(phi4.equations.size() == 7);
  CHECK(rows_of(build_exponent_system(Family::Phi6, 6, 2)) == std::set<std::vector<int>>{{6, 0}, {0, 6}, {1, 5}});
  CHECK_THROWS(build_exponent_system(Family::Psi, 6, 2));
}

TEST_CASE("diagonal symmetry counts") {
  CHECK(count_diagonal_symmetries(psi_phase_system(5, 3, 2)) == 1);
  const auto control = psi_phase_system(4, 2, 2);
  CHECK(count_diagonal_symmetries(control) > 1);
  CHECK(count_diagonal_symmetries(control) == brute_force_count(control));
  const auto phi6 = build_exponent_system(Family::Phi6, 6, 3);
  CHECK(count_diagonal_symmetries(phi6) == 1);
  CHECK(brute_force_count(phi6) == 1);
}

TEST_CASE("diagonal counts: three independent enumerations agree") {
  std::vector<ExponentSystem> systems;
  for (int n : {5, 7, 8, 9})
    for (int d = 2; d <= 4; ++d) systems.push_back(build_exponent_system(Family::Psi, n, d));
  for (int d = 3; d <= 6; ++d) systems.push_back(build_exponent_system(Family::Phi4, 4, d));
  for (int d = 2; d <= 5; ++d) systems.push_back(build_exponent_system(Family::Phi6, 6, d));
  for (int n = 4; n <= 8; ++n)
    for (int k = 1; k < n; ++k) systems.push_back(psi_phase_system(n, k, 3));
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const auto a = count_diagonal_symmetries(systems[i]);
    CHECK(a == brute_force_count(systems[i]));
    CHECK(a == reenumerate_diagonal_solutions(systems[i], i));
  }
}

TEST_CASE("diagonal counts respect the budget") {
  CHECK_THROWS_AS(count_diagonal_symmetries(build_exponent_system(Family::Psi, 9, 8), 1000), BudgetExceeded);
}

TEST_CASE("two-body spectra") {
  const Spectrum s72 = two_body_spectrum(psi_nd(7, 2));
  CHECK(s72.contains(26.0, 1e-9));
  CHECK(s72.contains(20.0, 1e-9));
  CHECK(s72.multiplicity_of(26.0, 1e-9) == 2);
  const double alpha = 26.0, gamma = 10.0;
  const double beta = oracle::binomial(5, 3) + oracle::binomial(5, 1) + 1.0;
  CHECK(alpha == beta + gamma);

  const std::vector<int> zeros{0, 0};
  CHECK(nonzero(two_body_spectrum(QuditState::basis(2, zeros))) == std::vector<double>{1.0});

  const Spectrum s64 = two_body_spectrum(phi_6d(4));
  const double root = std::sqrt(881.0);
  for (double v : {214.0 / 5.0, 33.0, 51.0, 2.0 * 71.0 / 5.0, 2.0 * 18.0, 2.0 * 6.0, 2.0 * 4.0, 0.4 * (41.0 + root), 0.4 * (41.0 - root)})
    CHECK(s64.contains(v, 1e-9));
  // Trace equals norm^2.
  CHECK(s64.eigenvalues.sum() == doctest::Approx(phi_6d(4).norm_squared()));
}

TEST_CASE("two-body eigenvalues match a dense eigensolve of the explicit reduction") {
  for (const auto& s : {psi_nd(5, 3), phi_4d(3), ghz(3, 3)}) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(oracle::reduce(s, {0, 1}));
    CHECK((two_body_spectrum(s).eigenvalues - es.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("kernel decomposition of the Psi_{5,d} two-body reduction") {
  const auto k2 = kernel_decomposition(psi_nd(5, 2));
  CHECK(k2.dim_q == 0);
  CHECK(k2.kernel_dim == 1);
  const auto k3 = kernel_decomposition(psi_nd(5, 3));
  CHECK(k3.kernel_dim == 4);
  CHECK(k3.kernel_dim == (9 - 9 + 2) + (3 - 1));
  const auto k4 = kernel_decomposition(psi_nd(5, 4));
  CHECK(k4.dim_p + k4.dim_s_plus == 2 * 4 - 1);
  CHECK(16 - k4.kernel_dim == 7);
  for (const auto& k : {k2, k3, k4}) CHECK(k.ok());
  CHECK_THROWS_AS(kernel_decomposition_check(ghz(5, 2)), PreconditionFailed);
  CHECK_THROWS_AS(kernel_decomposition_check(psi_nd(7, 2)), PreconditionFailed);
}

TEST_CASE("tridiagonal recurrence") {
  for (int d = 3; d <= 12; ++d) {
    const auto r = tridiagonal_recurrence(d);
    REQUIRE(r.f.size() == static_cast<std::size_t>(d + 1));
    CHECK(r.f[0] == 1.0);
    CHECK(r.f[1] == doctest::Approx(std::sqrt(15.0) * phi4_coefficient(d, 0)));
    CHECK(r.nonzero);
    CHECK(r.monotone);
    for (int i = 1; i < d; ++i) CHECK(std::abs(r.f[static_cast<std::size_t>(i + 1)]) > std::abs(r.f[static_cast<std::size_t>(i)]));
  }
  const auto r4 = tridiagonal_recurrence(4);
  const double det = tridiagonal_matrix(4).determinant();
  CHECK(r4.f[4] == doctest::Approx(det).epsilon(1e-9));
}

TEST_CASE("symmetry residual") {
  const QuditState psi = psi_nd(5, 2);
  CHECK(symmetry_residual(psi, LocalOperator::identity(5, 2)) == doctest::Approx(0.0));
  const Matrix w5 = std::polar(1.0, 2.0 * M_PI / 5.0) * Matrix::Identity(2, 2);
  CHECK(symmetry_residual(psi, LocalOperator::uniform(5, w5)) <= 1e-12);
  Matrix z = Matrix::Identity(2, 2);
  z(1, 1) = -1.0;
  CHECK(symmetry_residual(psi, LocalOperator::uniform(5, z)) > 0.1);
  CHECK(distance_from_identity(LocalOperator::uniform(5, w5)) <= 1e-12);
  CHECK(distance_from_identity(LocalOperator::uniform(5, z)) > 1.0);
}

TEST_CASE("heuristic symmetry search") {
  SearchOptions opt;
  opt.restarts = 50;
  opt.seed = 7;
  const auto found = heuristic_symmetry_search(ghz(3, 2), opt);
  CHECK_FALSE(found.empty());
  for (const auto& c : found) {
    CHECK(c.residual < 1e-6);
    CHECK(c.distance > 1e-4);
    CHECK(c.op.is_unitary(1e-8));
    CHECK(symmetry_residual(ghz(3, 2), c.op) < 1e-6);
  }
  CHECK(heuristic_symmetry_search(psi_nd(5, 2), opt).empty());
  CHECK_FALSE(heuristic_symmetry_search(bell_phi_plus(3), opt).empty());
}

TEST_CASE("search is deterministic in the seed and independent of the thread count") {
  SearchOptions opt;
  opt.restarts = 8;
  opt.seed = 3;
  set_thread_count(1);
  const auto a = heuristic_symmetry_search(ghz(3, 2), opt);
  set_thread_count(4);
  const auto b = heuristic_symmetry_search(ghz(3, 2), opt);
  set_thread_count(1);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].restart == b[i].restart);
    CHECK(a[i].residual == b[i].residual);
  }
}

TEST_CASE("stabilizer certificates") {
  SearchOptions opt;
  opt.restarts = 50;
  opt.seed = 7;
  const auto psi = certify_trivial_stabilizer(psi_nd(5, 2), FamilyHint{Family::Psi, 5, 2}, opt);
  CHECK(psi.verdict == Verdict::EvidenceTrivial);
  const auto g = certify_trivial_stabilizer(ghz(4, 2), FamilyHint{Family::Ghz, 4, 2}, opt);
  CHECK(g.verdict == Verdict::NontrivialFound);
  CHECK(g.lie_dimension == 3);
  const auto phi = certify_trivial_stabilizer(phi_4d(3), FamilyHint{Family::Phi4, 4, 3}, opt);
  CHECK(phi.verdict == Verdict::EvidenceTrivial);
  // Without a hint no diagonal count is available, so the verdict rests on the rest.
  const auto nohint = certify_trivial_stabilizer(psi_nd(5, 2), std::nullopt, opt);
  CHECK_FALSE(nohint.diagonal_solution_count.has_value());
  // Non-critical input is never called trivial.
  Rng rng = make_rng(22);
  const auto off = certify_trivial_stabilizer(random_state(3, 2, rng), std::nullopt, opt);
  CHECK(off.verdict == Verdict::Inconclusive);
}

TEST_CASE("EvidenceTrivial implies every component") {
  SearchOptions opt;
  opt.restarts = 10;
  opt.seed = 1;
  for (const auto& [s, hint] : std::vector<std::pair<QuditState, FamilyHint>>{
           {psi_nd(5, 3), {Family::Psi, 5, 3}}, {phi_6d(2), {Family::Phi6, 6, 2}}, {ghz(3, 3), {Family::Ghz, 3, 3}}}) {
    const auto c = certify_trivial_stabilizer(s, hint, opt);
    if (c.verdict == Verdict::EvidenceTrivial) {
      CHECK(c.lie_dimension == 0);
      CHECK(c.pair_kernel_dimension == 1);
      CHECK((!c.diagonal_solution_count || *c.diagonal_solution_count == 1));
      CHECK(c.spectral_checks_passed);
      CHECK(c.heuristic_search_found.empty());
    }
  }
}
