#include "locclab/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "locclab/config.hpp"
#include "locclab/critical.hpp"
#include "locclab/errors.hpp"
#include "locclab/random.hpp"

namespace locclab {
namespace {

// Above this many matrix entries the dense kernel assembly is refused.
constexpr std::size_t kKernelEntryBudget = std::size_t{1} << 24;

Matrix unit(int d, int a, int b) {
  Matrix e = Matrix::Zero(d, d);
  e(a, b) = 1.0;
  return e;
}

void check_budget(std::size_t rows, std::size_t cols) {
  if (rows * cols > kKernelEntryBudget) {
    throw SizeCapExceeded("kernel matrix " + std::to_string(rows) + " x " + std::to_string(cols) +
                          " exceeds the dense budget");
  }
}

// Singular values and right singular vectors of A. Tall matrices are first
// reduced to their R factor, which has the same singular values and null space.
Eigen::JacobiSVD<Matrix> right_svd(const Matrix& a) {
  if (a.rows() > a.cols()) {
    Eigen::HouseholderQR<Matrix> qr(a);
    const Matrix r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
    return Eigen::JacobiSVD<Matrix>(r, Eigen::ComputeFullV);
  }
  return Eigen::JacobiSVD<Matrix>(a, Eigen::ComputeFullV);
}

int numerical_rank(const RealVector& sv, double rel) {
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  return static_cast<int>((sv.array() > rel * sv[0]).count());
}

QuditState apply_all_except(const std::vector<Matrix>& u, int skip, const QuditState& s) {
  QuditState t = s;
  for (int q = 0; q < static_cast<int>(u.size()); ++q) {
    if (q != skip) t = apply_factor(u[static_cast<std::size_t>(q)], q, t);
  }
  return t;
}

QuditState apply_all(const std::vector<Matrix>& u, const QuditState& s) { return apply_all_except(u, -1, s); }

}  // namespace

// ---------------------------------------------------------------- kernels

int stabilizer_lie_dim(const QuditState& s, const KernelOptions& opt) {
  if (s.is_zero()) throw ZeroState("stabilizer_lie_dim of the zero state");
  const int n = s.parties();
  const int d = s.dim();
  std::vector<Matrix> gens;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      if (a != b) gens.push_back(unit(d, a, b));
    }
  }
  for (int a = 0; a + 1 < d; ++a) gens.push_back(unit(d, a, a) - unit(d, d - 1, d - 1));
  const std::size_t cols = static_cast<std::size_t>(n) * gens.size();
  check_budget(s.size(), cols);
  Matrix a(static_cast<Eigen::Index>(s.size()), static_cast<Eigen::Index>(cols));
  Eigen::Index c = 0;
  for (int p = 0; p < n; ++p) {
    for (const auto& g : gens) a.col(c++) = apply_factor(g, p, s).amps();
  }
  const auto svd = right_svd(a);
  return static_cast<int>(cols) - numerical_rank(svd.singularValues(), opt.rel_threshold);
}

bool PairKernel::identity_only() const {
  if (dimension != 1 || basis.size() != 1) return false;
  const Matrix& b = basis.front();
  const auto d = static_cast<double>(b.rows());
  const Matrix dev = b - (b.trace() / d) * Matrix::Identity(b.rows(), b.cols());
  return dev.norm() <= 1e-8 * b.norm();
}

PairKernel pair_condition_kernel(const QuditState& s, const KernelOptions& opt) {
  if (s.parties() < 2) throw InvalidArgument("pair_condition_kernel needs n >= 2");
  if (s.is_zero()) throw ZeroState("pair_condition_kernel of the zero state");
  const int d = s.dim();
  check_budget(s.size(), static_cast<std::size_t>(d * d));
  Matrix a(static_cast<Eigen::Index>(s.size()), d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Matrix e = unit(d, i, j);
      a.col(i * d + j) = apply_factor(e, 0, s).amps() - apply_factor(e, 1, s).amps();
    }
  }
  const auto svd = right_svd(a);
  const int rank = numerical_rank(svd.singularValues(), opt.rel_threshold);
  PairKernel out;
  out.dimension = d * d - rank;
  const Matrix& v = svd.matrixV();
  for (int k = rank; k < d * d; ++k) {
    Matrix b(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) b(i, j) = v(i * d + j, k);
    }
    out.basis.push_back(std::move(b));
  }
  return out;
}

// ---------------------------------------------------------------- spectra

bool Spectrum::contains(double value, double tol) const {
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (std::abs(eigenvalues[i] - value) <= tol) return true;
  }
  return false;
}

int Spectrum::multiplicity_of(double value, double tol) const {
  int m = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (std::abs(eigenvalues[i] - value) <= tol) ++m;
  }
  return m;
}

Spectrum group_eigenvalues(const RealVector& ascending, double group_tol) {
  Spectrum out;
  out.eigenvalues = ascending;
  for (Eigen::Index i = 0; i < ascending.size(); ++i) {
    if (!out.groups.empty() && std::abs(ascending[i] - out.groups.back().value) <= group_tol) {
      auto& g = out.groups.back();
      // running mean keeps the representative centred in the cluster
      g.value = (g.value * g.multiplicity + ascending[i]) / (g.multiplicity + 1);
      ++g.multiplicity;
    } else {
      out.groups.push_back({ascending[i], 1});
    }
  }
  return out;
}

Spectrum reduced_spectrum(const QuditState& s, int a, int b, double group_tol) {
  if (s.parties() < 2) throw InvalidArgument("two-body spectrum needs n >= 2");
  const int keep[] = {a, b};
  const DensityOperator rho = partial_trace(s, keep);
  return group_eigenvalues(rho.eigenvalues(), group_tol);
}

Spectrum two_body_spectrum(const QuditState& s, double group_tol) { return reduced_spectrum(s, 0, 1, group_tol); }

bool KernelDecomposition::ok() const {
  return kernel_dim == dim_q + dim_s_minus && kernel_projector_error <= 1e-9 && complement_projector_error <= 1e-9;
}

KernelDecomposition kernel_decomposition(const QuditState& s) {
  if (s.parties() < 2) throw InvalidArgument("kernel decomposition needs n >= 2");
  const int d = s.dim();
  const int keep[] = {0, 1};
  const Matrix rho = partial_trace(s, keep).matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  const RealVector& lambda = es.eigenvalues();
  const double top = std::max(lambda.cwiseAbs().maxCoeff(), 1e-300);
  Matrix pi_ker = Matrix::Zero(d * d, d * d);
  KernelDecomposition out;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] <= 1e-9 * top) {
      pi_ker += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
      ++out.kernel_dim;
    }
  }

  Matrix pi_qs = Matrix::Zero(d * d, d * d);
  Matrix pi_ps = Matrix::Zero(d * d, d * d);
  auto add = [d](Matrix& pi, std::initializer_list<std::pair<int, double>> entries) {
    Vector v = Vector::Zero(d * d);
    for (auto [idx, c] : entries) v[idx] += c;
    v.normalize();
    pi += v * v.adjoint();
  };
  const double h = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (std::abs(i - j) > 1) {
        add(pi_qs, {{i * d + j, 1.0}});
        ++out.dim_q;
      }
    }
  }
  for (int i = 1; i < d; ++i) {
    add(pi_qs, {{i * d + (i - 1), h}, {(i - 1) * d + i, -h}});
    ++out.dim_s_minus;
    add(pi_ps, {{i * d + (i - 1), h}, {(i - 1) * d + i, h}});
    ++out.dim_s_plus;
  }
  for (int i = 0; i < d; ++i) {
    add(pi_ps, {{i * d + i, 1.0}});
    ++out.dim_p;
  }
  const Matrix eye = Matrix::Identity(d * d, d * d);
  out.kernel_projector_error = (pi_ker - pi_qs).norm();
  out.complement_projector_error = ((eye - pi_ker) - pi_ps).norm();
  return out;
}

KernelDecomposition kernel_decomposition_check(const QuditState& s) {
  if (s.parties() != 5) throw PreconditionFailed("kernel decomposition check expects Psi_{5,d} (n = 5)");
  const QuditState ref = psi_nd(5, s.dim());
  const double overlap = std::norm(inner(ref, s));
  if (overlap < (1.0 - 1e-10) * ref.norm_squared() * s.norm_squared()) {
    throw PreconditionFailed("state is not proportional to Psi_{5,d}");
  }
  return kernel_decomposition(s);
}

Eigen::MatrixXd tridiagonal_matrix(int d) {
  if (d < 3) throw InvalidArgument("tridiagonal recurrence needs d >= 3");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  m(0, 0) = std::sqrt(15.0) * phi4_coefficient(d, 0);
  for (int k = 1; k < d; ++k) {
    m(k, k) = -4.0 * phi4_coefficient(d, k);
    m(k - 1, k) = m(k, k - 1) = phi4_coefficient(d, k);
  }
  return m;
}

RecurrenceReport tridiagonal_recurrence(int d) {
  if (d < 3) throw InvalidArgument("tridiagonal recurrence needs d >= 3");
  RecurrenceReport r;
  r.f.resize(static_cast<std::size_t>(d) + 1);
  r.f[0] = 1.0;
  r.f[1] = std::sqrt(15.0) * phi4_coefficient(d, 0);
  for (int k = 2; k <= d; ++k) {
    const double c = phi4_coefficient(d, k - 1);
    r.f[static_cast<std::size_t>(k)] = -4.0 * c * r.f[static_cast<std::size_t>(k - 1)] - c * c * r.f[static_cast<std::size_t>(k - 2)];
  }
  r.determinant = r.f.back();
  r.nonzero = std::abs(r.determinant) > 1e-12;
  r.monotone = true;
  for (int k = 1; k < d; ++k) {
    if (!(std::abs(r.f[static_cast<std::size_t>(k + 1)]) > std::abs(r.f[static_cast<std::size_t>(k)]))) r.monotone = false;
  }
  return r;
}

// ---------------------------------------------------------------- search

double symmetry_residual(const QuditState& s, const LocalOperator& op) {
  if (op.parties() != s.parties() || op.dim() != s.dim()) throw DimensionMismatch("operator and state shapes differ");
  if (s.is_zero()) throw ZeroState("symmetry_residual of the zero state");
  return (apply_local(op, s).amps() - s.amps()).norm() / s.norm();
}

double distance_from_identity(const LocalOperator& u) {
  double worst = 0.0;
  for (const auto& f : u.factors()) {
    const Complex tr = f.trace();
    const Complex phase = std::abs(tr) > 1e-300 ? tr / std::abs(tr) : Complex(1.0, 0.0);
    worst = std::max(worst, (f - phase * Matrix::Identity(f.rows(), f.cols())).norm());
  }
  return worst;
}

std::vector<SymmetryCandidate> heuristic_symmetry_search(const QuditState& s, const SearchOptions& opt) {
  if (s.is_zero()) throw ZeroState("heuristic search on the zero state");
  if (opt.restarts < 0) throw InvalidArgument("restarts must be >= 0");
  const int n = s.parties();
  const int d = s.dim();
  const double nsq = s.norm_squared();
  std::vector<Matrix> s_mats;
  for (int p = 0; p < n; ++p) {
    const int rows[] = {p};
    s_mats.push_back(matricize(s, rows));
  }

  std::vector<std::optional<SymmetryCandidate>> slots(static_cast<std::size_t>(opt.restarts));
  parallel_for(slots.size(), [&](std::size_t r) {
    Rng rng = make_rng(opt.seed, r);
    std::vector<Matrix> u;
    for (int p = 0; p < n; ++p) u.push_back(random_unitary(d, rng));
    double prev = -2.0 * nsq;
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
      for (int p = 0; p < n; ++p) {
        const int rows[] = {p};
        const Matrix t = matricize(apply_all_except(u, p, s), rows);
        // Re <s|u_p t> = Re Tr(u_p C), maximized by the polar factor of C^dagger.
        const Matrix c = t * s_mats[static_cast<std::size_t>(p)].adjoint();
        Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
        u[static_cast<std::size_t>(p)] = svd.matrixV() * svd.matrixU().adjoint();
      }
      const QuditState us = apply_all(u, s);
      const double value = inner(s, us).real();
      const double residual = (us.amps() - s.amps()).norm() / std::sqrt(nsq);
      if (residual < 1e-10 || value - prev < 1e-15 * nsq) break;
      prev = value;
    }
    LocalOperator op(u);
    const double residual = symmetry_residual(s, op);
    const double distance = distance_from_identity(op);
    if (residual < opt.residual_cut && distance > opt.distance_cut) {
      slots[r] = SymmetryCandidate{std::move(op), residual, distance, static_cast<int>(r)};
    }
  });

  std::vector<SymmetryCandidate> out;
  for (auto& slot : slots) {
    if (slot) out.push_back(std::move(*slot));
  }
  return out;
}

// ---------------------------------------------------------------- certificate

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::EvidenceTrivial: return "EvidenceTrivial";
    case Verdict::NontrivialFound: return "NontrivialFound";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

namespace {

QuditState family_state(const FamilyHint& hint) {
  switch (hint.family) {
    case Family::Psi: return psi_nd(hint.n, hint.d);
    case Family::Phi4: return phi_4d(hint.d);
    case Family::Phi6: return phi_6d(hint.d);
    case Family::Ghz: return ghz(hint.n, hint.d);
    case Family::Tripartite: return tripartite_state(tripartite_unitaries(hint.d));
    case Family::Dicke: break;
  }
  throw InvalidArgument("family hint has no reference state");
}

std::vector<SpectralCheck> spectral_checks(const QuditState& s, const std::optional<FamilyHint>& hint) {
  std::vector<SpectralCheck> checks;
  const Spectrum spec = two_body_spectrum(s);
  {
    const double sum = spec.eigenvalues.sum();
    const double dev = std::abs(sum - s.norm_squared()) / s.norm_squared();
    checks.push_back({"two-body trace equals norm^2", dev <= 1e-9, dev});
  }
  if (!hint || hint->family == Family::Dicke || hint->family == Family::Ghz || hint->family == Family::Tripartite) {
    return checks;
  }
  // Family formulas refer to the unnormalized literal state.
  const QuditState ref = family_state(*hint);
  if (ref.parties() != s.parties() || ref.dim() != s.dim()) {
    checks.push_back({"state shape matches family hint", false, 1.0});
    return checks;
  }
  const double scale = ref.norm_squared() / s.norm_squared();
  RealVector ev = spec.eigenvalues * scale;
  const Spectrum scaled = group_eigenvalues(ev);
  const double tol = 1e-8 * std::max(1.0, ev.cwiseAbs().maxCoeff());

  if (hint->family == Family::Psi) {
    const int n = hint->n;
    const int d = hint->d;
    const int k = *select_k(n);
    const double alpha = static_cast<double>(binomial(n - 1, k - 1) + binomial(n - 2, k) + 1);
    const double beta = static_cast<double>(binomial(n - 2, k) + binomial(n - 2, k - 2) + 1);
    const double gamma = static_cast<double>(binomial(n - 2, k - 1));
    checks.push_back({"alpha = beta + gamma", alpha == beta + gamma, std::abs(alpha - beta - gamma)});
    struct Expect {
      double value;
      int mult;
    };
    // Only a spectral decomposition when no two components differ in two sites.
    if (k < 3 || n - k < 3) return checks;
    std::vector<Expect> expect{{alpha, 2}, {beta, d - 2}, {2.0 * gamma, d - 1}, {0.0, d * d - 2 * d + 1}};
    double worst = 0.0;
    bool ok = true;
    for (const auto& e : expect) {
      int want = 0;
      for (const auto& f : expect) {
        if (std::abs(f.value - e.value) <= tol) want += f.mult;
      }
      const int got = scaled.multiplicity_of(e.value, tol);
      if (got != want) ok = false;
      worst = std::max(worst, static_cast<double>(std::abs(got - want)));
    }
    checks.push_back({"two-body spectrum alpha^2, beta^(d-2), (2 gamma)^(d-1), 0^rest", ok, worst});
  } else if (hint->family == Family::Phi4) {
    const auto kd = kernel_decomposition(s);
    checks.push_back({"kernel of rho12 is Q + S-", kd.ok(),
                      std::max(kd.kernel_projector_error, kd.complement_projector_error)});
    const auto rec = tridiagonal_recurrence(hint->d);
    checks.push_back({"tridiagonal determinant nonzero, |f(k)| increasing", rec.nonzero && rec.monotone,
                      std::abs(rec.determinant)});
  } else if (hint->family == Family::Phi6 && hint->d >= 4) {
    const double root = std::sqrt(881.0);
    const double values[] = {214.0 / 5.0, 33.0, 51.0, 0.4 * (41.0 + root), 0.4 * (41.0 - root)};
    double worst = 0.0;
    bool ok = true;
    for (double v : values) {
      double best = 1e300;
      for (Eigen::Index i = 0; i < ev.size(); ++i) best = std::min(best, std::abs(ev[i] - v));
      worst = std::max(worst, best);
      if (best > 1e-9 * std::max(1.0, v)) ok = false;
    }
    checks.push_back({"rho12 eigenvalues 214/5, 33, 51, (2/5)(41 +- sqrt 881)", ok, worst});
  }
  return checks;
}

}  // namespace

StabilizerCertificate certify_trivial_stabilizer(const QuditState& s, const std::optional<FamilyHint>& hint,
                                                 const SearchOptions& search) {
  StabilizerCertificate cert;
  cert.criticality_residual = criticality_residual(s);
  cert.lie_dimension = stabilizer_lie_dim(s);
  cert.pair_kernel_dimension = s.parties() >= 2 ? pair_condition_kernel(s).dimension : 0;
  if (hint && (hint->family == Family::Psi || hint->family == Family::Phi4 || hint->family == Family::Phi6)) {
    cert.diagonal_solution_count = count_diagonal_symmetries(build_exponent_system(hint->family, hint->n, hint->d));
  }
  if (s.parties() >= 2) cert.spectral_checks = spectral_checks(s, hint);
  cert.spectral_checks_passed =
      std::all_of(cert.spectral_checks.begin(), cert.spectral_checks.end(), [](const auto& c) { return c.passed; });
  cert.restarts = search.restarts;

  if (cert.criticality_residual > 1e-8) {
    cert.verdict = Verdict::Inconclusive;
    cert.reason = "input is not critical (residual " + std::to_string(cert.criticality_residual) + ")";
    return cert;
  }
  cert.heuristic_search_found = heuristic_symmetry_search(s, search);

  if (cert.lie_dimension > 0) {
    cert.verdict = Verdict::NontrivialFound;
    cert.reason = "continuous stabilizer of dimension " + std::to_string(cert.lie_dimension);
  } else if (!cert.heuristic_search_found.empty()) {
    cert.verdict = Verdict::NontrivialFound;
    cert.reason = "heuristic search found " + std::to_string(cert.heuristic_search_found.size()) + " symmetries";
  } else if (cert.pair_kernel_dimension != 1) {
    cert.verdict = Verdict::Inconclusive;
    cert.reason = "pair kernel dimension " + std::to_string(cert.pair_kernel_dimension) + " != 1";
  } else if (cert.diagonal_solution_count && *cert.diagonal_solution_count != 1) {
    cert.verdict = Verdict::Inconclusive;
    cert.reason = "diagonal phase system has " + std::to_string(*cert.diagonal_solution_count) + " solutions";
  } else if (!cert.spectral_checks_passed) {
    cert.verdict = Verdict::Inconclusive;
    cert.reason = "spectral check failed";
  } else {
    cert.verdict = Verdict::EvidenceTrivial;
    cert.reason = "numerical evidence only, not a proof";
  }
  return cert;
}

}  // namespace locclab
