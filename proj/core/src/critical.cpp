#include "locclab/critical.hpp"

#include <algorithm>
#include <cmath>

#include "locclab/errors.hpp"

namespace locclab {
namespace {

Matrix reduction(const QuditState& s, int party) {
  const int rows[] = {party};
  const Matrix m = matricize(s, rows);
  Matrix rho = m * m.adjoint();
  return 0.5 * (rho + rho.adjoint());
}

void require_nonzero(const QuditState& s) {
  if (s.is_zero()) throw ZeroState("state is the zero vector");
}

}  // namespace

std::vector<Matrix> one_party_reductions(const QuditState& s) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(s.parties()));
  for (int p = 0; p < s.parties(); ++p) out.push_back(reduction(s, p));
  return out;
}

double criticality_residual(const QuditState& s) {
  require_nonzero(s);
  const double nsq = s.norm_squared();
  const int d = s.dim();
  double worst = 0.0;
  for (const auto& rho : one_party_reductions(s)) {
    const Matrix r = rho / nsq;
    const Matrix dev = r - (r.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
    worst = std::max(worst, dev.norm());
  }
  return worst;
}

CriticalityCheck is_critical(const QuditState& s, double tol) {
  const double r = criticality_residual(s);
  return {r <= tol, r};
}

double lie_criticality_residual(const QuditState& s) {
  require_nonzero(s);
  const double nsq = s.norm_squared();
  const int d = s.dim();
  double worst = 0.0;
  for (const auto& rho : one_party_reductions(s)) {
    // <s|X|s> = Tr(rho X) with rho = Tr_rest |s><s|.
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        const Complex off = rho(b, a);  // Tr(rho E_ab) = rho_ba
        worst = std::max(worst, std::abs(off.real()) / nsq);  // (E_ab + E_ba)/2
        worst = std::max(worst, std::abs(off.imag()) / nsq);  // i(E_ab - E_ba)/2
      }
      if (a + 1 < d) worst = std::max(worst, 0.5 * std::abs(rho(a, a).real() - rho(a + 1, a + 1).real()) / nsq);
    }
  }
  return worst;
}

bool is_fully_entangled(const QuditState& s) {
  require_nonzero(s);
  for (const auto& rho : one_party_reductions(s)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 1e-10 * rho.trace().real()) return false;
  }
  return true;
}

NormalFormResult normal_form(const QuditState& s, double tol, int max_iter) {
  require_nonzero(s);
  if (!(tol > 0.0)) throw InvalidArgument("normal_form tolerance must be positive");
  if (max_iter < 0) throw InvalidArgument("normal_form max_iter must be >= 0");
  const int n = s.parties();
  const int d = s.dim();
  QuditState x = s;
  std::vector<Matrix> acc(static_cast<std::size_t>(n), Matrix::Identity(d, d));
  std::vector<double> trace{x.norm()};

  auto finish = [&](NormalFormStatus status, int iterations, double residual) {
    const double scale = x.norm();
    return NormalFormResult{status,          scale > 0.0 ? x.scaled(1.0 / scale) : x, LocalOperator(acc), iterations, residual,
                            std::move(trace), scale};
  };

  double residual = criticality_residual(x);
  if (residual <= tol) return finish(NormalFormStatus::Converged, 0, residual);
  for (int p = 0; p < n; ++p) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(reduction(x, p) / x.norm_squared(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < 1e-14) return finish(NormalFormStatus::SingularReduction, 0, residual);
  }

  for (int it = 1; it <= max_iter; ++it) {
    for (int p = 0; p < n; ++p) {
      const Matrix rho = reduction(x, p) / x.norm_squared();
      Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
      const RealVector& lambda = es.eigenvalues();
      // The input was full rank, so a collapsing reduction here means the
      // norm is running off to zero.
      if (lambda.minCoeff() < 1e-14) {
        return finish(NormalFormStatus::NotConverged, it - 1, criticality_residual(x));
      }
      // det(rho)^(1/(2d)) through the log-determinant.
      const double c = std::exp(lambda.array().log().sum() / (2.0 * d));
      const Matrix& v = es.eigenvectors();
      const Matrix g = c * v * lambda.array().rsqrt().matrix().cast<Complex>().asDiagonal() * v.adjoint();
      const Matrix ginv = (1.0 / c) * v * lambda.array().sqrt().matrix().cast<Complex>().asDiagonal() * v.adjoint();
      x = apply_factor(g, p, x);
      acc[static_cast<std::size_t>(p)] = acc[static_cast<std::size_t>(p)] * ginv;
    }
    trace.push_back(x.norm());
    if (x.is_zero()) return finish(NormalFormStatus::NotConverged, it, 1.0);
    residual = criticality_residual(x);
    if (residual <= tol) return finish(NormalFormStatus::Converged, it, residual);
  }
  return finish(NormalFormStatus::NotConverged, max_iter, residual);
}

const char* status_name(NormalFormStatus status) {
  switch (status) {
    case NormalFormStatus::Converged: return "Converged";
    case NormalFormStatus::NotConverged: return "NotConverged";
    case NormalFormStatus::SingularReduction: return "SingularReduction";
  }
  return "Unknown";
}

}  // namespace locclab
