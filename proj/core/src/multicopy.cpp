#include "locclab/multicopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "locclab/errors.hpp"
#include "locclab/transform.hpp"
#include "locclab/zoo.hpp"

namespace locclab {

double multicopy_lower_bound(double p, int k, int m) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("p must lie in [0, 1]");
  if (k < 1) throw InvalidArgument("k must be >= 1");
  if (m < 0) throw InvalidArgument("m must be >= 0");
  if (m > k) throw InvalidArgument("m must not exceed k");
  if (m == 0) return 1.0;
  if (p == 1.0) return 1.0;
  if (p == 0.0) return 0.0;
  double sum = 0.0;
  if (k <= 60) {
    for (int j = m; j <= k; ++j) {
      sum += static_cast<double>(binomial(k, j)) * std::pow(p, j) * std::pow(1.0 - p, k - j);
    }
  } else {
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    const double lk = std::lgamma(k + 1.0);
    for (int j = m; j <= k; ++j) {
      const double log_term = lk - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0) + j * lp + (k - j) * lq;
      sum += std::exp(log_term);
    }
  }
  return std::min(sum, 1.0);
}

double eisert_bound(const QuditState& psi, const QuditState& phi) {
  if (psi.parties() != 3 || phi.parties() != 3) throw InvalidArgument("the entropy bound needs tripartite states");
  if (psi.dim() != phi.dim()) throw DimensionMismatch("states differ in local dimension");
  double s_psi[3];
  double s_phi[3];
  for (int i = 0; i < 3; ++i) {
    const int keep[] = {i};
    s_psi[i] = von_neumann_entropy(partial_trace(psi, keep));
    s_phi[i] = von_neumann_entropy(partial_trace(phi, keep));
  }
  constexpr double kZero = 1e-12;
  if (s_phi[0] <= kZero && s_phi[1] <= kZero && s_phi[2] <= kZero) {
    throw InvalidArgument("target state is fully product; the entropy bound is undefined");
  }
  double best = -1.0;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int c = (a + 2) % 3;
    double term = std::numeric_limits<double>::infinity();
    if (s_phi[b] + s_phi[c] > kZero) term = std::min(term, s_psi[a] / (s_phi[b] + s_phi[c]));
    if (s_phi[b] > kZero) term = std::min(term, s_psi[b] / s_phi[b]);
    if (s_phi[c] > kZero) term = std::min(term, s_psi[c] / s_phi[c]);
    if (std::isfinite(term)) best = std::max(best, term);
  }
  return best;
}

RateReport rate_lower_bounds(const QuditState& psi, const QuditState& phi, const std::optional<LocalOperator>& h,
                             bool require_eisert) {
  if (std::abs(psi.norm() - 1.0) > 1e-9 || std::abs(phi.norm() - 1.0) > 1e-9) {
    throw NotNormalized("rate bounds need normalized states");
  }
  if (psi.parties() != phi.parties() || psi.dim() != phi.dim()) throw DimensionMismatch("states differ in shape");
  if (require_eisert && psi.parties() != 3) throw InvalidArgument("the entropy bound needs n = 3");
  RateReport rep;
  if (h) rep.pmax_bound = pmax(psi, *h).p_max;
  if (psi.parties() == 3) rep.eisert_bound = eisert_bound(psi, phi);
  if (!rep.pmax_bound && !rep.eisert_bound) throw InvalidArgument("no bound available: give h or a tripartite pair");
  rep.best = std::max(rep.pmax_bound.value_or(0.0), rep.eisert_bound.value_or(0.0));
  return rep;
}

}  // namespace locclab
