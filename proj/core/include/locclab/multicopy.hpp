#pragma once

// Multi-copy success bound and asymptotic rate lower bounds.

#include <optional>

#include "locclab/tensor.hpp"

namespace locclab {

/// sum_{j=m}^{k} C(k,j) p^j (1-p)^(k-j). Log-space terms for k > 60.
double multicopy_lower_bound(double p, int k, int m);

struct RateReport {
  std::optional<double> pmax_bound;
  std::optional<double> eisert_bound;
  double best = 0.0;
};

/// One-vs-rest entropy bound for tripartite states (bits). Ratios with a zero
/// target entropy are dropped; a fully product target is rejected.
double eisert_bound(const QuditState& psi, const QuditState& phi);

/// pmax bound when h is given; Eisert bound when n = 3 (required when
/// `require_eisert`). At least one bound must be available.
RateReport rate_lower_bounds(const QuditState& psi, const QuditState& phi, const std::optional<LocalOperator>& h,
                             bool require_eisert = false);

}  // namespace locclab
