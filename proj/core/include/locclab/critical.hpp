#pragma once

// Criticality tests and the norm-minimizing normal form.

#include <vector>

#include "locclab/tensor.hpp"

namespace locclab {

struct CriticalityCheck {
  bool critical = false;
  double residual = 0.0;  // max_i ||rho_i - I/d||_F on the normalized state
};

/// One-party reductions rho_0 .. rho_{n-1} of s (unnormalized, trace = norm^2).
std::vector<Matrix> one_party_reductions(const QuditState& s);

/// max_i ||rho_i - (Tr rho_i / d) I||_F for the normalized state.
double criticality_residual(const QuditState& s);
CriticalityCheck is_critical(const QuditState& s, double tol = 1e-10);

/// max |<s|X|s>| / <s|s> over the traceless Hermitian generators
/// (E_ab + E_ba)/2, i(E_ab - E_ba)/2, (E_aa - E_{a+1,a+1})/2 at every party.
double lie_criticality_residual(const QuditState& s);

/// Every one-party reduction has eigenvalues > 1e-10 Tr(rho_i).
bool is_fully_entangled(const QuditState& s);

enum class NormalFormStatus { Converged, NotConverged, SingularReduction };

struct NormalFormResult {
  NormalFormStatus status = NormalFormStatus::NotConverged;
  QuditState critical;        // normalized final iterate
  LocalOperator accumulated;  // det-1 factors: s ∝ accumulated * critical
  int iterations = 0;         // completed sweeps
  double residual = 0.0;
  std::vector<double> norm_trace;  // norm of the unnormalized iterate, before the first sweep and after each sweep
  double scale = 0.0;              // s = scale * accumulated * critical

  bool converged() const { return status == NormalFormStatus::Converged; }
};

/// Cyclic local filtering sweep. Never throws on non-convergence or on a
/// singular reduction; the status field carries the outcome.
NormalFormResult normal_form(const QuditState& s, double tol = 1e-10, int max_iter = 10000);

const char* status_name(NormalFormStatus status);

}  // namespace locclab
