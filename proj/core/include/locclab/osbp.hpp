#pragma once

// One-successful-branch protocol: per-party two-outcome measurements whose
// all-success branch maps psi to h psi.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "locclab/tensor.hpp"

namespace locclab {

struct OsbpProtocol {
  std::vector<Matrix> success;  // A_i = c_i h_i
  std::vector<Matrix> failure;  // B_i = sqrt(I - c_i^2 H_i)
  std::vector<double> scale_sq; // c_i^2 = 1 / lambda_max(H_i)
  double completeness_residual = 0.0;  // max_i ||A^dag A + B^dag B - I||_max

  int parties() const { return static_cast<int>(success.size()); }
};

/// Requires ||h psi|| = 1 within 1e-9 and invertible factors.
OsbpProtocol build_osbp(const LocalOperator& h, const QuditState& psi);

/// ||(x)_i A_i psi||^2.
double exact_success_probability(const OsbpProtocol& proto, const QuditState& psi);

/// Post-measurement state for a full outcome string (true = success at that
/// party), normalized; throws ZeroState for a probability-zero branch.
QuditState branch_state(const OsbpProtocol& proto, const QuditState& psi, const std::vector<bool>& outcomes);

struct SimulationResult {
  std::int64_t shots = 0;
  std::int64_t successes = 0;
  double rate = 0.0;
  double exact = 0.0;
  std::map<std::string, std::int64_t> branch_tallies;  // "AABAB"-style keys
};

/// Party-by-party Born sampling. Shots are split into fixed chunks with
/// derived seeds, so the result does not depend on the thread count.
SimulationResult simulate(const OsbpProtocol& proto, const QuditState& psi, std::int64_t shots, std::uint64_t seed);

}  // namespace locclab
