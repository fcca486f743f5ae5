#pragma once

// Conversion decisions: optimal probability, SEP feasibility, LU equivalence.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locclab/critical.hpp"
#include "locclab/symmetry.hpp"
#include "locclab/tensor.hpp"

namespace locclab {

struct ConversionReport {
  double p_max = 0.0;
  double lambda_max = 0.0;
  bool deterministic = false;
  std::vector<double> factor_lambda_max;  // lambda_max(h_i^dag h_i)
  std::optional<LocalOperator> lu_witness;
};

/// p_max = 1 / prod_i lambda_max(h_i^dag h_i). Requires ||psi|| = 1 and
/// ||h psi|| = 1 within 1e-9. Without trivial-stabilizer evidence for psi the
/// value is a lower bound.
ConversionReport pmax(const QuditState& psi, const LocalOperator& h);

/// Rescales h by a positive scalar (on party 0) so that ||h psi|| = ||psi||.
LocalOperator normalize_filter(const LocalOperator& h, const QuditState& psi);

// ---------------------------------------------------------------- SEP

struct SepInstance {
  LocalOperator h_factors;                 // H = (x)_i H_i, each Hermitian PD
  std::vector<LocalOperator> symmetries;   // S_k
  double r = 1.0;

  void validate() const;
};

/// ||sum_k p_k S_k^dag H S_k - r I||_F on the full space (d^n <= 1024).
double sep_residual(const SepInstance& inst, const std::vector<double>& p);

struct SepResult {
  bool feasible = false;
  std::vector<double> p;        // certificate when feasible, least-squares point otherwise
  double residual = 0.0;        // sep_residual at p
  double affine_residual = 0.0; // residual of the unconstrained-sign optimum
  std::string method;           // "vertex" or "simplex"
};

struct SepOptions {
  double tol = 1e-9;
  bool force_simplex = false;
  bool force_vertex = false;
};
SepResult sep_feasible(const SepInstance& inst, const SepOptions& opt = {});

// ---------------------------------------------------------------- LU

/// g^dag g = h^dag h factorwise after unit-determinant balancing, plus equal
/// global scalars.
bool lu_equiv_same_seed(const LocalOperator& g, const LocalOperator& h, double tol = 1e-9);

struct AlignmentOptions {
  int restarts = 100;
  std::uint64_t seed = 0;
  int max_sweeps = 1000;
};
struct Alignment {
  LocalOperator u;  // a ≈ u b with <a|u b> real positive
  double overlap = 0.0;
  int restart = 0;
};
/// Local unitary maximizing |<a|u b>|^2 / (|a|^2 |b|^2). Restart 0 starts
/// at the identity. std::nullopt means the budget ran out (not a "no").
std::optional<Alignment> find_lu_alignment(const QuditState& a, const QuditState& b, const AlignmentOptions& opt = {});

enum class Decision { True, False, Undecided };
const char* decision_name(Decision d);

struct LuEquivResult {
  Decision decision = Decision::Undecided;
  std::string reason;
  std::optional<LocalOperator> witness;  // witness * phi ≈ psi
  double witness_residual = 0.0;
  double factor_mismatch = 0.0;
};

struct LuEquivOptions {
  double tol = 1e-10;
  int max_iter = 10000;
  AlignmentOptions alignment{};
};

/// Normal-form based LU test. Sound: True carries a verified witness, False
/// is returned only on a spectral mismatch or a factor mismatch with a
/// trivial continuous stabilizer; otherwise Undecided.
LuEquivResult lu_equiv_states(const QuditState& psi, const QuditState& phi, const LuEquivOptions& opt = {});

/// Theorem-level wrapper: requires an EvidenceTrivial certificate for psi.
LuEquivResult deterministic_convertible(const QuditState& psi, const QuditState& phi,
                                        const StabilizerCertificate& certificate, const LuEquivOptions& opt = {});

}  // namespace locclab
