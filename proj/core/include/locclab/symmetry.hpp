#pragma once

// Local symmetry detection: Lie-algebra kernels, diagonal phase systems,
// two-body spectra, a heuristic numerical search, and the combined
// trivial-stabilizer evidence certificate.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locclab/tensor.hpp"
#include "locclab/zoo.hpp"

namespace locclab {

// ---------------------------------------------------------------- phases

/// Row a means prod_i u_i^{a_i} = 1, every u_i a modulus-th root of unity.
struct ExponentSystem {
  int num_vars = 0;
  int modulus = 1;
  std::vector<std::vector<int>> equations;

  void validate() const;
};

/// u_i^n = 1 (all i), u_i^k u_{i-1}^(n-k) = 1 (i >= 1). Any k, so gcd > 1
/// control systems can be built too.
ExponentSystem psi_phase_system(int n, int k, int d);
/// Family systems: psi (modulus n, k = select_k(n)), phi4 (modulus 4, n must
/// be 4), phi6 (modulus 6, n must be 6).
ExponentSystem build_exponent_system(Family family, int n, int d);

struct DiagonalCount {
  std::int64_t solutions = 0;   // raw assignments
  std::int64_t phase_orbit = 0; // |{w : w^(row sum) = 1 for every row}|
  std::int64_t count = 0;       // solutions / phase_orbit
};
/// Brute-force enumeration over modulus^num_vars assignments. Throws
/// BudgetExceeded above `budget` candidates.
DiagonalCount enumerate_diagonal_symmetries(const ExponentSystem& sys, std::int64_t budget = 10'000'000);
std::int64_t count_diagonal_symmetries(const ExponentSystem& sys, std::int64_t budget = 10'000'000);

// ---------------------------------------------------------------- kernels

struct KernelOptions {
  double rel_threshold = 1e-9;  // singular values below rel * sigma_max count as zero
};

/// Complex dimension of {(X_1..X_n) traceless : sum_i X_i^{(i)} |s> = 0}.
int stabilizer_lie_dim(const QuditState& s, const KernelOptions& opt = {});

struct PairKernel {
  int dimension = 0;
  std::vector<Matrix> basis;  // orthonormal in the Frobenius inner product
  /// dimension == 1 and the basis element is proportional to I.
  bool identity_only() const;
};
/// {B : (B (x) I ...)|s> = (I (x) B (x) I ...)|s>} acting on parties 0 and 1.
PairKernel pair_condition_kernel(const QuditState& s, const KernelOptions& opt = {});

// ---------------------------------------------------------------- spectra

struct EigenGroup {
  double value = 0.0;
  int multiplicity = 0;
};
struct Spectrum {
  RealVector eigenvalues;  // ascending
  std::vector<EigenGroup> groups;
  bool contains(double value, double tol) const;
  int multiplicity_of(double value, double tol) const;
};

/// Spectrum of rho^(a,b) of the unnormalized state; groups merge eigenvalues
/// within `group_tol`.
Spectrum reduced_spectrum(const QuditState& s, int a, int b, double group_tol = 1e-8);
/// rho^(1,2): parties 0 and 1.
Spectrum two_body_spectrum(const QuditState& s, double group_tol = 1e-8);
Spectrum group_eigenvalues(const RealVector& ascending, double group_tol = 1e-8);

struct KernelDecomposition {
  int kernel_dim = 0;
  int dim_q = 0, dim_s_minus = 0, dim_p = 0, dim_s_plus = 0;
  double kernel_projector_error = 0.0;      // ||Pi_ker - Pi_{Q+S-}||_F
  double complement_projector_error = 0.0;  // ||Pi_ker^perp - Pi_{P+S+}||_F
  bool ok() const;
};
/// Compares the kernel of rho^(1,2) with Q (+) S_- and its complement with
/// P (+) S_+. No family check.
KernelDecomposition kernel_decomposition(const QuditState& s);
/// Same, after checking that s is proportional to psi_nd(5, d).
KernelDecomposition kernel_decomposition_check(const QuditState& s);

struct RecurrenceReport {
  std::vector<double> f;  // f(0) .. f(d)
  double determinant = 0.0;
  bool nonzero = false;
  bool monotone = false;  // |f(1)| < |f(2)| < ... < |f(d)|
};
RecurrenceReport tridiagonal_recurrence(int d);
/// The tridiagonal matrix whose determinant is f(d).
Eigen::MatrixXd tridiagonal_matrix(int d);

// ---------------------------------------------------------------- search

/// ||op s - s|| / ||s||.
double symmetry_residual(const QuditState& s, const LocalOperator& op);

/// max_i ||u_i - (tr u_i/|tr u_i|) I||_F.
double distance_from_identity(const LocalOperator& u);

struct SymmetryCandidate {
  LocalOperator op;
  double residual = 0.0;
  double distance = 0.0;
  int restart = 0;
};

struct SearchOptions {
  int restarts = 50;
  std::uint64_t seed = 0;
  int max_sweeps = 2000;
  double residual_cut = 1e-6;
  double distance_cut = 1e-4;
};
/// Maximizes Re <s|u|s> over local unitaries from random starts with
/// per-party polar updates. Returns minima with small residual that are
/// not the identity.
std::vector<SymmetryCandidate> heuristic_symmetry_search(const QuditState& s, const SearchOptions& opt);

// ---------------------------------------------------------------- certificate

enum class Verdict { EvidenceTrivial, NontrivialFound, Inconclusive };
const char* verdict_name(Verdict v);

struct FamilyHint {
  Family family;
  int n = 0;
  int d = 0;
};

struct SpectralCheck {
  std::string name;
  bool passed = false;
  double deviation = 0.0;
};

struct StabilizerCertificate {
  double criticality_residual = 0.0;
  int lie_dimension = 0;
  int pair_kernel_dimension = 0;
  std::optional<std::int64_t> diagonal_solution_count;
  std::vector<SpectralCheck> spectral_checks;
  bool spectral_checks_passed = true;
  std::vector<SymmetryCandidate> heuristic_search_found;
  int restarts = 0;
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
};

/// Numerical evidence only. A non-critical input yields Inconclusive.
StabilizerCertificate certify_trivial_stabilizer(const QuditState& s, const std::optional<FamilyHint>& hint,
                                                 const SearchOptions& search = {});

}  // namespace locclab
