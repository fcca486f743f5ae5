#pragma once

// Dense multiqudit states and local operators.
//
// Index convention (fixed everywhere, including the JSON formats): the
// amplitude of |i_0 i_1 ... i_{n-1}> lives at I = sum_p i_p * d^(n-1-p),
// i.e. party 0 is the most significant digit. Parties are 0-based in the
// C++ API.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace locclab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Pure state of `parties` qudits of local dimension `dim`. Stored
/// unnormalized; no operation normalizes implicitly unless documented.
class QuditState {
 public:
  QuditState(int parties, int dim, Vector amps);

  static QuditState zero(int parties, int dim);
  /// Computational basis state |digits[0] ... digits[n-1]>.
  static QuditState basis(int dim, std::span<const int> digits);

  int parties() const noexcept { return parties_; }
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amps() const noexcept { return amps_; }
  Complex amp(std::span<const int> digits) const;

  double norm_squared() const { return amps_.squaredNorm(); }
  double norm() const { return amps_.norm(); }
  bool is_zero() const { return amps_.squaredNorm() == 0.0; }

  /// Unit-norm copy. Throws ZeroState on the zero vector.
  QuditState normalized() const;
  QuditState scaled(Complex factor) const;

  QuditState& operator+=(const QuditState& other);
  QuditState& operator-=(const QuditState& other);
  friend QuditState operator+(QuditState a, const QuditState& b) { return a += b; }
  friend QuditState operator-(QuditState a, const QuditState& b) { return a -= b; }
  friend QuditState operator*(Complex c, const QuditState& s) { return s.scaled(c); }
  friend QuditState operator*(double c, const QuditState& s) { return s.scaled(Complex(c, 0.0)); }

 private:
  int parties_;
  int dim_;
  Vector amps_;
};

/// Tensor product g_0 (x) ... (x) g_{n-1} of d x d factors.
class LocalOperator {
 public:
  explicit LocalOperator(std::vector<Matrix> factors);

  static LocalOperator identity(int parties, int dim);
  /// u (x) u (x) ... (x) u.
  static LocalOperator uniform(int parties, const Matrix& factor);

  int parties() const noexcept { return static_cast<int>(factors_.size()); }
  int dim() const noexcept { return static_cast<int>(factors_.front().rows()); }
  const Matrix& factor(int party) const { return factors_.at(static_cast<std::size_t>(party)); }
  const std::vector<Matrix>& factors() const noexcept { return factors_; }

  LocalOperator adjoint() const;
  /// Factorwise inverse; throws SingularOperator.
  LocalOperator inverse() const;
  /// Factorwise product (*this) * rhs.
  LocalOperator operator*(const LocalOperator& rhs) const;
  /// Copy with factor `party` multiplied by the scalar c.
  LocalOperator scaled(int party, Complex c) const;

  /// factor^dagger factor == I within `tol` per entry for every factor.
  bool is_unitary(double tol = 1e-10) const;
  /// Dense d^n x d^n Kronecker expansion (small sizes only).
  Matrix expand() const;

 private:
  std::vector<Matrix> factors_;
};

/// Reduced state on an ordered subset of parties. `mat` is indexed with the
/// same most-significant-first convention over `parties`.
class DensityOperator {
 public:
  /// Validates shape and Hermiticity (1e-12 entrywise).
  DensityOperator(std::vector<int> parties, int dim, Matrix mat);

  const std::vector<int>& parties() const noexcept { return parties_; }
  int dim() const noexcept { return dim_; }
  const Matrix& matrix() const noexcept { return mat_; }
  double trace() const { return mat_.trace().real(); }
  /// Ascending eigenvalues.
  RealVector eigenvalues() const;
  /// Eigenvalues >= -1e-10 (scaled by the trace when it exceeds 1).
  bool is_positive_semidefinite() const;
  DensityOperator normalized() const;

 private:
  std::vector<int> parties_;
  int dim_;
  Matrix mat_;
};

/// Applies the d x d matrix `factor` to party `party`.
QuditState apply_factor(const Matrix& factor, int party, const QuditState& s);
QuditState apply_local(const LocalOperator& op, const QuditState& s);

/// Reshapes the amplitudes into a d^|rows| x d^(n-|rows|) matrix. Row
/// digits follow the order in `rows`; column digits are the remaining
/// parties in increasing order.
Matrix matricize(const QuditState& s, std::span<const int> rows);

/// Tr_{rest} |s><s|; trace equals norm^2(s). Throws on empty `keep`.
DensityOperator partial_trace(const QuditState& s, std::span<const int> keep);

/// P_sigma |i_0..i_{n-1}> = |i_{sigma^-1(0)} .. i_{sigma^-1(n-1)}>: the digit
/// of party p moves to position sigma[p]. P_sigma P_tau = P_{sigma tau}.
QuditState permute_parties(const QuditState& s, std::span<const int> sigma);

/// <a|b>, conjugate-linear in a.
Complex inner(const QuditState& a, const QuditState& b);

/// Number of singular values of matricize(s, side) above `tol`.
int schmidt_rank(const QuditState& s, std::span<const int> side, double tol = 1e-10);

/// -sum lambda log2 lambda in bits; eigenvalues <= 1e-14 are dropped.
/// Requires trace 1 within 1e-9 (throws NotNormalized).
double von_neumann_entropy(const DensityOperator& rho);

/// Tensor product of two states (parties of `a` first).
QuditState tensor(const QuditState& a, const QuditState& b);

}  // namespace locclab
