#include "locclab/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "locclab/config.hpp"
#include "locclab/errors.hpp"

namespace locclab {
namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

void check_party_subset(std::span<const int> parties, int n, bool allow_empty) {
  if (!allow_empty && parties.empty()) throw InvalidArgument("party subset must be nonempty");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int p : parties) {
    if (p < 0 || p >= n) {
      throw InvalidArgument("party index " + std::to_string(p) + " out of range for n=" +
                            std::to_string(n));
    }
    if (seen[static_cast<std::size_t>(p)]) throw InvalidArgument("duplicate party index");
    seen[static_cast<std::size_t>(p)] = true;
  }
}

}  // namespace

// ---------------------------------------------------------------- QuditState

QuditState::QuditState(int parties, int dim, Vector amps)
    : parties_(parties), dim_(dim), amps_(std::move(amps)) {
  const std::size_t expected = checked_dimension(parties, dim);
  if (static_cast<std::size_t>(amps_.size()) != expected) {
    throw DimensionMismatch("amplitude count " + std::to_string(amps_.size()) +
                            " != d^n = " + std::to_string(expected));
  }
  if (!amps_.allFinite()) throw InvalidArgument("amplitudes must be finite");
}

QuditState QuditState::zero(int parties, int dim) {
  const std::size_t size = checked_dimension(parties, dim);
  return QuditState(parties, dim, Vector::Zero(static_cast<Eigen::Index>(size)));
}

QuditState QuditState::basis(int dim, std::span<const int> digits) {
  const int n = static_cast<int>(digits.size());
  QuditState s = zero(n, dim);
  std::size_t index = 0;
  for (int digit : digits) {
    if (digit < 0 || digit >= dim) throw InvalidArgument("basis digit out of range");
    index = index * static_cast<std::size_t>(dim) + static_cast<std::size_t>(digit);
  }
  s.amps_[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

Complex QuditState::amp(std::span<const int> digits) const {
  if (static_cast<int>(digits.size()) != parties_) throw DimensionMismatch("digit count != n");
  std::size_t index = 0;
  for (int digit : digits) {
    if (digit < 0 || digit >= dim_) throw InvalidArgument("basis digit out of range");
    index = index * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(digit);
  }
  return amps_[static_cast<Eigen::Index>(index)];
}

QuditState QuditState::normalized() const {
  const double nrm = norm();
  if (nrm == 0.0) throw ZeroState("cannot normalize the zero state");
  return QuditState(parties_, dim_, amps_ / nrm);
}

QuditState QuditState::scaled(Complex factor) const {
  return QuditState(parties_, dim_, amps_ * factor);
}

QuditState& QuditState::operator+=(const QuditState& other) {
  if (other.parties_ != parties_ || other.dim_ != dim_) throw DimensionMismatch("state shapes differ");
  amps_ += other.amps_;
  return *this;
}

QuditState& QuditState::operator-=(const QuditState& other) {
  if (other.parties_ != parties_ || other.dim_ != dim_) throw DimensionMismatch("state shapes differ");
  amps_ -= other.amps_;
  return *this;
}

// ------------------------------------------------------------- LocalOperator

LocalOperator::LocalOperator(std::vector<Matrix> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidArgument("local operator needs at least one factor");
  const Eigen::Index d = factors_.front().rows();
  if (d < 2) throw InvalidArgument("local dimension must be >= 2");
  for (const auto& f : factors_) {
    if (f.rows() != d || f.cols() != d) throw DimensionMismatch("every factor must be d x d");
    if (!f.allFinite()) throw InvalidArgument("factor entries must be finite");
  }
}

LocalOperator LocalOperator::identity(int parties, int dim) {
  if (parties < 1 || dim < 2) throw InvalidArgument("identity needs n >= 1, d >= 2");
  return LocalOperator(std::vector<Matrix>(static_cast<std::size_t>(parties), Matrix::Identity(dim, dim)));
}

LocalOperator LocalOperator::uniform(int parties, const Matrix& factor) {
  if (parties < 1) throw InvalidArgument("uniform operator needs n >= 1");
  return LocalOperator(std::vector<Matrix>(static_cast<std::size_t>(parties), factor));
}

LocalOperator LocalOperator::adjoint() const {
  std::vector<Matrix> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.adjoint());
  return LocalOperator(std::move(out));
}

LocalOperator LocalOperator::inverse() const {
  std::vector<Matrix> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) {
    Eigen::FullPivLU<Matrix> lu(f);
    if (!lu.isInvertible()) throw SingularOperator("local factor is singular");
    out.push_back(lu.inverse());
  }
  return LocalOperator(std::move(out));
}

LocalOperator LocalOperator::operator*(const LocalOperator& rhs) const {
  if (rhs.parties() != parties() || rhs.dim() != dim()) throw DimensionMismatch("operator shapes differ");
  std::vector<Matrix> out;
  out.reserve(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) out.push_back(factors_[i] * rhs.factors_[i]);
  return LocalOperator(std::move(out));
}

LocalOperator LocalOperator::scaled(int party, Complex c) const {
  auto out = factors_;
  out.at(static_cast<std::size_t>(party)) *= c;
  return LocalOperator(std::move(out));
}

bool LocalOperator::is_unitary(double tol) const {
  for (const auto& f : factors_) {
    const Matrix defect = f.adjoint() * f - Matrix::Identity(f.rows(), f.cols());
    if (defect.cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

Matrix LocalOperator::expand() const {
  const std::size_t total = checked_dimension(parties(), dim());
  if (total > 4096) throw SizeCapExceeded("dense expansion limited to d^n <= 4096");
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& f : factors_) {
    Matrix next(out.rows() * f.rows(), out.cols() * f.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = out(i, j) * f;
      }
    }
    out = std::move(next);
  }
  return out;
}

// ----------------------------------------------------------- DensityOperator

DensityOperator::DensityOperator(std::vector<int> parties, int dim, Matrix mat)
    : parties_(std::move(parties)), dim_(dim), mat_(std::move(mat)) {
  if (parties_.empty()) throw InvalidArgument("density operator needs a nonempty party set");
  const std::size_t expected = ipow(dim_, static_cast<int>(parties_.size()));
  if (static_cast<std::size_t>(mat_.rows()) != expected || mat_.rows() != mat_.cols()) {
    throw DimensionMismatch("density matrix must be d^|parties| square");
  }
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidArgument("density matrix is not Hermitian within 1e-12");
  }
}

RealVector DensityOperator::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(mat_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

bool DensityOperator::is_positive_semidefinite() const {
  const double scale = std::max(1.0, std::abs(trace()));
  return eigenvalues().minCoeff() >= -1e-10 * scale;
}

DensityOperator DensityOperator::normalized() const {
  const double tr = trace();
  if (tr <= 0.0) throw ZeroState("density operator with non-positive trace");
  return DensityOperator(parties_, dim_, mat_ / tr);
}

// ---------------------------------------------------------------- operations

QuditState apply_factor(const Matrix& factor, int party, const QuditState& s) {
  const int n = s.parties();
  const int d = s.dim();
  if (party < 0 || party >= n) throw InvalidArgument("party index out of range");
  if (factor.rows() != d || factor.cols() != d) throw DimensionMismatch("factor must be d x d");
  const std::size_t left = ipow(d, party);
  const std::size_t right = ipow(d, n - 1 - party);
  const std::size_t block = static_cast<std::size_t>(d) * right;
  Vector out(s.amps().size());
  for (std::size_t l = 0; l < left; ++l) {
    Eigen::Map<const RowMajorMatrix> in(s.amps().data() + l * block, d, static_cast<Eigen::Index>(right));
    Eigen::Map<RowMajorMatrix> dst(out.data() + l * block, d, static_cast<Eigen::Index>(right));
    dst.noalias() = factor * in;
  }
  return QuditState(n, d, std::move(out));
}

QuditState apply_local(const LocalOperator& op, const QuditState& s) {
  if (op.parties() != s.parties() || op.dim() != s.dim()) {
    throw DimensionMismatch("operator acts on n=" + std::to_string(op.parties()) + ", d=" +
                            std::to_string(op.dim()) + " but state has n=" + std::to_string(s.parties()) +
                            ", d=" + std::to_string(s.dim()));
  }
  QuditState out = s;
  const Matrix eye = Matrix::Identity(s.dim(), s.dim());
  for (int p = 0; p < s.parties(); ++p) {
    if (op.factor(p) == eye) continue;
    out = apply_factor(op.factor(p), p, out);
  }
  return out;
}

Matrix matricize(const QuditState& s, std::span<const int> rows) {
  const int n = s.parties();
  const int d = s.dim();
  check_party_subset(rows, n, true);
  std::vector<int> cols;
  std::vector<bool> in_rows(static_cast<std::size_t>(n), false);
  for (int p : rows) in_rows[static_cast<std::size_t>(p)] = true;
  for (int p = 0; p < n; ++p) {
    if (!in_rows[static_cast<std::size_t>(p)]) cols.push_back(p);
  }
  const auto nrows = static_cast<Eigen::Index>(ipow(d, static_cast<int>(rows.size())));
  const auto ncols = static_cast<Eigen::Index>(ipow(d, static_cast<int>(cols.size())));

  // Stride of each party's digit in the row or column index.
  std::vector<std::size_t> row_stride(static_cast<std::size_t>(n), 0);
  std::vector<std::size_t> col_stride(static_cast<std::size_t>(n), 0);
  std::size_t stride = 1;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    row_stride[static_cast<std::size_t>(*it)] = stride;
    stride *= static_cast<std::size_t>(d);
  }
  stride = 1;
  for (auto it = cols.rbegin(); it != cols.rend(); ++it) {
    col_stride[static_cast<std::size_t>(*it)] = stride;
    stride *= static_cast<std::size_t>(d);
  }

  Matrix out(nrows, ncols);
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  std::size_t r = 0;
  std::size_t c = 0;
  for (Eigen::Index flat = 0; flat < s.amps().size(); ++flat) {
    out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s.amps()[flat];
    // Odometer increment from the least significant party.
    for (int p = n - 1; p >= 0; --p) {
      const auto up = static_cast<std::size_t>(p);
      if (++digits[up] < d) {
        r += row_stride[up];
        c += col_stride[up];
        break;
      }
      digits[up] = 0;
      r -= row_stride[up] * static_cast<std::size_t>(d - 1);
      c -= col_stride[up] * static_cast<std::size_t>(d - 1);
    }
  }
  return out;
}

DensityOperator partial_trace(const QuditState& s, std::span<const int> keep) {
  check_party_subset(keep, s.parties(), false);
  const Matrix m = matricize(s, keep);
  Matrix rho = m * m.adjoint();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityOperator(std::vector<int>(keep.begin(), keep.end()), s.dim(), std::move(rho));
}

QuditState permute_parties(const QuditState& s, std::span<const int> sigma) {
  const int n = s.parties();
  if (static_cast<int>(sigma.size()) != n) throw InvalidArgument("permutation length != n");
  std::vector<int> inverse(static_cast<std::size_t>(n), -1);
  for (int p = 0; p < n; ++p) {
    const int target = sigma[static_cast<std::size_t>(p)];
    if (target < 0 || target >= n || inverse[static_cast<std::size_t>(target)] != -1) {
      throw InvalidArgument("sigma is not a permutation of 0..n-1");
    }
    inverse[static_cast<std::size_t>(target)] = p;
  }
  // Output position q carries the digit of party inverse[q]; reading the
  // input with rows ordered by inverse gives the output index directly.
  const Matrix m = matricize(s, inverse);
  Vector out(s.amps().size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) out[i] = m(i, 0);
  return QuditState(n, s.dim(), std::move(out));
}

Complex inner(const QuditState& a, const QuditState& b) {
  if (a.parties() != b.parties() || a.dim() != b.dim()) throw DimensionMismatch("state shapes differ");
  return a.amps().dot(b.amps());
}

int schmidt_rank(const QuditState& s, std::span<const int> side, double tol) {
  if (side.empty() || static_cast<int>(side.size()) >= s.parties()) {
    throw InvalidArgument("bipartition side must be a nonempty proper subset");
  }
  const Matrix m = matricize(s, side);
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  return static_cast<int>((sv.array() > tol).count());
}

double von_neumann_entropy(const DensityOperator& rho) {
  if (std::abs(rho.trace() - 1.0) > 1e-9) {
    throw NotNormalized("entropy requires trace 1 within 1e-9, got " + std::to_string(rho.trace()));
  }
  const RealVector ev = rho.eigenvalues();
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double l = ev[i];
    if (l > 1e-14) s -= l * std::log2(l);
  }
  return std::max(0.0, s);
}

QuditState tensor(const QuditState& a, const QuditState& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("tensor product needs equal local dimension");
  const int n = a.parties() + b.parties();
  checked_dimension(n, a.dim());
  Vector out(a.amps().size() * b.amps().size());
  for (Eigen::Index i = 0; i < a.amps().size(); ++i) {
    out.segment(i * b.amps().size(), b.amps().size()) = a.amps()[i] * b.amps();
  }
  return QuditState(n, a.dim(), std::move(out));
}

}  // namespace locclab
