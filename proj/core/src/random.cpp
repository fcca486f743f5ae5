#include "locclab/random.hpp"

#include <cmath>

namespace locclab {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix random_ginibre(int dim, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return m;
}

Matrix random_unitary(int dim, Rng& rng) {
  const Matrix z = random_ginibre(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(j) *= diag / mag;
  }
  return q;
}

Matrix random_invertible(int dim, Rng& rng) {
  for (;;) {
    Matrix m = random_ginibre(dim, rng);
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    if (sv[sv.size() - 1] > 1e-2 * sv[0]) return m;
  }
}

Matrix unitary_exp(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  const auto& ev = solver.eigenvalues();
  Vector phases(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) phases[i] = std::polar(1.0, ev[i]);
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

LocalOperator random_local_unitary(int parties, int dim, Rng& rng) {
  std::vector<Matrix> f;
  for (int p = 0; p < parties; ++p) f.push_back(random_unitary(dim, rng));
  return LocalOperator(std::move(f));
}

LocalOperator random_local_invertible(int parties, int dim, Rng& rng) {
  std::vector<Matrix> f;
  for (int p = 0; p < parties; ++p) f.push_back(random_invertible(dim, rng));
  return LocalOperator(std::move(f));
}

QuditState random_state(int parties, int dim, Rng& rng) {
  QuditState z = QuditState::zero(parties, dim);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector amps(z.amps().size());
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    amps[i] = Complex(re, im);
  }
  return QuditState(parties, dim, std::move(amps));
}

}  // namespace locclab
