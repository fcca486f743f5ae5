#include "locclab/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>

#include "locclab/config.hpp"
#include "locclab/errors.hpp"

namespace locclab {
namespace {

constexpr double kPi = std::numbers::pi;

QuditState repeated(int n, int d, int digit) {
  const std::vector<int> digits(static_cast<std::size_t>(n), digit);
  return QuditState::basis(d, digits);
}

/// Pattern |hi>^k |lo>^(n-k), symmetrized.
QuditState symmetric_two_level(int n, int d, int k, int hi, int lo) {
  std::vector<int> digits(static_cast<std::size_t>(n), lo);
  std::fill_n(digits.begin(), k, hi);
  return symmetrize_basis(d, digits);
}

Matrix diagonal(std::initializer_list<Complex> entries) {
  Vector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const auto& e : entries) v[i++] = e;
  return v.asDiagonal();
}

}  // namespace

QuditState symmetrize_basis(int dim, std::span<const int> digits) {
  const int n = static_cast<int>(digits.size());
  std::vector<int> pattern(digits.begin(), digits.end());
  std::sort(pattern.begin(), pattern.end());
  QuditState out = QuditState::zero(n, dim);
  Vector amps = out.amps();
  do {
    std::size_t index = 0;
    for (int digit : pattern) {
      if (digit < 0 || digit >= dim) throw InvalidArgument("basis digit out of range");
      index = index * static_cast<std::size_t>(dim) + static_cast<std::size_t>(digit);
    }
    amps[static_cast<Eigen::Index>(index)] = 1.0;
  } while (std::next_permutation(pattern.begin(), pattern.end()));
  return QuditState(n, dim, std::move(amps));
}

QuditState symmetrize(const QuditState& phi) {
  const int n = phi.parties();
  const int d = phi.dim();
  // Single basis term: the multiset enumeration is exact and cheap.
  Eigen::Index nonzero = -1;
  int count = 0;
  for (Eigen::Index i = 0; i < phi.amps().size(); ++i) {
    if (phi.amps()[i] != Complex(0.0, 0.0)) {
      nonzero = i;
      ++count;
    }
  }
  if (count == 0) return phi;
  if (count == 1) {
    std::vector<int> digits(static_cast<std::size_t>(n));
    auto rest = static_cast<std::size_t>(nonzero);
    for (int p = n - 1; p >= 0; --p) {
      digits[static_cast<std::size_t>(p)] = static_cast<int>(rest % static_cast<std::size_t>(d));
      rest /= static_cast<std::size_t>(d);
    }
    return symmetrize_basis(d, digits).scaled(phi.amps()[nonzero]);
  }
  if (n > 9) throw BudgetExceeded("general symmetrization enumerates n! permutations; n <= 9 supported");
  auto less = [](const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size(),
                                        [](Complex x, Complex y) {
                                          return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
                                        });
  };
  std::set<Vector, decltype(less)> distinct(less);
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    distinct.insert(permute_parties(phi, sigma).amps());
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  Vector sum = Vector::Zero(phi.amps().size());
  for (const auto& v : distinct) sum += v;
  return QuditState(n, d, std::move(sum));
}

QuditState dicke(const DickeSpec& spec) {
  if (spec.parties < 1 || spec.dim < 2) throw InvalidArgument("dicke needs n >= 1 and d >= 2");
  if (spec.excitations < 0 || spec.excitations > spec.parties) throw InvalidArgument("dicke needs 0 <= k <= n");
  if (spec.level < 1 || spec.level > spec.dim - 1) throw InvalidArgument("dicke needs 1 <= j <= d-1");
  return symmetric_two_level(spec.parties, spec.dim, spec.excitations, spec.level, spec.level - 1);
}

std::optional<int> select_k(int n) {
  for (int k = 3; k <= n - 2; ++k) {
    if (n != 2 * k && std::gcd(n, k) == 1) return k;
  }
  return std::nullopt;
}

int totient(int n) {
  if (n < 1) throw InvalidArgument("totient needs n >= 1");
  int count = 0;
  for (int j = 1; j < n; ++j) {
    if (std::gcd(n, j) == 1) ++count;
  }
  return count;
}

long long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n - k + i) / i is exact at every step.
    if (r > std::numeric_limits<long long>::max() / (n - k + i)) throw InvalidArgument("binomial overflow");
    r = r * (n - k + i) / i;
  }
  return r;
}

QuditState psi_nd(int n, int d) {
  if (d < 2) throw InvalidArgument("psi_nd needs d >= 2");
  const auto k = select_k(n);
  if (!k) {
    throw UndefinedFamily("Psi_{n,d} is undefined for n=" + std::to_string(n) +
                          ": no k with 3 <= k <= n-2, n != 2k, gcd(n,k) = 1");
  }
  QuditState out = QuditState::zero(n, d);
  for (int j = 0; j < d; ++j) {
    double c = 1.0;
    if (j == 0) c = std::sqrt(static_cast<double>(binomial(n - 1, *k - 1) + 1));
    if (j == d - 1) c = std::sqrt(static_cast<double>(binomial(n - 1, *k) + 1));
    out += c * repeated(n, d, j);
  }
  for (int j = 1; j < d; ++j) out += dicke({n, d, *k, j});
  return out;
}

double phi4_coefficient(int d, int i) {
  return std::sqrt(1.0 - std::pow(-4.0 / 15.0, d - i)) / 3.0;
}

QuditState phi_4d(int d) {
  if (d < 3) throw UndefinedFamily("Phi_{4,d} requires local dimension d > 2");
  QuditState out = (std::sqrt(15.0) * phi4_coefficient(d, 0)) * repeated(4, d, 0);
  for (int i = 1; i < d; ++i) {
    QuditState term = dicke({4, d, 3, i}) + dicke({4, d, 2, i}) - 3.0 * repeated(4, d, i);
    out += phi4_coefficient(d, i) * term;
  }
  return out;
}

QuditState phi6_component(int d, int j) {
  if (j < 2 || j > d - 1) throw InvalidArgument("phi6 component needs 2 <= j <= d-1");
  const std::vector<int> digits{j, j - 1, j - 1, j - 1, j - 2, j - 2};
  return symmetrize_basis(d, digits);
}

QuditState phi_6d(int d) {
  if (d < 2) throw InvalidArgument("phi_6d needs d >= 2");
  if (d == 2) {
    return 2.0 * repeated(6, 2, 0) + dicke({6, 2, 5, 1}) + dicke({6, 2, 3, 1});
  }
  if (d == 3) {
    return 3.0 * repeated(6, 3, 0) + dicke({6, 3, 5, 1}) + (1.0 / std::sqrt(2.0)) * phi6_component(3, 2) +
           std::sqrt(15.0) * repeated(6, 3, 2);
  }
  QuditState out = std::sqrt(194.0 / 5.0) * repeated(6, d, 0);
  out += std::sqrt(11.0 / 5.0) * dicke({6, d, 5, 1});
  for (int j = 2; j <= d - 3; ++j) out += repeated(6, d, j);
  out += std::sqrt(21.0) * repeated(6, d, d - 2);
  out += std::sqrt(51.0) * repeated(6, d, d - 1);
  for (int j = 2; j <= d - 1; ++j) out += phi6_component(d, j);
  return out;
}

QuditState ghz(int n, int d) {
  QuditState out = QuditState::zero(n, d);
  for (int j = 0; j < d; ++j) out += repeated(n, d, j);
  return (1.0 / std::sqrt(static_cast<double>(d))) * out;
}

QuditState bell_phi_plus(int d) { return ghz(2, d); }

Matrix gen_pauli(int d, int k1, int k2) {
  if (d < 2) throw InvalidArgument("gen_pauli needs d >= 2");
  if (k1 < 0 || k1 >= d || k2 < 0 || k2 >= d) throw InvalidArgument("gen_pauli exponents must lie in [0, d)");
  // (X^k1 Z^k2)|c> = omega^(k2 c) |c + k1 mod d>.
  Matrix out = Matrix::Zero(d, d);
  for (int c = 0; c < d; ++c) {
    const double phase = 2.0 * kPi * static_cast<double>((k2 * c) % d) / static_cast<double>(d);
    out((c + k1) % d, c) = std::polar(1.0, phase);
  }
  return out;
}

Matrix pauli_eigenbasis_transform(int d, int t) {
  if (d < 2) throw InvalidArgument("pauli_eigenbasis_transform needs d >= 2");
  if (t < 0 || t >= d) throw InvalidArgument("pauli_eigenbasis_transform needs 0 <= t < d");
  Matrix out(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) {
    // sum_{l=i}^{d-1} l
    const long long tail = static_cast<long long>(d - 1) * d / 2 - static_cast<long long>(i - 1) * i / 2;
    for (int j = 0; j < d; ++j) {
      // Exponent of omega, reduced mod d to keep the angle small.
      long long e = static_cast<long long>(j) * (d - i) - static_cast<long long>(t) * tail;
      e %= d;
      if (e < 0) e += d;
      out(i, j) = norm * std::polar(1.0, 2.0 * kPi * static_cast<double>(e) / static_cast<double>(d));
    }
  }
  return out;
}

TripartiteUnitaryFamily tripartite_unitaries(int d) {
  TripartiteUnitaryFamily fam;
  fam.dim = d;
  const Complex I(0.0, 1.0);
  if (d == 4) {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix t1(4, 4);
    t1 << 1.0, 1.0, 1.0, 1.0,
          1.0, -I, -1.0, I,
          -1.0, 1.0, -1.0, 1.0,
          -1.0, -I, 1.0, I;
    t1 *= 0.5;
    Matrix t2(4, 4);
    t2 << I, I, 1.0, -1.0,
          (1.0 + I) * s, -(1.0 - I) * s, -(1.0 + I) * s, (1.0 - I) * s,
          -I, I, 1.0, 1.0,
          (1.0 + I) * s, (1.0 - I) * s, (1.0 + I) * s, (1.0 - I) * s;
    t2 *= 0.5;
    fam.unitaries.push_back(Matrix::Identity(4, 4));
    fam.unitaries.push_back(t1 * diagonal({{6, 8}, {-6, -8}, {-6, 8}, {6, -8}}) * t1.adjoint() / 10.0);
    fam.unitaries.push_back(t2 * diagonal({{96, 28}, {96, -28}, {-96, 28}, {-96, -28}}) * t2.adjoint() / 100.0);
    fam.unitaries.push_back(diagonal({{936, 352}, {-936, -352}, {-936, 352}, {936, -352}}) / 1000.0);
  } else if (d == 5) {
    const double a1 = kPi / 3.0;
    const double a2 = kPi / 6.0;
    const double b1 = std::acos(0.5 - std::cos(a1));
    const double b2 = std::acos(0.5 - std::cos(a2));
    const Matrix u51 = pauli_eigenbasis_transform(5, 1);
    fam.unitaries.push_back(Matrix::Identity(5, 5));
    fam.unitaries.push_back(
        u51 * diagonal({std::polar(1.0, b1), std::polar(1.0, -b1), std::polar(1.0, a1), std::polar(1.0, -a1), -1.0}) *
        u51.adjoint());
    fam.unitaries.push_back(
        diagonal({-1.0, std::polar(1.0, b2), std::polar(1.0, -b2), std::polar(1.0, a2), std::polar(1.0, -a2)}));
    fam.unitaries.push_back(gen_pauli(5, 1, 3));
    fam.unitaries.push_back(gen_pauli(5, 3, 1));
  } else if (d == 6) {
    // The 1/10 and 1/100 prefactors scale only the (6 +- 8i) and (96 +- 28i)
    // entries; the +-i entries already have unit modulus.
    const Matrix u60 = pauli_eigenbasis_transform(6, 0);
    fam.unitaries.push_back(Matrix::Identity(6, 6));
    fam.unitaries.push_back(
        u60 * diagonal({Complex(6, 8) / 10.0, Complex(6, -8) / 10.0, Complex(-6, 8) / 10.0, Complex(-6, -8) / 10.0, I, -I}) *
        u60.adjoint());
    fam.unitaries.push_back(diagonal({Complex(96, 28) / 100.0, Complex(-96, -28) / 100.0, I, -I,
                                      Complex(96, -28) / 100.0, Complex(-96, 28) / 100.0}));
    fam.unitaries.push_back(gen_pauli(6, 1, 1));
    fam.unitaries.push_back(gen_pauli(6, 2, 3));
    fam.unitaries.push_back(gen_pauli(6, 4, 2));
  } else {
    throw UndefinedFamily("tripartite unitary families are listed for d = 4, 5, 6 only");
  }
  return fam;
}

bool FamilyInvariantReport::ok() const {
  return identity_first && unitarity_defect <= 1e-10 && orthogonality_defect <= 1e-8 &&
         independence_rank == independence_target;
}

FamilyInvariantReport check_family(const TripartiteUnitaryFamily& fam) {
  FamilyInvariantReport r;
  const int d = fam.dim;
  if (d < 2 || static_cast<int>(fam.unitaries.size()) != d) {
    throw InvalidArgument("tripartite family must hold exactly d unitaries");
  }
  const Matrix eye = Matrix::Identity(d, d);
  r.identity_first = (fam.unitaries.front() - eye).cwiseAbs().maxCoeff() <= 1e-12;
  for (const auto& u : fam.unitaries) {
    if (u.rows() != d || u.cols() != d) throw DimensionMismatch("family unitaries must be d x d");
    r.unitarity_defect = std::max(r.unitarity_defect, (u.adjoint() * u - eye).cwiseAbs().maxCoeff());
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Complex tr = (fam.unitaries[static_cast<std::size_t>(i)].adjoint() * fam.unitaries[static_cast<std::size_t>(j)]).trace();
      const double expected = (i == j) ? static_cast<double>(d) : 0.0;
      r.orthogonality_defect = std::max(r.orthogonality_defect, std::abs(tr - expected));
    }
  }
  Matrix products(d * d, d * d - d);
  Eigen::Index col = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      const Matrix p = fam.unitaries[static_cast<std::size_t>(i)] * fam.unitaries[static_cast<std::size_t>(j)].adjoint();
      products.col(col++) = Eigen::Map<const Vector>(p.data(), d * d);
    }
  }
  Eigen::JacobiSVD<Matrix> svd(products);
  const auto& sv = svd.singularValues();
  r.independence_rank = static_cast<int>((sv.array() > 1e-8 * sv[0]).count());
  r.independence_target = d * d - d;
  return r;
}

QuditState tripartite_state_unchecked(const TripartiteUnitaryFamily& fam) {
  const int d = fam.dim;
  if (static_cast<int>(fam.unitaries.size()) != d) throw InvalidArgument("family must hold d unitaries");
  QuditState out = QuditState::zero(3, d);
  Vector amps = out.amps();
  const double scale = 1.0 / static_cast<double>(d);
  for (int j = 0; j < d; ++j) {
    const Matrix& u = fam.unitaries[static_cast<std::size_t>(j)];
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) amps[(j * d + a) * d + b] = scale * u(a, b);
    }
  }
  return QuditState(3, d, std::move(amps));
}

QuditState tripartite_state(const TripartiteUnitaryFamily& fam) {
  const auto report = check_family(fam);
  if (!report.ok()) {
    throw PreconditionFailed("tripartite family invariants fail (unitarity " + std::to_string(report.unitarity_defect) +
                             ", orthogonality " + std::to_string(report.orthogonality_defect) + ", rank " +
                             std::to_string(report.independence_rank) + "/" +
                             std::to_string(report.independence_target) + ")");
  }
  return tripartite_state_unchecked(fam);
}

std::optional<Family> parse_family(const std::string& name) {
  if (name == "psi") return Family::Psi;
  if (name == "phi4") return Family::Phi4;
  if (name == "phi6") return Family::Phi6;
  if (name == "ghz") return Family::Ghz;
  if (name == "tripartite") return Family::Tripartite;
  if (name == "dicke") return Family::Dicke;
  return std::nullopt;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Psi: return "psi";
    case Family::Phi4: return "phi4";
    case Family::Phi6: return "phi6";
    case Family::Ghz: return "ghz";
    case Family::Tripartite: return "tripartite";
    case Family::Dicke: return "dicke";
  }
  return "unknown";
}

}  // namespace locclab
