#include "locclab/osbp.hpp"

#include <cmath>

#include "locclab/config.hpp"
#include "locclab/errors.hpp"
#include "locclab/random.hpp"

namespace locclab {
namespace {

constexpr std::int64_t kChunk = 4096;
// Largest tree we precompute: 2^n nodes of d^n amplitudes.
constexpr std::size_t kTreeBudget = std::size_t{1} << 23;

}  // namespace

OsbpProtocol build_osbp(const LocalOperator& h, const QuditState& psi) {
  if (h.parties() != psi.parties() || h.dim() != psi.dim()) throw DimensionMismatch("operator and state shapes differ");
  (void)h.inverse();
  const double hn = apply_local(h, psi).norm();
  if (std::abs(hn - 1.0) > 1e-9) throw NotNormalized("build_osbp needs ||h psi|| = 1 (got " + std::to_string(hn) + ")");
  const int d = h.dim();
  const Matrix eye = Matrix::Identity(d, d);
  OsbpProtocol proto;
  for (const auto& f : h.factors()) {
    Matrix big_h = f.adjoint() * f;
    big_h = (0.5 * (big_h + big_h.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(big_h);
    const double lmax = es.eigenvalues().maxCoeff();
    const double c2 = 1.0 / lmax;
    // Eigenvalues of I - c^2 H in the same eigenbasis.
    RealVector rest = (1.0 - c2 * es.eigenvalues().array()).matrix();
    if (rest.minCoeff() < -1e-10) throw PreconditionFailed("I - c^2 H is not positive semidefinite");
    // eigenvalues at lmax are exactly zero; sqrt would blow roundoff up to ~1e-8
    for (Eigen::Index i = 0; i < rest.size(); ++i)
      if (es.eigenvalues()(i) >= lmax * (1.0 - 1e-12)) rest(i) = 0.0;
    rest = rest.cwiseMax(0.0).cwiseSqrt();
    const Matrix b = es.eigenvectors() * rest.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    const Matrix a = std::sqrt(c2) * f;
    proto.success.push_back(a);
    proto.failure.push_back(b);
    proto.scale_sq.push_back(c2);
    proto.completeness_residual =
        std::max(proto.completeness_residual, (a.adjoint() * a + b.adjoint() * b - eye).cwiseAbs().maxCoeff());
  }
  return proto;
}

double exact_success_probability(const OsbpProtocol& proto, const QuditState& psi) {
  return apply_local(LocalOperator(proto.success), psi).norm_squared();
}

QuditState branch_state(const OsbpProtocol& proto, const QuditState& psi, const std::vector<bool>& outcomes) {
  if (static_cast<int>(outcomes.size()) != proto.parties()) throw DimensionMismatch("outcome string length != n");
  QuditState s = psi;
  for (int p = 0; p < proto.parties(); ++p) {
    const auto i = static_cast<std::size_t>(p);
    s = apply_factor(outcomes[i] ? proto.success[i] : proto.failure[i], p, s);
  }
  return s.normalized();
}

SimulationResult simulate(const OsbpProtocol& proto, const QuditState& psi, std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("shots must be >= 1");
  const int n = proto.parties();
  if (n != psi.parties()) throw DimensionMismatch("protocol and state differ in party count");
  if ((std::size_t{1} << n) * psi.size() > kTreeBudget) throw BudgetExceeded("branch tree too large to tabulate");

  // Heap-indexed tree: node 1 is the root, children 2k (success) and 2k+1
  // (failure). prob_a[k] = P(success at the next party | branch so far).
  const std::size_t nodes = std::size_t{1} << n;
  std::vector<double> prob_a(nodes, 0.5);
  std::vector<QuditState> level{psi};
  for (int p = 0; p < n; ++p) {
    const auto i = static_cast<std::size_t>(p);
    std::vector<QuditState> next;
    next.reserve(level.size() * 2);
    const std::size_t base = std::size_t{1} << p;
    for (std::size_t j = 0; j < level.size(); ++j) {
      const QuditState a = apply_factor(proto.success[i], p, level[j]);
      const QuditState b = apply_factor(proto.failure[i], p, level[j]);
      const double total = level[j].norm_squared();
      if (total > 0.0) prob_a[base + j] = a.norm_squared() / total;
      next.push_back(a);
      next.push_back(b);
    }
    level = std::move(next);
  }

  const auto chunks = static_cast<std::size_t>((shots + kChunk - 1) / kChunk);
  std::vector<std::vector<std::int64_t>> leaf_counts(chunks, std::vector<std::int64_t>(nodes, 0));
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng = make_rng(seed, c);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::int64_t begin = static_cast<std::int64_t>(c) * kChunk;
    const std::int64_t end = std::min(shots, begin + kChunk);
    for (std::int64_t s = begin; s < end; ++s) {
      std::size_t node = 1;
      for (int p = 0; p < n; ++p) node = 2 * node + (unif(rng) < prob_a[node] ? 0 : 1);
      ++leaf_counts[c][node - nodes];
    }
  });

  SimulationResult out;
  out.shots = shots;
  out.exact = exact_success_probability(proto, psi);
  std::vector<std::int64_t> merged(nodes, 0);
  for (const auto& lc : leaf_counts) {
    for (std::size_t j = 0; j < nodes; ++j) merged[j] += lc[j];
  }
  for (std::size_t j = 0; j < nodes; ++j) {
    if (merged[j] == 0) continue;
    std::string key(static_cast<std::size_t>(n), 'A');
    for (int p = 0; p < n; ++p) {
      if ((j >> (n - 1 - p)) & 1u) key[static_cast<std::size_t>(p)] = 'B';
    }
    out.branch_tallies[key] = merged[j];
  }
  out.successes = merged[0];
  out.rate = static_cast<double>(out.successes) / static_cast<double>(shots);
  return out;
}

}  // namespace locclab
