#include "locclab/transform.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "locclab/config.hpp"
#include "locclab/errors.hpp"
#include "locclab/lp.hpp"
#include "locclab/random.hpp"

namespace locclab {
namespace {

constexpr std::size_t kSepExpansionCap = 1024;

void require_same_shape(const QuditState& s, const LocalOperator& op) {
  if (op.parties() != s.parties() || op.dim() != s.dim()) throw DimensionMismatch("operator and state shapes differ");
}

double lambda_max_of(const Matrix& h) {
  const Matrix big_h = h.adjoint() * h;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (big_h + big_h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

Matrix nearest_unitary(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

QuditState apply_all_except(const std::vector<Matrix>& u, int skip, const QuditState& s) {
  QuditState t = s;
  for (int q = 0; q < static_cast<int>(u.size()); ++q) {
    if (q != skip) t = apply_factor(u[static_cast<std::size_t>(q)], q, t);
  }
  return t;
}

// Alternating polar updates maximizing Re<a|u b>. Stops when no factor moves by
// more than 1e-13 (overlap alone cannot resolve the last digits).
void polish_alignment(const std::vector<Matrix>& a_mats, const QuditState& b, std::vector<Matrix>& u, int max_sweeps) {
  const int n = b.parties();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double moved = 0.0;
    for (int p = 0; p < n; ++p) {
      const int rows[] = {p};
      const Matrix t = matricize(apply_all_except(u, p, b), rows);
      const Matrix c = t * a_mats[static_cast<std::size_t>(p)].adjoint();
      Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Matrix next = svd.matrixV() * svd.matrixU().adjoint();
      moved = std::max(moved, (next - u[static_cast<std::size_t>(p)]).norm());
      u[static_cast<std::size_t>(p)] = std::move(next);
    }
    if (moved < 1e-13) return;
  }
}

std::vector<Matrix> single_party_matricizations(const QuditState& a) {
  std::vector<Matrix> out;
  for (int p = 0; p < a.parties(); ++p) {
    const int rows[] = {p};
    out.push_back(matricize(a, rows));
  }
  return out;
}

// Alignment read off the normal-form factors: g^dag g = u h^dag h u^dag fixes
// u = V_g L V_h^dag up to diagonal phases L when the spectra are simple. The
// phases come from x = (V_g^dag) a and y = (V_h^dag) b, x = L y.
std::optional<std::vector<Matrix>> factor_alignment(const QuditState& a, const QuditState& b, const LocalOperator& g,
                                                    const LocalOperator& h) {
  const int n = a.parties();
  const int d = a.dim();
  std::vector<Matrix> vg, vh_adj, vg_adj;
  for (int i = 0; i < n; ++i) {
    const Matrix qg = g.factor(i).adjoint() * g.factor(i);
    const Matrix qh = h.factor(i).adjoint() * h.factor(i);
    Eigen::SelfAdjointEigenSolver<Matrix> eg((0.5 * (qg + qg.adjoint())).eval());
    Eigen::SelfAdjointEigenSolver<Matrix> eh((0.5 * (qh + qh.adjoint())).eval());
    const RealVector& lg = eg.eigenvalues();
    for (int k = 1; k < d; ++k) {
      if (lg[k] - lg[k - 1] < 1e-6 * lg[d - 1]) return std::nullopt;
    }
    vg.push_back(eg.eigenvectors());
    vg_adj.push_back(eg.eigenvectors().adjoint());
    vh_adj.push_back(eh.eigenvectors().adjoint());
  }
  const QuditState x = apply_local(LocalOperator(vg_adj), a);
  const QuditState y = apply_local(LocalOperator(vh_adj), b);
  const auto& xa = x.amps();
  const auto& ya = y.amps();
  const Eigen::Index total = ya.size();

  auto digits_of = [&](Eigen::Index idx) {
    std::vector<int> dg(static_cast<std::size_t>(n));
    for (int p = n - 1; p >= 0; --p) {
      dg[static_cast<std::size_t>(p)] = static_cast<int>(idx % d);
      idx /= d;
    }
    return dg;
  };
  auto index_of = [&](const std::vector<int>& dg) {
    Eigen::Index idx = 0;
    for (int p = 0; p < n; ++p) idx = idx * d + dg[static_cast<std::size_t>(p)];
    return idx;
  };
  // Anchor: the entry whose one-digit neighbours are all large.
  Eigen::Index best = -1;
  double best_score = 0.0;
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    if (std::abs(ya[idx]) <= best_score) continue;
    const auto dg = digits_of(idx);
    double score = std::abs(ya[idx]);
    for (int p = 0; p < n && score > best_score; ++p) {
      auto nb = dg;
      for (int v = 0; v < d; ++v) {
        nb[static_cast<std::size_t>(p)] = v;
        score = std::min(score, std::abs(ya[index_of(nb)]));
      }
    }
    if (score > best_score) {
      best_score = score;
      best = idx;
    }
  }
  if (best < 0 || best_score < 1e-6 * ya.cwiseAbs().maxCoeff()) return std::nullopt;
  const auto anchor = digits_of(best);
  auto ratio = [&](Eigen::Index idx) {
    const Complex r = xa[idx] / ya[idx];
    return r / std::abs(r);
  };
  // Phases on the anchor digits are 1 except at party 0, which carries the
  // anchor ratio; the rest follow from one-digit neighbours.
  std::vector<std::vector<Complex>> phase(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(d), 1.0));
  const Complex base = ratio(best);
  phase[0][static_cast<std::size_t>(anchor[0])] = base;
  for (int p = 0; p < n; ++p) {
    auto nb = anchor;
    for (int v = 0; v < d; ++v) {
      if (v == anchor[static_cast<std::size_t>(p)]) continue;
      nb[static_cast<std::size_t>(p)] = v;
      const Complex z = ratio(index_of(nb));
      phase[static_cast<std::size_t>(p)][static_cast<std::size_t>(v)] = p == 0 ? z : z / base;
    }
  }
  std::vector<Matrix> u;
  for (int i = 0; i < n; ++i) {
    Matrix l = Matrix::Zero(d, d);
    for (int v = 0; v < d; ++v) l(v, v) = phase[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)];
    u.push_back(vg[static_cast<std::size_t>(i)] * l * vh_adj[static_cast<std::size_t>(i)]);
  }
  return u;
}

std::vector<Matrix> sep_terms(const SepInstance& inst, std::size_t k) {
  std::vector<Matrix> out;
  const auto& s = inst.symmetries[k];
  for (int i = 0; i < inst.h_factors.parties(); ++i) {
    out.push_back(s.factor(i).adjoint() * inst.h_factors.factor(i) * s.factor(i));
  }
  return out;
}

Matrix expand_factors(const std::vector<Matrix>& f) { return LocalOperator(f).expand(); }

double sep_residual_unchecked(const SepInstance& inst, const std::vector<double>& p) {
  const int n = inst.h_factors.parties();
  const std::size_t dim = checked_dimension(n, inst.h_factors.dim());
  if (dim > kSepExpansionCap) {
    throw BudgetExceeded("SEP residual expands d^n = " + std::to_string(dim) + " > " +
                         std::to_string(kSepExpansionCap));
  }
  const auto big = static_cast<Eigen::Index>(dim);
  Matrix acc = -inst.r * Matrix::Identity(big, big);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] != 0.0) acc += p[k] * expand_factors(sep_terms(inst, k));
  }
  return acc.norm();
}

}  // namespace

// ---------------------------------------------------------------- pmax

LocalOperator normalize_filter(const LocalOperator& h, const QuditState& psi) {
  require_same_shape(psi, h);
  const double hn = apply_local(h, psi).norm();
  if (hn == 0.0) throw SingularOperator("h annihilates psi");
  return h.scaled(0, psi.norm() / hn);
}

ConversionReport pmax(const QuditState& psi, const LocalOperator& h) {
  require_same_shape(psi, h);
  if (std::abs(psi.norm() - 1.0) > 1e-9) throw NotNormalized("pmax needs ||psi|| = 1 (got " + std::to_string(psi.norm()) + ")");
  (void)h.inverse();  // throws SingularOperator
  const double hn = apply_local(h, psi).norm();
  if (std::abs(hn - 1.0) > 1e-9) throw NotNormalized("pmax needs ||h psi|| = 1 (got " + std::to_string(hn) + ")");
  ConversionReport rep;
  rep.lambda_max = 1.0;
  for (const auto& f : h.factors()) {
    const double l = lambda_max_of(f);
    rep.factor_lambda_max.push_back(l);
    rep.lambda_max *= l;
  }
  rep.p_max = 1.0 / rep.lambda_max;
  rep.deterministic = std::abs(rep.p_max - 1.0) <= 1e-9;
  if (rep.deterministic && h.is_unitary(1e-8)) rep.lu_witness = h;
  return rep;
}

// ---------------------------------------------------------------- SEP

void SepInstance::validate() const {
  const int n = h_factors.parties();
  const int d = h_factors.dim();
  for (const auto& f : h_factors.factors()) {
    if ((f - f.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw InvalidArgument("H factor is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (f + f.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 1e-10) throw InvalidArgument("H factor is not positive definite");
  }
  if (symmetries.empty()) throw InvalidArgument("symmetry list is empty");
  if (symmetries.size() > 64) throw BudgetExceeded("at most 64 symmetries");
  for (const auto& s : symmetries) {
    if (s.parties() != n || s.dim() != d) throw DimensionMismatch("symmetry shape differs from H");
  }
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("r must be positive");
}

double sep_residual(const SepInstance& inst, const std::vector<double>& p) {
  inst.validate();
  if (p.size() != inst.symmetries.size()) throw DimensionMismatch("probability list length != symmetry count");
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= -1e-12)) throw InvalidArgument("probabilities must be nonnegative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("probabilities must sum to 1");
  return sep_residual_unchecked(inst, p);
}

SepResult sep_feasible(const SepInstance& inst, const SepOptions& opt) {
  inst.validate();
  const auto kk = static_cast<Eigen::Index>(inst.symmetries.size());
  const int n = inst.h_factors.parties();

  // Gram data Tr(M_j M_k) and Tr(M_k); both factorize over parties.
  std::vector<std::vector<Matrix>> terms;
  for (Eigen::Index k = 0; k < kk; ++k) terms.push_back(sep_terms(inst, static_cast<std::size_t>(k)));
  Eigen::MatrixXd gram(kk, kk);
  Eigen::VectorXd tr(kk);
  for (Eigen::Index j = 0; j < kk; ++j) {
    double t = 1.0;
    for (int i = 0; i < n; ++i) t *= terms[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].trace().real();
    tr[j] = t;
    for (Eigen::Index k = 0; k <= j; ++k) {
      double g = 1.0;
      for (int i = 0; i < n; ++i) {
        g *= (terms[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * terms[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)])
                 .trace()
                 .real();
      }
      gram(j, k) = gram(k, j) = g;
    }
  }

  // Least squares on the hyperplane sum p = 1: p = p0 + N z.
  const Eigen::VectorXd p0 = Eigen::VectorXd::Constant(kk, 1.0 / static_cast<double>(kk));
  Eigen::MatrixXd null_one(kk, kk - 1);
  {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::VectorXd::Ones(kk));
    const Eigen::MatrixXd q = qr.householderQ();
    null_one = q.rightCols(kk - 1);
  }
  Eigen::VectorXd p_star = p0;
  Eigen::MatrixXd flat_dirs(kk, 0);
  if (kk > 1) {
    const Eigen::MatrixXd reduced = null_one.transpose() * gram * null_one;
    const Eigen::VectorXd rhs = null_one.transpose() * (inst.r * tr - gram * p0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(reduced);
    const double top = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(kk - 1);
    std::vector<Eigen::Index> flat;
    for (Eigen::Index i = 0; i < kk - 1; ++i) {
      const double l = es.eigenvalues()[i];
      if (l > 1e-12 * top) {
        z += (es.eigenvectors().col(i).dot(rhs) / l) * es.eigenvectors().col(i);
      } else {
        flat.push_back(i);
      }
    }
    p_star = p0 + null_one * z;
    flat_dirs.resize(kk, static_cast<Eigen::Index>(flat.size()));
    for (std::size_t i = 0; i < flat.size(); ++i) {
      flat_dirs.col(static_cast<Eigen::Index>(i)) = null_one * es.eigenvectors().col(flat[i]);
    }
  }

  SepResult out;
  out.p.assign(p_star.data(), p_star.data() + kk);
  out.affine_residual = sep_residual_unchecked(inst, out.p);
  out.residual = out.affine_residual;
  const bool use_vertex = opt.force_vertex || (!opt.force_simplex && kk <= 8);
  out.method = use_vertex ? "vertex" : "simplex";
  if (out.affine_residual > opt.tol) return out;

  // Nonnegativity on the affine solution set {p* + W y}, written as
  // A p = A p* with A spanning the complement of W.
  Eigen::MatrixXd a_eq;
  if (flat_dirs.cols() == 0) {
    a_eq = Eigen::MatrixXd::Identity(kk, kk);
  } else {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(flat_dirs);
    const Eigen::MatrixXd q = qr.householderQ();
    a_eq = q.rightCols(kk - flat_dirs.cols()).transpose();
  }
  const Eigen::VectorXd b_eq = a_eq * p_star;
  const lp::Feasibility f = use_vertex ? lp::vertex_enumeration(a_eq, b_eq, opt.tol) : lp::phase_one_simplex(a_eq, b_eq, opt.tol);
  if (!f.feasible) return out;

  Eigen::VectorXd p = f.x.cwiseMax(0.0);
  p /= p.sum();
  std::vector<double> pv(p.data(), p.data() + kk);
  const double res = sep_residual_unchecked(inst, pv);
  if (res <= 1e-8) {
    out.feasible = true;
    out.p = std::move(pv);
    out.residual = res;
  }
  return out;
}

// ---------------------------------------------------------------- LU

bool lu_equiv_same_seed(const LocalOperator& g, const LocalOperator& h, double tol) {
  if (g.parties() != h.parties() || g.dim() != h.dim()) throw DimensionMismatch("operator shapes differ");
  (void)g.inverse();
  (void)h.inverse();
  const double d = g.dim();
  double log_scale_g = 0.0;
  double log_scale_h = 0.0;
  for (int i = 0; i < g.parties(); ++i) {
    const double ag = std::abs(g.factor(i).determinant());
    const double ah = std::abs(h.factor(i).determinant());
    const Matrix gg = g.factor(i).adjoint() * g.factor(i) / std::pow(ag, 2.0 / d);
    const Matrix hh = h.factor(i).adjoint() * h.factor(i) / std::pow(ah, 2.0 / d);
    if ((gg - hh).norm() > tol * gg.norm()) return false;
    log_scale_g += 2.0 / d * std::log(ag);
    log_scale_h += 2.0 / d * std::log(ah);
  }
  return std::abs(std::exp(log_scale_g - log_scale_h) - 1.0) <= tol;
}

std::optional<Alignment> find_lu_alignment(const QuditState& a, const QuditState& b, const AlignmentOptions& opt) {
  if (a.parties() != b.parties() || a.dim() != b.dim()) throw DimensionMismatch("alignment states differ in shape");
  if (a.is_zero() || b.is_zero()) throw ZeroState("alignment of the zero state");
  if (std::abs(a.norm() - b.norm()) > 1e-8 * a.norm()) throw PreconditionFailed("alignment needs equal norms");
  if (criticality_residual(a) > 1e-8 || criticality_residual(b) > 1e-8) {
    throw PreconditionFailed("alignment needs critical states");
  }
  if (opt.restarts < 1) throw InvalidArgument("alignment needs at least one restart");
  const int n = a.parties();
  const int d = a.dim();
  const double denom = a.norm_squared() * b.norm_squared();
  const std::vector<Matrix> a_mats = single_party_matricizations(a);

  auto run = [&](int restart) -> std::optional<Alignment> {
    std::vector<Matrix> u;
    Rng rng = make_rng(opt.seed, static_cast<std::uint64_t>(restart));
    for (int p = 0; p < n; ++p) u.push_back(restart == 0 ? Matrix(Matrix::Identity(d, d)) : random_unitary(d, rng));
    double overlap = std::norm(inner(a, apply_all_except(u, -1, b))) / denom;
    for (int sweep = 0; sweep < opt.max_sweeps && overlap < 1.0 - 1e-14; ++sweep) {
      for (int p = 0; p < n; ++p) {
        const int rows[] = {p};
        const Matrix t = matricize(apply_all_except(u, p, b), rows);
        const Matrix c = t * a_mats[static_cast<std::size_t>(p)].adjoint();
        Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
        u[static_cast<std::size_t>(p)] = svd.matrixV() * svd.matrixU().adjoint();
      }
      const double next = std::norm(inner(a, apply_all_except(u, -1, b))) / denom;
      const bool stalled = next - overlap < 1e-16;
      overlap = next;
      if (stalled) break;
    }
    if (overlap < 1.0 - 1e-10) return std::nullopt;
    polish_alignment(a_mats, b, u, opt.max_sweeps);
    overlap = std::norm(inner(a, apply_all_except(u, -1, b))) / denom;
    const Complex z = inner(a, apply_all_except(u, -1, b));
    u[0] *= std::conj(z) / std::abs(z);
    return Alignment{LocalOperator(std::move(u)), overlap, restart};
  };

  const int batch = static_cast<int>(std::max(1u, thread_count()));
  for (int start = 0; start < opt.restarts; start += batch) {
    const int count = std::min(batch, opt.restarts - start);
    std::vector<std::optional<Alignment>> slots(static_cast<std::size_t>(count));
    parallel_for(slots.size(), [&](std::size_t i) { slots[i] = run(start + static_cast<int>(i)); });
    for (auto& s : slots) {
      if (s) return s;
    }
  }
  return std::nullopt;
}

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::True: return "true";
    case Decision::False: return "false";
    case Decision::Undecided: return "undecided";
  }
  return "unknown";
}

LuEquivResult lu_equiv_states(const QuditState& psi, const QuditState& phi, const LuEquivOptions& opt) {
  if (psi.parties() != phi.parties() || psi.dim() != phi.dim()) throw DimensionMismatch("states differ in shape");
  const int n = psi.parties();
  LuEquivResult out;

  if (std::abs(psi.norm() - phi.norm()) > 1e-9 * std::max(1.0, psi.norm())) {
    out.decision = Decision::False;
    out.reason = "norms differ; local unitaries preserve the norm";
    return out;
  }

  const NormalFormResult nf_psi = normal_form(psi, opt.tol, opt.max_iter);
  const NormalFormResult nf_phi = normal_form(phi, opt.tol, opt.max_iter);
  if (!nf_psi.converged() || !nf_phi.converged()) {
    throw PreconditionFailed(std::string("normal form did not converge (") + status_name(nf_psi.status) + ", " +
                             status_name(nf_phi.status) + ")");
  }

  // Local-unitary invariants of the critical representatives.
  double spectral_gap = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const RealVector x = reduced_spectrum(nf_psi.critical, i, j).eigenvalues;
      const RealVector y = reduced_spectrum(nf_phi.critical, i, j).eigenvalues;
      spectral_gap = std::max(spectral_gap, (x - y).cwiseAbs().maxCoeff());
    }
  }
  if (spectral_gap > 1e-6) {
    out.decision = Decision::False;
    out.reason = "NotSLOCCEquivalent: critical two-body spectra differ by " + std::to_string(spectral_gap);
    return out;
  }

  const LocalOperator& g = nf_psi.accumulated;
  const LocalOperator& h = nf_phi.accumulated;

  // Unitary similarity keeps the spectrum of every g^dag g; a gap here rules
  // out every alignment at once.
  for (int i = 0; i < n; ++i) {
    const Matrix qg = g.factor(i).adjoint() * g.factor(i);
    const Matrix qh = h.factor(i).adjoint() * h.factor(i);
    Eigen::SelfAdjointEigenSolver<Matrix> eg((0.5 * (qg + qg.adjoint())).eval(), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Matrix> eh((0.5 * (qh + qh.adjoint())).eval(), Eigen::EigenvaluesOnly);
    out.factor_mismatch = std::max(out.factor_mismatch, (eg.eigenvalues() - eh.eigenvalues()).norm() / qg.norm());
  }

  std::optional<LocalOperator> aligned;
  if (out.factor_mismatch <= 1e-6) {
    if (auto guess = factor_alignment(nf_psi.critical, nf_phi.critical, g, h)) {
      polish_alignment(single_party_matricizations(nf_psi.critical), nf_phi.critical, *guess, opt.alignment.max_sweeps);
      const double overlap = std::norm(inner(nf_psi.critical, apply_local(LocalOperator(*guess), nf_phi.critical))) /
                             (nf_psi.critical.norm_squared() * nf_phi.critical.norm_squared());
      if (overlap >= 1.0 - 1e-10) aligned = LocalOperator(std::move(*guess));
    }
    if (!aligned) {
      auto align = find_lu_alignment(nf_psi.critical, nf_phi.critical, opt.alignment);
      if (!align) {
        out.decision = Decision::Undecided;
        out.reason = "alignment search exhausted its restart budget";
        return out;
      }
      aligned = std::move(align->u);
    }
  }

  if (aligned) {
    const LocalOperator& u = *aligned;
    for (int i = 0; i < n; ++i) {
      const Matrix big_g = g.factor(i).adjoint() * g.factor(i);
      const Matrix big_h = u.factor(i) * h.factor(i).adjoint() * h.factor(i) * u.factor(i).adjoint();
      out.factor_mismatch = std::max(out.factor_mismatch, (big_g - big_h).norm() / big_g.norm());
    }
  }

  if (aligned && out.factor_mismatch <= 1e-6) {
    const LocalOperator& u = *aligned;
    // psi = s_psi g a, phi = s_phi h u^dag a  =>  psi = (s_psi/s_phi) g u h^-1 phi.
    std::vector<Matrix> w;
    const LocalOperator h_inv = h.inverse();
    for (int i = 0; i < n; ++i) w.push_back(nearest_unitary(g.factor(i) * u.factor(i) * h_inv.factor(i)));
    // Tighten against the input states themselves; the normal forms only
    // carry the iteration tolerance.
    polish_alignment(single_party_matricizations(psi), phi, w, opt.alignment.max_sweeps);
    LocalOperator witness(std::move(w));
    // The polar projection drops the global phase; restore it.
    const Complex z = inner(psi, apply_local(witness, phi));
    if (std::abs(z) > 0.0) witness = witness.scaled(0, std::conj(z) / std::abs(z));
    out.witness_residual = (apply_local(witness, phi).amps() - psi.amps()).norm() / psi.norm();
    if (out.witness_residual <= 1e-8) {
      out.decision = Decision::True;
      out.reason = "normal-form factors agree; witness verified";
      out.witness = std::move(witness);
    } else {
      out.decision = Decision::Undecided;
      out.reason = "factor comparison passed but the witness failed verification";
    }
    return out;
  }

  if (stabilizer_lie_dim(nf_psi.critical) > 0) {
    out.decision = Decision::Undecided;
    out.reason = "critical state has a continuous stabilizer; factor comparison is not decisive";
    return out;
  }
  out.decision = Decision::False;
  out.reason = "g^dag g differs from u h^dag h u^dag (mismatch " + std::to_string(out.factor_mismatch) + ")";
  return out;
}

LuEquivResult deterministic_convertible(const QuditState& psi, const QuditState& phi,
                                        const StabilizerCertificate& certificate, const LuEquivOptions& opt) {
  if (certificate.verdict != Verdict::EvidenceTrivial) {
    throw PreconditionFailed(std::string("deterministic_convertible needs an EvidenceTrivial certificate (got ") +
                             verdict_name(certificate.verdict) + ")");
  }
  return lu_equiv_states(psi, phi, opt);
}

}  // namespace locclab
