#include "qsymm/bargmann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qsymm/errors.hpp"
#include "qsymm/linalg.hpp"

namespace qsymm {

// ---------------------------------------------------------------------------
// Preparation

Preparation prepare_lambda_minus(const QuadraticSymbol& q, const HalfPlaneSplit& split, const Tolerances& tol) {
  const int n = q.n;
  Preparation p;
  p.a_minus = graph_matrix(split.minus, tol);
  const rmat neg_im = -p.a_minus.imag();
  Eigen::LLT<rmat> llt(0.5 * (neg_im + neg_im.transpose()));
  if (llt.info() != Eigen::Success || Eigen::SelfAdjointEigenSolver<rmat>(neg_im).eigenvalues()(0) <= 0.0)
    throw PositivityError("Im A_minus is not negative definite");
  const rmat R = llt.matrixU();
  const rmat Rinv = R.inverse();
  const rmat Id = rmat::Identity(n, n);

  rmat shear = rmat::Identity(2 * n, 2 * n);
  shear.bottomLeftCorner(n, n) = -p.a_minus.real();
  rmat scale = rmat::Zero(2 * n, 2 * n);
  scale.topLeftCorner(n, n) = R;
  scale.bottomRightCorner(n, n) = Rinv.transpose();
  p.prep = scale * shear;

  rmat shear_inv = rmat::Identity(2 * n, 2 * n);
  shear_inv.bottomLeftCorner(n, n) = p.a_minus.real();
  rmat scale_inv = rmat::Zero(2 * n, 2 * n);
  scale_inv.topLeftCorner(n, n) = Rinv;
  scale_inv.bottomRightCorner(n, n) = R.transpose();
  p.prep_inverse = shear_inv * scale_inv;

  p.q = q.pulled_back(p.prep_inverse.cast<cplx>());
  const cmat prep_c = p.prep.cast<cplx>();
  const cmat minus_graph = graph_matrix(split.minus.mapped(prep_c, tol), tol);
  p.minus_residual = (minus_graph + I * Id.cast<cplx>()).norm();
  p.a_plus = graph_matrix(split.plus.mapped(prep_c, tol), tol);
  const rmat im_plus = p.a_plus.imag();
  if (Eigen::SelfAdjointEigenSolver<rmat>(0.5 * (im_plus + im_plus.transpose())).eigenvalues()(0) <= 0.0)
    throw PositivityError("Im A_plus is not positive definite after preparation");
  return p;
}

// ---------------------------------------------------------------------------
// Bargmann transform data

BargmannData bargmann_data(const cmat& a_plus) {
  const auto n = a_plus.rows();
  const cmat Id = cmat::Identity(n, n);
  const cmat lhs = Id - I * a_plus;
  Eigen::FullPivLU<cmat> lu(lhs);
  if (!lu.isInvertible()) throw ConstructionError("bargmann_data: I - i A_plus is singular");
  BargmannData d;
  d.b = lu.solve(a_plus);
  d.kappa_t.resize(2 * n, 2 * n);
  d.kappa_t << Id, -I * Id, -d.b, Id + I * d.b;
  // 1/2((Im x)^2 + Im(B x.x)) = Re((-i B/2 - I/4) x.x) + (I/4) x.conj(x)
  d.phi0 = WeightForm::from_complex(-0.5 * I * d.b - 0.25 * Id, 0.25 * Id);
  return d;
}

TransformedSymbol transformed_symbol(const QuadraticSymbol& q_prepped, const cmat& kappa_t, const Tolerances& tol) {
  const int n = q_prepped.n;
  TransformedSymbol t;
  const cmat kinv = kappa_t.inverse();
  t.q_tilde = kinv.transpose() * q_prepped.phase_matrix() * kinv;
  t.q_tilde = 0.5 * (t.q_tilde + t.q_tilde.transpose());
  t.xx_norm = t.q_tilde.topLeftCorner(n, n).norm();
  t.xixi_norm = t.q_tilde.bottomRightCorner(n, n).norm();
  const double bound = tol.structure * std::max(1.0, t.q_tilde.norm());
  if (t.xx_norm > bound)
    throw ConstructionError("transformed symbol: xx block does not vanish (norm " + std::to_string(t.xx_norm) + ")");
  if (t.xixi_norm > bound)
    throw ConstructionError("transformed symbol: xi-xi block does not vanish (norm " + std::to_string(t.xixi_norm) +
                            ")");
  t.m = 2.0 * t.q_tilde.bottomLeftCorner(n, n);
  return t;
}

// ---------------------------------------------------------------------------
// Jordan reduction

namespace {

cmat matrix_power(const cmat& N, int p) {
  cmat P = cmat::Identity(N.rows(), N.cols());
  for (int i = 0; i < p; ++i) P = P * N;
  return P;
}

}  // namespace

JordanReduction jordan_reduce(const cmat& M, const Tolerances& tol) {
  const int n = static_cast<int>(M.rows());
  const EigenAnalysis ea = eigen_analysis(M, tol);
  std::vector<const EigenCluster*> order;
  for (const auto& c : ea.clusters) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(), [](const EigenCluster* a, const EigenCluster* b) {
    if (a->lambda.imag() != b->lambda.imag()) return a->lambda.imag() > b->lambda.imag();
    return a->lambda.real() < b->lambda.real();
  });

  JordanReduction out;
  out.c = cmat::Zero(n, n);
  out.j = cmat::Zero(n, n);
  int col = 0;
  for (const EigenCluster* cl : order) {
    const int k = cl->alg_mult;
    const cmat& Z = cl->subspace;
    const cmat N = Z.adjoint() * M * Z - cl->lambda * cmat::Identity(k, k);
    const auto& segre = cl->segre;
    auto kernel_dim = [&](int p) {
      int d = 0;
      for (int s : segre) d += std::min(s, p);
      return d;
    };

    std::vector<std::pair<int, cvec>> chains;
    for (int p = segre.front(); p >= 1; --p) {
      const int count = static_cast<int>(std::count(segre.begin(), segre.end(), p));
      if (count == 0) continue;
      const cmat Kp = linalg::kernel_basis(matrix_power(N, p), kernel_dim(p));
      cmat W(k, 0);
      if (p > 1) W = linalg::kernel_basis(matrix_power(N, p - 1), kernel_dim(p - 1));
      for (const auto& [len, v] : chains) {
        W.conservativeResize(k, W.cols() + 1);
        W.col(W.cols() - 1) = matrix_power(N, len - p) * v;
      }
      cmat R = Kp;
      if (W.cols() > 0) {
        const cmat Qw = linalg::orthonormalize(W);
        R -= Qw * (Qw.adjoint() * Kp);
      }
      Eigen::JacobiSVD<cmat> svd(R, Eigen::ComputeFullV);
      for (int c = 0; c < count; ++c) chains.emplace_back(p, (Kp * svd.matrixV().col(c)).normalized());
    }

    std::vector<int> sizes;
    for (const auto& [len, v] : chains) {
      sizes.push_back(len);
      for (int j = 0; j < len; ++j) {
        out.c.col(col + j) = Z * (matrix_power(N, len - 1 - j) * v);
        out.j(col + j, col + j) = cl->lambda;
        if (j > 0) out.j(col + j - 1, col + j) = 1.0;
      }
      col += len;
    }
    out.blocks.push_back(sizes);
  }
  if (col != n) throw ConstructionError("jordan_reduce: chains do not span C^n");

  for (int j = 0; j < n; ++j) out.lambdas.push_back(out.j(j, j) / 2.0);
  for (int j = 0; j + 1 < n; ++j) out.gammas.push_back(out.j(j, j + 1) == cplx(1.0) ? 1 : 0);
  out.condition = linalg::condition_number(out.c);
  out.ill_conditioned = !(out.condition <= 1e12);
  const cmat Jc = out.c.partialPivLu().solve(M * out.c);
  out.residual = (Jc - out.j).norm() / std::max(1.0, M.norm());
  return out;
}

// ---------------------------------------------------------------------------
// Model operator

bool MonomialMatrix::lower_triangular(double eps) const {
  for (Eigen::Index r = 0; r < matrix.rows(); ++r)
    for (Eigen::Index c = r + 1; c < matrix.cols(); ++c)
      if (std::abs(matrix(r, c)) > eps) return false;
  return true;
}

std::vector<cplx> MonomialMatrix::eigenvalues() const {
  std::vector<cplx> out(matrix.rows());
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) out[i] = matrix(i, i);
  return out;
}

MonomialMatrix model_operator_matrix(const std::vector<cplx>& lambdas, const std::vector<int>& gammas, int degree) {
  const int n = static_cast<int>(lambdas.size());
  if (static_cast<int>(gammas.size()) != std::max(0, n - 1))
    throw InputError("model_operator_matrix: expected n - 1 gammas");
  MonomialMatrix mm;
  std::vector<int> alpha(n, 0);
  auto rec = [&](auto&& self, int j, int left) -> void {
    if (j == n) {
      mm.basis.push_back(alpha);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      alpha[j] = a;
      self(self, j + 1, left - a);
    }
    alpha[j] = 0;
  };
  rec(rec, 0, degree);
  auto key = [](const std::vector<int>& a) {
    int deg = 0, w = 0;
    for (size_t j = 0; j < a.size(); ++j) {
      deg += a[j];
      w += static_cast<int>(j) * a[j];
    }
    return std::make_tuple(deg, w, a);
  };
  std::sort(mm.basis.begin(), mm.basis.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < mm.basis.size(); ++i) index[mm.basis[i]] = static_cast<int>(i);

  const int dim = static_cast<int>(mm.basis.size());
  mm.matrix = cmat::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    const auto& a = mm.basis[s];
    cplx d = 0.0;
    for (int j = 0; j < n; ++j) d += (lambdas[j] / I) * (2.0 * a[j] + 1.0);
    mm.matrix(s, s) = d;
    for (int j = 0; j + 1 < n; ++j) {
      if (gammas[j] == 0 || a[j] == 0) continue;
      std::vector<int> t = a;
      --t[j];
      ++t[j + 1];
      mm.matrix(index.at(t), s) += static_cast<double>(gammas[j] * a[j]) / I;
    }
  }
  return mm;
}

// ---------------------------------------------------------------------------
// Critical values

QuadraticPhase bargmann_phase(const cmat& B) {
  const auto n = B.rows();
  const cmat Id = cmat::Identity(n, n);
  QuadraticPhase ph;
  ph.n = static_cast<int>(n);
  ph.N = 0;
  ph.P.resize(2 * n, 2 * n);
  ph.P << I * Id - B, -I * Id, -I * Id, I * Id;
  return ph;
}

QuadraticPhase scaling_phase(const cmat& C) {
  const auto n = C.rows();
  QuadraticPhase ph;
  ph.n = static_cast<int>(n);
  ph.N = static_cast<int>(n);
  ph.P = cmat::Zero(3 * n, 3 * n);
  ph.P.block(0, 2 * n, n, n) = C.transpose();
  ph.P.block(2 * n, 0, n, n) = C;
  ph.P.block(n, 2 * n, n, n) = -cmat::Identity(n, n);
  ph.P.block(2 * n, n, n, n) = -cmat::Identity(n, n);
  return ph;
}

namespace {

// Hessian of -Im phi in (Re w, Im w).
rmat neg_im_phase_hessian(const QuadraticPhase& ph) {
  const auto m = ph.P.rows();
  return WeightForm::from_complex(0.5 * I * ph.P, cmat::Zero(m, m)).hessian;
}

rmat take(const rmat& H, const std::vector<int>& rows, const std::vector<int>& cols) {
  rmat out(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) out(i, j) = H(rows[i], cols[j]);
  return out;
}

CriticalValue eliminate(const rmat& H, const std::vector<int>& xs, const std::vector<int>& zs,
                        const Tolerances& tol) {
  const rmat Hxx = take(H, xs, xs), Hxz = take(H, xs, zs), Hzz = take(H, zs, zs);
  CriticalValue cv;
  cv.signature = form_signature(Hzz, tol);
  if (cv.signature.zero > 0) throw TransversalityError("critical value: degenerate form in the integration variables");
  const rmat T = Hxx - Hxz * Hzz.partialPivLu().solve(Hxz.transpose());
  cv.target = WeightForm(0.5 * (T + T.transpose()));
  return cv;
}

}  // namespace

CriticalValue critical_value_weight(const QuadraticPhase& phase, const WeightForm& source, const Tolerances& tol) {
  const int n = phase.n, m = 2 * phase.n + phase.N;
  if (phase.P.rows() != m || source.n() != n) throw InputError("critical_value_weight: dimension mismatch");
  rmat H = neg_im_phase_hessian(phase);
  std::vector<int> ys;
  for (int a = 0; a < n; ++a) ys.push_back(n + a);
  for (int a = 0; a < n; ++a) ys.push_back(m + n + a);
  for (size_t i = 0; i < ys.size(); ++i)
    for (size_t j = 0; j < ys.size(); ++j) H(ys[i], ys[j]) += source.hessian(i, j);
  std::vector<int> xs, zs;
  for (int a = 0; a < 2 * m; ++a) ((a % m) < n ? xs : zs).push_back(a);
  return eliminate(H, xs, zs, tol);
}

CriticalValue critical_value_weight_real(const QuadraticPhase& phase, const Tolerances& tol) {
  const int n = phase.n, m = 2 * phase.n;
  if (phase.N != 0 || phase.P.rows() != m) throw InputError("critical_value_weight_real: expected N = 0");
  const rmat H = neg_im_phase_hessian(phase);
  std::vector<int> xs, zs;
  for (int a = 0; a < n; ++a) xs.push_back(a);
  for (int a = 0; a < n; ++a) xs.push_back(m + a);
  for (int a = 0; a < n; ++a) zs.push_back(n + a);
  CriticalValue cv = eliminate(H, xs, zs, tol);
  if (cv.signature.minus != n) throw TransversalityError("critical value: form in real y is not negative definite");
  return cv;
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

// Max over greedy nearest pairs between two multisets of equal size.
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  while (!a.empty()) {
    size_t bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j)
        if (std::abs(a[i] - b[j]) < best) {
          best = std::abs(a[i] - b[j]);
          bi = i;
          bj = j;
        }
    worst = std::max(worst, best);
    a.erase(a.begin() + bi);
    b.erase(b.begin() + bj);
  }
  return worst;
}

double relative_block(const cmat& part, const cmat& whole) { return part.norm() / std::max(1e-300, whole.norm()); }

}  // namespace

NormalForm normal_form(const QuadraticSymbol& q_norm, const EigenAnalysis& ea, const Tolerances& tol) {
  const int n = q_norm.n;
  NormalForm nf;
  const HalfPlaneSplit split = half_plane_split(ea, tol);
  nf.preparation = prepare_lambda_minus(q_norm, split, tol);
  nf.bargmann = bargmann_data(nf.preparation.a_plus);
  nf.transformed = transformed_symbol(nf.preparation.q, nf.bargmann.kappa_t, tol);
  nf.jordan = jordan_reduce(nf.transformed.m, tol);
  nf.phi1 = nf.bargmann.phi0.composed(nf.jordan.c);

  NormalFormChecks& ck = nf.checks;
  const cmat prep_c = nf.preparation.prep.cast<cplx>();
  const cmat& kt = nf.bargmann.kappa_t;
  ck.prep_symplectic_defect = symplectic_defect(prep_c);
  ck.kappa_t_symplectic_defect = symplectic_defect(kt);
  cmat kc = cmat::Zero(2 * n, 2 * n);
  kc.topLeftCorner(n, n) = nf.jordan.c.inverse();
  kc.bottomRightCorner(n, n) = nf.jordan.c.transpose();
  ck.kappa_c_symplectic_defect = symplectic_defect(kc);

  const cmat minus_img = kt * prep_c * split.minus.frame();
  const cmat plus_img = kt * prep_c * split.plus.frame();
  ck.fiber_residual = relative_block(minus_img.topRows(n), minus_img);
  ck.base_residual = relative_block(plus_img.bottomRows(n), plus_img);

  const cmat S0 = nf.bargmann.phi0.xx_block(), L0 = nf.bargmann.phi0.levi();
  for (int k = 0; k < 2 * n; ++k) {
    const cvec X = kt.col(k);
    const cvec x = X.head(n);
    const cvec expected = (2.0 / I) * (S0 * x + L0.transpose() * x.conjugate());
    ck.lambda_phi0_residual =
        std::max(ck.lambda_phi0_residual, (X.tail(n) - expected).norm() / std::max(1.0, X.norm()));
  }
  ck.b_symmetry = (nf.bargmann.b - nf.bargmann.b.transpose()).norm();

  std::vector<cplx> upper2;
  for (const auto& c : ea.clusters)
    if (c.lambda.imag() > 0)
      for (cplx v : c.members) upper2.push_back(2.0 * v);
  Eigen::ComplexEigenSolver<cmat> ces(nf.transformed.m, false);
  std::vector<cplx> spec_m(ces.eigenvalues().data(), ces.eigenvalues().data() + n);
  ck.spectrum_residual = multiset_distance(spec_m, upper2);

  ck.phi0_min_eig = nf.bargmann.phi0.min_eigenvalue();
  ck.phi1_min_eig = nf.phi1.min_eigenvalue();

  const rmat& H0 = nf.bargmann.phi0.hessian;
  const CriticalValue cv0 = critical_value_weight_real(bargmann_phase(nf.bargmann.b), tol);
  ck.phi0_critical_error = (cv0.target.hessian - H0).norm() / std::max(1.0, H0.norm());
  ck.phi0_signature = cv0.signature;
  const CriticalValue cv1 = critical_value_weight(scaling_phase(nf.jordan.c), nf.bargmann.phi0, tol);
  ck.phi1_critical_error = (cv1.target.hessian - nf.phi1.hessian).norm() / std::max(1.0, nf.phi1.hessian.norm());
  ck.phi1_signature = cv1.signature;

  if (ea.ambiguous) nf.warnings.push_back("eigenvalue clustering is ambiguous; Jordan structure is indeterminate");
  if (nf.jordan.ill_conditioned)
    nf.warnings.push_back("Jordan basis condition number " + std::to_string(nf.jordan.condition) +
                          " exceeds 1e12; near-defective");
  if (ck.phi0_min_eig <= 0.0) nf.warnings.push_back("Phi0 is not strictly convex");
  if (ck.phi1_min_eig <= 0.0) nf.warnings.push_back("Phi1 is not strictly convex");
  if (!(ck.phi1_signature == Signature{2 * n, 2 * n, 0}))
    nf.warnings.push_back("critical-value signature differs from (2n, 2n)");
  return nf;
}

}  // namespace qsymm
