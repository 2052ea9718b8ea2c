#include "qsymm/quadform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "qsymm/linalg.hpp"

namespace qsymm {

namespace {

void require_shape(const cmat& M, int n, const char* name) {
  if (M.rows() != n || M.cols() != n)
    throw InputError(std::string(name) + " must be " + std::to_string(n) + "x" + std::to_string(n) + ", got " +
                     std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
}

cmat symmetrized(const cmat& M, const char* name, const Tolerances& tol) {
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = i + 1; j < M.cols(); ++j)
      if (std::abs(M(i, j) - M(j, i)) > tol.rel * scale)
        throw InputError(std::string(name) + " asymmetric at (" + std::to_string(i) + "," + std::to_string(j) +
                         ")");
  return 0.5 * (M + M.transpose());
}

}  // namespace

QuadraticSymbol QuadraticSymbol::make(cmat A, cmat B, cmat C, std::optional<rmat> kappa, const Tolerances& tol) {
  const int n = static_cast<int>(A.rows());
  if (n == 0) throw InputError("symbol dimension n must be positive");
  require_shape(A, n, "A");
  require_shape(B, n, "B");
  require_shape(C, n, "C");
  QuadraticSymbol q;
  q.n = n;
  q.A = symmetrized(A, "A", tol);
  q.B = std::move(B);
  q.C = symmetrized(C, "C", tol);
  if (kappa) {
    if (kappa->rows() != n || kappa->cols() != n) throw InputError("kappa must be " + std::to_string(n) + "x" +
                                                                   std::to_string(n));
    lift_involution(*kappa, tol);
    q.kappa = std::move(kappa);
  }
  return q;
}

cmat QuadraticSymbol::phase_matrix() const {
  cmat Q(2 * n, 2 * n);
  Q.topLeftCorner(n, n) = A;
  Q.topRightCorner(n, n) = B.transpose();
  Q.bottomLeftCorner(n, n) = B;
  Q.bottomRightCorner(n, n) = C;
  return Q;
}

QuadraticSymbol QuadraticSymbol::from_phase_matrix(const cmat& Q, std::optional<rmat> kappa) {
  const cmat S = 0.5 * (Q + Q.transpose());
  const int n = static_cast<int>(S.rows() / 2);
  QuadraticSymbol q;
  q.n = n;
  q.A = S.topLeftCorner(n, n);
  q.B = S.bottomLeftCorner(n, n);
  q.C = S.bottomRightCorner(n, n);
  q.kappa = std::move(kappa);
  return q;
}

QuadraticSymbol QuadraticSymbol::scaled(cplx z) const {
  QuadraticSymbol q = *this;
  q.A *= z;
  q.B *= z;
  q.C *= z;
  return q;
}

QuadraticSymbol QuadraticSymbol::pulled_back(const cmat& S_inverse) const {
  return from_phase_matrix(S_inverse.transpose() * phase_matrix() * S_inverse, kappa);
}

double QuadraticSymbol::scale() const { return std::max(1.0, phase_matrix().norm()); }

QuadraticSymbol SymbolFamily::at(double p) const {
  QuadraticSymbol q = base;
  q.A += p * direction.A;
  q.B += p * direction.B;
  q.C += p * direction.C;
  return q;
}

cplx evaluate(const QuadraticSymbol& q, const PhaseVector& X) { return polarization(q, X, X); }

cplx polarization(const QuadraticSymbol& q, const PhaseVector& X, const PhaseVector& Y) {
  if (X.dim() != q.n || Y.dim() != q.n) throw InputError("evaluate: dimension mismatch");
  const cvec x = X.stacked(), y = Y.stacked();
  return (x.transpose() * q.phase_matrix() * y).value();
}

// ---------------------------------------------------------------------------
// Ellipticity

double rotated_min_eigenvalue(const QuadraticSymbol& q, double theta) {
  const cmat Q = q.phase_matrix();
  const rmat R = (std::polar(1.0, theta) * Q).real();
  Eigen::SelfAdjointEigenSolver<rmat> es(0.5 * (R + R.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

namespace {

constexpr int kThetaGrid = 720;

double golden_max(const QuadraticSymbol& q, double lo, double hi) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = rotated_min_eigenvalue(q, c), fd = rotated_min_eigenvalue(q, d);
  while (b - a > 1e-12) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = rotated_min_eigenvalue(q, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = rotated_min_eigenvalue(q, d);
    }
  }
  return 0.5 * (a + b);
}

// Minimizes |q(X)|^2 over the real unit sphere by projected gradient descent
// from several starts.
std::pair<rvec, double> min_modulus_direction(const QuadraticSymbol& q) {
  const cmat Q = q.phase_matrix();
  const int m = 2 * q.n;
  auto value = [&](const rvec& X) { return std::abs((X.transpose().cast<cplx>() * Q * X.cast<cplx>()).value()); };

  std::vector<rvec> starts;
  for (int k = 0; k < 24; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / 24.0;
    const rmat R = (std::polar(1.0, theta) * Q).real();
    Eigen::SelfAdjointEigenSolver<rmat> es(0.5 * (R + R.transpose()));
    starts.push_back(es.eigenvectors().col(0));
  }
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 24; ++k) {
    rvec v(m);
    for (int i = 0; i < m; ++i) v(i) = nd(rng);
    starts.push_back(v.normalized());
  }

  rvec best = starts.front();
  double best_val = value(best);
  for (rvec X : starts) {
    X.normalize();
    double f = value(X);
    double step = 0.1;
    for (int it = 0; it < 4000 && f > 0.0 && step > 1e-16; ++it) {
      const cplx qx = (X.transpose().cast<cplx>() * Q * X.cast<cplx>()).value();
      rvec grad = 4.0 * (std::conj(qx) * (Q * X.cast<cplx>())).real();
      grad -= grad.dot(X) * X;  // tangent to the sphere
      if (grad.norm() == 0.0) break;
      const rvec trial = (X - step * grad).normalized();
      const double ft = value(trial);
      if (ft * ft < f * f) {
        X = trial;
        f = ft;
        step *= 1.5;
      } else {
        step *= 0.5;
      }
    }
    if (f < best_val) {
      best_val = f;
      best = X;
    }
  }
  return {best, best_val};
}

}  // namespace

NormalizationCertificate ellipticity_certificate(const QuadraticSymbol& q, const Tolerances& tol) {
  std::array<double, kThetaGrid> f{};
  int best = 0;
  for (int k = 0; k < kThetaGrid; ++k) {
    f[k] = rotated_min_eigenvalue(q, 2.0 * std::numbers::pi * k / kThetaGrid);
    if (f[k] > f[best]) best = k;
  }
  const double h = 2.0 * std::numbers::pi / kThetaGrid;
  double theta = golden_max(q, (best - 1) * h, (best + 1) * h);
  double fmax = rotated_min_eigenvalue(q, theta);
  if (f[best] > fmax) {
    theta = best * h;
    fmax = f[best];
  }

  if (q.kappa && pt_check(q, tol).holds) {
    const double fp = rotated_min_eigenvalue(q, 0.0);
    const double fm = rotated_min_eigenvalue(q, std::numbers::pi);
    theta = fp >= fm ? 0.0 : std::numbers::pi;
    fmax = std::max(fp, fm);
  }

  const double scale = q.scale();
  if (fmax > tol.rel * scale) {
    NormalizationCertificate cert;
    cert.z = theta == 0.0 ? cplx(1.0) : theta == std::numbers::pi ? cplx(-1.0) : std::polar(1.0, theta);
    cert.min_eig = fmax;
    return cert;
  }

  auto [X, residual] = min_modulus_direction(q);
  const bool zero_found = residual <= 1e-8 * scale;
  const bool full_range = q.n == 1 && !zero_found;
  PhaseVector dir(X.head(q.n).cast<cplx>(), X.tail(q.n).cast<cplx>());
  std::string what = full_range ? "not elliptic (full range): no z makes Re(z q) positive definite"
                                : "not elliptic: q has a real zero at |X| = 1 (|q(X)| = " +
                                      std::to_string(residual) + ")";
  throw NotEllipticError(what, std::move(dir), residual, full_range);
}

// ---------------------------------------------------------------------------
// PT symmetry

PtVerdict pt_check(const QuadraticSymbol& q, const Tolerances& tol) {
  if (!q.kappa) throw InputError("pt_check: symbol has no involution kappa");
  const cmat k = q.kappa->cast<cplx>();
  PtVerdict v;
  v.residual_A = (q.A.conjugate() - k.transpose() * q.A * k).norm();
  v.residual_B = (q.B.conjugate() + k * q.B * k).norm();
  v.residual_C = (q.C.conjugate() - k * q.C * k.transpose()).norm();
  v.scale = std::max(1.0, (q.A.norm() + q.B.norm() + q.C.norm()) * std::max(1.0, k.squaredNorm()));
  const double bound = tol.rel * v.scale;
  v.holds = v.residual_A <= bound && v.residual_B <= bound && v.residual_C <= bound;
  return v;
}

cmat fundamental_matrix(const QuadraticSymbol& q) {
  const int n = q.n;
  cmat F(2 * n, 2 * n);
  F.topLeftCorner(n, n) = q.B;
  F.topRightCorner(n, n) = q.C;
  F.bottomLeftCorner(n, n) = -q.A;
  F.bottomRightCorner(n, n) = -q.B.transpose();
  return F;
}

double ptf_residual(const QuadraticSymbol& q) {
  if (!q.kappa) throw InputError("ptf_residual: symbol has no involution kappa");
  const rmat F = linalg::realify(fundamental_matrix(q));
  const rmat KC = AntilinearMap{lift_involution(*q.kappa, Tolerances{1e-6}).cast<cplx>()}.realified();
  return (F + KC * F * KC).norm() / std::max(1.0, F.norm());
}

}  // namespace qsymm
