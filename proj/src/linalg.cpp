#include "qsymm/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qsymm/tolerance.hpp"

namespace qsymm {

Tolerances Tolerances::from_env() { return Tolerances{}.with_env_override(); }

Tolerances Tolerances::with_env_override() const {
  Tolerances t = *this;
  if (const char* s = std::getenv("QSYMM_TOL_OVERRIDE"); s != nullptr && *s != '\0') {
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end != s && v > 0.0) t.rel = v;
  }
  return t;
}

}  // namespace qsymm

namespace qsymm::linalg {

rmat realify(const cmat& A) {
  const auto r = A.rows(), c = A.cols();
  rmat R(2 * r, 2 * c);
  R.topLeftCorner(r, c) = A.real();
  R.topRightCorner(r, c) = -A.imag();
  R.bottomLeftCorner(r, c) = A.imag();
  R.bottomRightCorner(r, c) = A.real();
  return R;
}

rmat realify_antilinear(const cmat& Q) {
  const auto r = Q.rows(), c = Q.cols();
  rmat R(2 * r, 2 * c);
  R.topLeftCorner(r, c) = Q.real();
  R.topRightCorner(r, c) = Q.imag();
  R.bottomLeftCorner(r, c) = Q.imag();
  R.bottomRightCorner(r, c) = -Q.real();
  return R;
}

rvec stack_real(const cvec& v) {
  rvec out(2 * v.size());
  out << v.real(), v.imag();
  return out;
}

cvec unstack_real(const rvec& v) {
  const auto m = v.size() / 2;
  cvec out(m);
  for (Eigen::Index i = 0; i < m; ++i) out(i) = cplx(v(i), v(m + i));
  return out;
}

int numerical_rank(const cmat& A, double threshold) {
  if (A.size() == 0) return 0;
  Eigen::JacobiSVD<cmat> svd(A);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > threshold) ++r;
  return r;
}

cmat kernel_basis(const cmat& A, int dim) {
  const auto c = A.cols();
  if (dim <= 0) return cmat(c, 0);
  Eigen::JacobiSVD<cmat> svd(A, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(dim);
}

cmat orthonormalize(const cmat& A) {
  Eigen::ColPivHouseholderQR<cmat> qr(A);
  cmat Q = qr.householderQ() * cmat::Identity(A.rows(), A.cols());
  return Q;
}

double condition_number(const cmat& A) {
  Eigen::JacobiSVD<cmat> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double lo = s(s.size() - 1);
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / lo;
}

double spectral_norm(const cmat& A) {
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<cmat> svd(A);
  return svd.singularValues()(0);
}

SchurForm complex_schur(const cmat& A) {
  Eigen::ComplexSchur<cmat> cs(A, true);
  SchurForm out{cs.matrixT(), cs.matrixU()};
  // ComplexSchur leaves rounding-level garbage below the diagonal.
  out.T.triangularView<Eigen::StrictlyLower>().setZero();
  return out;
}

namespace {

// Swaps diagonal entries k and k+1 of the triangular factor.
void swap_adjacent(SchurForm& s, Eigen::Index k) {
  cmat& T = s.T;
  const cplx a = T(k, k);
  const cplx b = T(k, k + 1);
  const cplx c = T(k + 1, k + 1);
  // First column of G is the eigenvector of [[a, b], [0, c]] for c.
  cplx v0 = b, v1 = c - a;
  const double nv = std::hypot(std::abs(v0), std::abs(v1));
  if (nv == 0.0) return;
  v0 /= nv;
  v1 /= nv;
  Eigen::Matrix2cd G;
  G << v0, -std::conj(v1), v1, std::conj(v0);

  T.middleRows(k, 2) = G.adjoint() * T.middleRows(k, 2);
  T.middleCols(k, 2) = T.middleCols(k, 2) * G;
  s.Z.middleCols(k, 2) = s.Z.middleCols(k, 2) * G;
  T(k, k) = c;
  T(k + 1, k + 1) = a;
  T(k + 1, k) = 0.0;
}

}  // namespace

int reorder_schur(SchurForm& schur, std::vector<bool> select) {
  const auto n = static_cast<Eigen::Index>(select.size());
  Eigen::Index dest = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!select[i]) continue;
    for (Eigen::Index k = i - 1; k >= dest; --k) {
      swap_adjacent(schur, k);
      std::swap(select[k], select[k + 1]);
    }
    ++dest;
  }
  return static_cast<int>(dest);
}

}  // namespace qsymm::linalg
