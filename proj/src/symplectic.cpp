#include "qsymm/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qsymm/errors.hpp"
#include "qsymm/linalg.hpp"

namespace qsymm {

PhaseVector::PhaseVector(cvec x_, cvec xi_) : x(std::move(x_)), xi(std::move(xi_)) {
  if (x.size() != xi.size())
    throw InputError("PhaseVector: x has length " + std::to_string(x.size()) + " but xi has length " +
                     std::to_string(xi.size()));
}

PhaseVector PhaseVector::from_stacked(const cvec& v) {
  if (v.size() % 2 != 0) throw InputError("PhaseVector: stacked vector has odd length");
  const auto n = v.size() / 2;
  return PhaseVector(v.head(n), v.tail(n));
}

cvec PhaseVector::stacked() const {
  cvec v(2 * x.size());
  v << x, xi;
  return v;
}

cplx symplectic_form(const PhaseVector& X, const PhaseVector& Y) {
  if (X.dim() != Y.dim())
    throw InputError("symplectic_form: dimension mismatch (" + std::to_string(X.dim()) + " vs " +
                     std::to_string(Y.dim()) + ")");
  // Plain bilinear dot products; Eigen's dot() would conjugate.
  return (X.xi.transpose() * Y.x).value() - (Y.xi.transpose() * X.x).value();
}

cplx symplectic_form(const cvec& X, const cvec& Y) {
  return symplectic_form(PhaseVector::from_stacked(X), PhaseVector::from_stacked(Y));
}

rmat sigma_matrix(int n) {
  rmat J = rmat::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = -rmat::Identity(n, n);
  J.bottomLeftCorner(n, n) = rmat::Identity(n, n);
  return J;
}

double symplectic_defect(const cmat& S) {
  const int n = static_cast<int>(S.rows() / 2);
  const cmat J = sigma_matrix(n).cast<cplx>();
  const double scale = std::max(1.0, linalg::spectral_norm(S));
  return (S.transpose() * J * S - J).norm() / (scale * scale);
}

rmat lift_involution(const rmat& kappa, const Tolerances& tol) {
  if (kappa.rows() != kappa.cols()) throw InputError("involution: kappa must be square");
  const auto n = kappa.rows();
  const double scale = std::max(1.0, kappa.squaredNorm());
  const double defect = (kappa * kappa - rmat::Identity(n, n)).norm();
  if (defect > tol.rel * scale * 10.0)
    throw InputError("invalid involution: ||kappa^2 - I|| = " + std::to_string(defect));
  rmat K = rmat::Zero(2 * n, 2 * n);
  K.topLeftCorner(n, n) = kappa;
  K.bottomRightCorner(n, n) = -kappa.transpose();
  return K;
}

// ---------------------------------------------------------------------------
// LagrangianPlane

namespace {

double max_sigma_gram(const cmat& V) {
  const int n = static_cast<int>(V.rows() / 2);
  const cmat G = V.transpose() * sigma_matrix(n).cast<cplx>() * V;
  return G.cwiseAbs().maxCoeff();
}

}  // namespace

LagrangianPlane LagrangianPlane::from_frame(const cmat& frame, const Tolerances& tol) {
  if (frame.rows() != 2 * frame.cols())
    throw InputError("LagrangianPlane: frame must be 2n x n, got " + std::to_string(frame.rows()) + " x " +
                     std::to_string(frame.cols()));
  const double s = linalg::spectral_norm(frame);
  if (s == 0.0 || linalg::numerical_rank(frame, tol.rank_rel * s) < frame.cols())
    throw InputError("LagrangianPlane: frame does not have full column rank");
  cmat Q = linalg::orthonormalize(frame);
  const double defect = max_sigma_gram(Q);
  if (defect > tol.structure)
    throw InputError("LagrangianPlane: sigma does not vanish on the frame (defect " + std::to_string(defect) +
                     ")");
  return LagrangianPlane(std::move(Q), std::nullopt);
}

LagrangianPlane LagrangianPlane::from_graph(const cmat& A, const Tolerances& tol) {
  if (A.rows() != A.cols()) throw InputError("LagrangianPlane: graph matrix must be square");
  const double scale = std::max(1.0, A.norm());
  if ((A - A.transpose()).norm() > tol.rel * scale)
    throw InputError("LagrangianPlane: graph matrix is not symmetric");
  const auto n = A.rows();
  cmat F(2 * n, n);
  F << cmat::Identity(n, n), A;
  return LagrangianPlane(linalg::orthonormalize(F), cmat(0.5 * (A + A.transpose())));
}

double LagrangianPlane::lagrangian_defect() const { return max_sigma_gram(frame_); }

LagrangianPlane LagrangianPlane::mapped(const cmat& S, const Tolerances& tol) const {
  return from_frame(S * frame_, tol);
}

// ---------------------------------------------------------------------------
// WeightForm

WeightForm::WeightForm(rmat h) : hessian(std::move(h)) {
  if (hessian.rows() != hessian.cols() || hessian.rows() % 2 != 0)
    throw InputError("WeightForm: Hessian must be square of even size");
}

WeightForm WeightForm::from_complex(const cmat& S, const cmat& L) {
  const auto n = S.rows();
  rmat H(2 * n, 2 * n);
  H.topLeftCorner(n, n) = S.real() + L.real();
  H.topRightCorner(n, n) = -S.imag() - L.imag();
  H.bottomLeftCorner(n, n) = -S.imag() + L.imag();
  H.bottomRightCorner(n, n) = -S.real() + L.real();
  H *= 2.0;
  return WeightForm(0.5 * (H + H.transpose()));
}

WeightForm WeightForm::zero(int n) { return WeightForm(rmat::Zero(2 * n, 2 * n)); }

double WeightForm::operator()(const cvec& x) const {
  const rvec v = linalg::stack_real(x);
  return 0.5 * v.dot(hessian * v);
}

cmat WeightForm::xx_block() const {
  const auto n = hessian.rows() / 2;
  const rmat Huu = hessian.topLeftCorner(n, n), Huw = hessian.topRightCorner(n, n);
  const rmat Hwu = hessian.bottomLeftCorner(n, n), Hww = hessian.bottomRightCorner(n, n);
  return 0.25 * ((Huu - Hww).cast<cplx>() - I * (Huw + Hwu).cast<cplx>());
}

cmat WeightForm::levi() const {
  const auto n = hessian.rows() / 2;
  const rmat Huu = hessian.topLeftCorner(n, n), Huw = hessian.topRightCorner(n, n);
  const rmat Hwu = hessian.bottomLeftCorner(n, n), Hww = hessian.bottomRightCorner(n, n);
  return 0.25 * ((Huu + Hww).cast<cplx>() + I * (Hwu - Huw).cast<cplx>());
}

WeightForm WeightForm::composed(const cmat& C) const {
  const rmat R = linalg::realify(C);
  const rmat H = R.transpose() * hessian * R;
  return WeightForm(0.5 * (H + H.transpose()));
}

double WeightForm::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<rmat> es(hessian, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

WeightSplit plh_herm_split(const WeightForm& phi) {
  const int n = phi.n();
  const rmat Jm = linalg::realify(I * cmat::Identity(n, n));
  const rmat Hi = Jm.transpose() * phi.hessian * Jm;  // Hessian of x -> Phi(ix)
  return {WeightForm(0.5 * (phi.hessian - Hi)), WeightForm(0.5 * (phi.hessian + Hi))};
}

// ---------------------------------------------------------------------------
// Real subspaces and positivity

rmat AntilinearMap::realified() const { return linalg::realify_antilinear(Q); }

RealSubspace RealSubspace::real_phase_space(int n) {
  return RealSubspace(n, AntilinearMap{cmat::Identity(2 * n, 2 * n)}, cmat::Identity(2 * n, 2 * n));
}

cmat weighted_plane_frame(const WeightForm& phi) {
  const int n = phi.n();
  const cmat S = phi.xx_block();
  const cmat L = phi.levi();
  const cplx two_over_i = 2.0 / I;
  cmat frame(2 * n, 2 * n);
  for (int k = 0; k < 2 * n; ++k) {
    cvec x = cvec::Zero(n);
    x(k % n) = k < n ? cplx(1.0) : I;
    frame.col(k) << x, two_over_i * (S * x + L.transpose() * x.conjugate());
  }
  return frame;
}

RealSubspace RealSubspace::weighted(const WeightForm& phi) {
  const int n = phi.n();
  const cmat S = phi.xx_block();
  const cmat L = phi.levi();
  Eigen::FullPivLU<cmat> lu(L);
  if (!lu.isInvertible() || linalg::condition_number(L) > 1e12)
    throw InputError("weighted real subspace: Levi matrix is degenerate");
  const cmat Linv = lu.inverse();
  const cplx two_over_i = 2.0 / I;
  // iota(y, eta) = (x, (2/i)(S x + L^t conj(y))) with
  // x = L^{-1}((-i/2) conj(eta) - conj(S) conj(y)).
  const cmat Qxy = -Linv * S.conjugate();
  const cmat Qxe = (-0.5 * I) * Linv;
  cmat Q(2 * n, 2 * n);
  Q.topLeftCorner(n, n) = Qxy;
  Q.topRightCorner(n, n) = Qxe;
  Q.bottomLeftCorner(n, n) = two_over_i * (S * Qxy + L.transpose());
  Q.bottomRightCorner(n, n) = two_over_i * (S * Qxe);
  return RealSubspace(n, AntilinearMap{Q}, weighted_plane_frame(phi));
}

namespace {

Signature signature_of(const rvec& eig, double rank_rel) {
  Signature s;
  const double top = eig.size() ? eig.cwiseAbs().maxCoeff() : 0.0;
  const double thr = rank_rel * top;
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (top == 0.0 || std::abs(eig(i)) <= thr)
      ++s.zero;
    else if (eig(i) > 0)
      ++s.plus;
    else
      ++s.minus;
  }
  return s;
}

}  // namespace

Signature form_signature(const rmat& Q, const Tolerances& tol) {
  const rmat S = 0.5 * (Q + Q.transpose());
  Eigen::SelfAdjointEigenSolver<rmat> es(S, Eigen::EigenvaluesOnly);
  return signature_of(es.eigenvalues(), tol.rank_rel);
}

cmat positivity_gram(const cmat& V, const RealSubspace& sigma) {
  const int n = static_cast<int>(V.rows() / 2);
  if (n != sigma.n()) throw InputError("positivity_gram: dimension mismatch");
  const cmat J = sigma_matrix(n).cast<cplx>();
  const cmat b = (1.0 / I) * (V.transpose() * J * sigma.involution().Q * V.conjugate());
  return 0.5 * (b + b.adjoint());
}

PositivityForm positivity_form(const LagrangianPlane& plane, const RealSubspace& sigma, const Tolerances& tol) {
  const cmat b = positivity_gram(plane.frame(), sigma);
  Eigen::SelfAdjointEigenSolver<cmat> es(b, Eigen::EigenvaluesOnly);
  const rvec& e = es.eigenvalues();
  PositivityForm out;
  out.gram = b;
  out.signature = signature_of(e, tol.rank_rel);
  const double lo = e.cwiseAbs().minCoeff();
  out.inverse_norm = lo > 0.0 ? 1.0 / lo : std::numeric_limits<double>::infinity();
  return out;
}

cmat graph_matrix(const LagrangianPlane& plane, const Tolerances& tol) {
  if (plane.graph()) return *plane.graph();
  const int n = plane.n();
  const cmat X = plane.frame().topRows(n);
  const cmat Xi = plane.frame().bottomRows(n);
  const double c = linalg::condition_number(X);
  if (!(c * tol.rank_rel < 1.0))
    throw TransversalityError("plane is not transversal to the fiber {x = 0} (cond of x-block " +
                              std::to_string(c) + ")");
  const cmat A = X.transpose().partialPivLu().solve(Xi.transpose()).transpose();
  return 0.5 * (A + A.transpose());
}

}  // namespace qsymm
