#pragma once

#include <optional>

#include "qsymm/tolerance.hpp"
#include "qsymm/types.hpp"

namespace qsymm {

/// A point (x, xi) of complex phase space C^{2n}.
struct PhaseVector {
  cvec x;
  cvec xi;

  PhaseVector() = default;
  PhaseVector(cvec x_, cvec xi_);

  /// Splits a stacked 2n-vector (x; xi).
  static PhaseVector from_stacked(const cvec& v);
  cvec stacked() const;
  int dim() const { return static_cast<int>(x.size()); }
};

/// sigma((x, xi), (y, eta)) = xi.y - eta.x, bilinear (no conjugation).
cplx symplectic_form(const PhaseVector& X, const PhaseVector& Y);
cplx symplectic_form(const cvec& X, const cvec& Y);

/// Matrix J of sigma in stacked coordinates: sigma(X, Y) = X^t J Y.
rmat sigma_matrix(int n);

/// ||S^t J S - J|| / max(1, ||S||^2): zero for maps preserving sigma.
double symplectic_defect(const cmat& S);

/// Lift K(x, xi) = (kappa x, -kappa^t xi) of a linear involution of R^n.
/// Throws InputError unless kappa^2 = I within tolerance.
rmat lift_involution(const rmat& kappa, const Tolerances& tol = {});

/// An n-dimensional complex subspace of C^{2n} on which sigma vanishes.
///
/// The frame always has orthonormal columns. A graph matrix A (plane
/// = {(x, A x)}) is cached when the plane was built from one.
class LagrangianPlane {
 public:
  /// Orthonormalizes `frame` and checks the Lagrangian condition against
  /// `tol.structure`. Throws InputError on rank deficiency or when sigma does
  /// not vanish on the span.
  static LagrangianPlane from_frame(const cmat& frame, const Tolerances& tol = {});
  /// Plane {(x, A x)}; A must be symmetric within `tol.rel`.
  static LagrangianPlane from_graph(const cmat& A, const Tolerances& tol = {});

  const cmat& frame() const { return frame_; }
  const std::optional<cmat>& graph() const { return graph_; }
  int n() const { return static_cast<int>(frame_.cols()); }

  /// max |sigma(v_i, v_j)| over frame columns.
  double lagrangian_defect() const;

  /// Image of the plane under a complex-linear map of C^{2n}.
  LagrangianPlane mapped(const cmat& S, const Tolerances& tol = {}) const;

 private:
  LagrangianPlane(cmat frame, std::optional<cmat> graph)
      : frame_(std::move(frame)), graph_(std::move(graph)) {}
  cmat frame_;
  std::optional<cmat> graph_;
};

/// Real quadratic form on C^n ~ R^{2n}, Phi(x) = 1/2 v^t H v with
/// v = (Re x, Im x).
struct WeightForm {
  rmat hessian;

  WeightForm() = default;
  explicit WeightForm(rmat h);

  /// Phi(x) = Re(S x.x) + (L x).conj(x), i.e. S = Phi''_{x,x} and
  /// L = Phi''_{xbar,x} (Hermitian).
  static WeightForm from_complex(const cmat& S, const cmat& L);
  static WeightForm zero(int n);

  int n() const { return static_cast<int>(hessian.rows() / 2); }
  double operator()(const cvec& x) const;

  /// Phi''_{x,x}: complex symmetric.
  cmat xx_block() const;
  /// Phi''_{xbar,x}: Hermitian (the Levi matrix).
  cmat levi() const;

  /// Phi(C x) for a complex n x n matrix C.
  WeightForm composed(const cmat& C) const;

  /// Smallest eigenvalue of the real Hessian; > 0 iff strictly convex.
  double min_eigenvalue() const;
};

struct WeightSplit {
  WeightForm plh;
  WeightForm herm;
};

/// Phi_plh(x) = (Phi(x) - Phi(ix))/2, Phi_herm(x) = (Phi(x) + Phi(ix))/2.
WeightSplit plh_herm_split(const WeightForm& phi);

/// Antilinear map v -> Q conj(v) on C^{2n}.
struct AntilinearMap {
  cmat Q;
  cvec operator()(const cvec& v) const { return Q * v.conjugate(); }
  /// Real-linear 4n x 4n matrix on the (Re, Im) stacking.
  rmat realified() const;
};

/// A maximal totally real symplectic subspace Sigma of C^{2n}, carried by
/// its antilinear involution iota (identity on Sigma).
class RealSubspace {
 public:
  /// Sigma = R^{2n}, iota = complex conjugation.
  static RealSubspace real_phase_space(int n);
  /// Sigma = Lambda_Phi = {(x, (2/i) dPhi/dx)}. Requires a nondegenerate
  /// Levi matrix; throws InputError otherwise.
  static RealSubspace weighted(const WeightForm& phi);

  int n() const { return n_; }
  const AntilinearMap& involution() const { return iota_; }
  /// Real 2n-dimensional spanning frame of Sigma as complex 2n-vectors.
  const cmat& real_frame() const { return frame_; }

 private:
  RealSubspace(int n, AntilinearMap iota, cmat frame)
      : n_(n), iota_(std::move(iota)), frame_(std::move(frame)) {}
  int n_;
  AntilinearMap iota_;
  cmat frame_;
};

/// Frame of Lambda_Phi over C^n -> C^{2n} as a real-linear parametrization:
/// column k of the returned 2n x 2n complex matrix is the image of the real
/// coordinate direction e_k of (Re x, Im x).
cmat weighted_plane_frame(const WeightForm& phi);

struct Signature {
  int plus = 0;
  int minus = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
};

/// Eigenvalue sign counts of a real symmetric matrix; eigenvalues with
/// |e| <= rank_rel * max|e| count as zero.
Signature form_signature(const rmat& Q, const Tolerances& tol = {});

/// Hermitian Gram matrix of b(rho, mu) = (1/i) sigma(rho, iota(mu)) on a
/// Lagrangian plane, with its signature.
struct PositivityForm {
  cmat gram;
  Signature signature;
  /// 1 / min |eigenvalue|: blows up as the plane approaches Sigma.
  double inverse_norm = 0.0;

  bool positive() const { return signature.plus == gram.rows(); }
  bool negative() const { return signature.minus == gram.rows(); }
  /// The form is degenerate, i.e. the plane meets Sigma.
  bool meets_sigma() const { return signature.zero > 0; }
};

/// Gram matrix of b on the columns of an arbitrary frame.
cmat positivity_gram(const cmat& frame, const RealSubspace& sigma);

PositivityForm positivity_form(const LagrangianPlane& plane, const RealSubspace& sigma,
                               const Tolerances& tol = {});

/// Symmetric A with plane = {(x, A x)}. Throws TransversalityError when the
/// x-block of the frame is singular at the rank tolerance.
cmat graph_matrix(const LagrangianPlane& plane, const Tolerances& tol = {});

}  // namespace qsymm
