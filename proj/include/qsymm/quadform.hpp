#pragma once

#include <optional>
#include <string>

#include "qsymm/errors.hpp"
#include "qsymm/symplectic.hpp"
#include "qsymm/tolerance.hpp"
#include "qsymm/types.hpp"

namespace qsymm {

/// Complex quadratic form q(x, xi) = A x.x + 2 B x.xi + C xi.xi on C^{2n},
/// with an optional linear involution kappa of R^n.
struct QuadraticSymbol {
  int n = 0;
  cmat A;
  cmat B;
  cmat C;
  std::optional<rmat> kappa;

  /// Validates shapes and symmetry of A and C; entries of A, C asymmetric by
  /// at most `tol.rel * scale` are symmetrized, larger asymmetry throws
  /// InputError naming the first offending entry. kappa (if given) must be
  /// an involution.
  static QuadraticSymbol make(cmat A, cmat B, cmat C, std::optional<rmat> kappa = std::nullopt,
                              const Tolerances& tol = {});

  /// Symmetric 2n x 2n matrix Q with q(X) = X^t Q X:
  /// Q = [[A, B^t], [B, C]].
  cmat phase_matrix() const;
  static QuadraticSymbol from_phase_matrix(const cmat& Q, std::optional<rmat> kappa = std::nullopt);

  /// z * q, keeping kappa.
  QuadraticSymbol scaled(cplx z) const;
  /// q o S^{-1} for an invertible linear map S of C^{2n}.
  QuadraticSymbol pulled_back(const cmat& S_inverse) const;

  double scale() const;
};

/// One-parameter family base + p * direction (kappa taken from base).
struct SymbolFamily {
  std::string parameter = "p";
  QuadraticSymbol base;
  QuadraticSymbol direction;

  QuadraticSymbol at(double p) const;
};

cplx evaluate(const QuadraticSymbol& q, const PhaseVector& X);
/// Polarization q(X, Y), symmetric bilinear.
cplx polarization(const QuadraticSymbol& q, const PhaseVector& X, const PhaseVector& Y);

/// Unit-modulus z with Re(z q) positive definite on R^{2n}.
struct NormalizationCertificate {
  cplx z{1.0, 0.0};
  double min_eig = 0.0;
};

/// Thrown for symbols that are not elliptic. Carries the real direction
/// minimizing |q| on the unit sphere.
class NotEllipticError : public Error {
 public:
  NotEllipticError(const std::string& what, PhaseVector direction, double residual, bool full_range)
      : Error(what), direction_(std::move(direction)), residual_(residual), full_range_(full_range) {}
  const PhaseVector& direction() const { return direction_; }
  /// |q(direction)|, ~0 when a real zero was found.
  double residual() const { return residual_; }
  /// n = 1 symbol without real zeros whose range is all of C.
  bool full_range() const { return full_range_; }

 private:
  PhaseVector direction_;
  double residual_;
  bool full_range_;
};

/// Maximizes theta -> lambda_min(Re(e^{i theta} q)) over a 720-point grid
/// refined by golden-section search. PT-symmetric symbols are restricted to
/// z in {+1, -1}. Throws NotEllipticError when the supremum is <= 0.
NormalizationCertificate ellipticity_certificate(const QuadraticSymbol& q, const Tolerances& tol = {});

/// lambda_min(Re(e^{i theta} q)) on R^{2n}.
double rotated_min_eigenvalue(const QuadraticSymbol& q, double theta);

struct PtVerdict {
  bool holds = false;
  double residual_A = 0.0;  // ||conj(A) - kappa^t A kappa||
  double residual_B = 0.0;  // ||conj(B) + kappa B kappa||
  double residual_C = 0.0;  // ||conj(C) - kappa C kappa^t||
  double scale = 1.0;
};

/// Coefficient-level PT test. Throws InputError when kappa is absent.
PtVerdict pt_check(const QuadraticSymbol& q, const Tolerances& tol = {});

/// F = [[B, C], [-A, -B^t]], the unique sigma-skew matrix with
/// q(X, Y) = sigma(X, F Y).
cmat fundamental_matrix(const QuadraticSymbol& q);

/// ||F + (K C) F (K C)|| / max(1, ||F||) with K C the antilinear lift of
/// kappa composed with conjugation, evaluated as real-linear maps.
double ptf_residual(const QuadraticSymbol& q);

}  // namespace qsymm
