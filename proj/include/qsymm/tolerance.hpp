#pragma once

namespace qsymm {

/// Single tolerance policy shared by every module.
///
/// `rel` governs algebraic identities (residuals are compared against
/// `rel * scale`), `rank_rel` governs rank decisions made from singular
/// values, and the cluster pair decides when two eigenvalues are the same.
/// `structure` is the looser bound used for subspace-level checks (Lagrangian
/// frames, invariant subspaces) whose accuracy is limited by eigenvector
/// conditioning rather than by rounding.
struct Tolerances {
  double rel = 1e-10;
  double rank_rel = 1e-8;
  double cluster_abs = 1e-8;
  double cluster_rel = 1e-7;
  double structure = 1e-8;

  double cluster_tol(double matrix_norm) const {
    const double t = cluster_rel * matrix_norm;
    return t > cluster_abs ? t : cluster_abs;
  }

  /// Defaults with `rel` replaced by QSYMM_TOL_OVERRIDE when set.
  static Tolerances from_env();
  /// Applies QSYMM_TOL_OVERRIDE on top of an existing policy.
  Tolerances with_env_override() const;
};

}  // namespace qsymm
