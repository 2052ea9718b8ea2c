#pragma once

#include <string>
#include <vector>

#include "qsymm/linalg.hpp"
#include "qsymm/symplectic.hpp"
#include "qsymm/tolerance.hpp"
#include "qsymm/types.hpp"

namespace qsymm {

struct EigenCluster {
  cplx lambda;                // mean of the member eigenvalues
  std::vector<cplx> members;  // raw Schur diagonal entries
  int alg_mult = 0;
  int geom_mult = 0;
  std::vector<int> segre;  // Jordan block sizes, descending
  cmat subspace;           // orthonormal frame of the generalized eigenspace
};

struct EigenAnalysis {
  cmat F;
  linalg::SchurForm schur;
  std::vector<EigenCluster> clusters;  // sorted by (Im, Re)
  double cluster_tol = 0.0;
  /// Two distinct clusters lie within 10 * cluster_tol.
  bool ambiguous = false;
  /// Smallest distance between eigenvalues of distinct clusters.
  double min_separation = 0.0;

  bool diagonalizable() const;
};

/// Clusters the spectrum of F by single linkage at `tol.cluster_tol(||F||)`
/// and computes multiplicities and Segre characters from rank staircases on
/// the reordered triangular block of each cluster.
EigenAnalysis eigen_analysis(const cmat& F, const Tolerances& tol = {});

struct HalfPlaneSplit {
  LagrangianPlane plus;
  LagrangianPlane minus;
};

/// Lambda_plus / Lambda_minus: invariant subspaces for the eigenvalues with
/// Im > 0 / Im < 0. Throws ConstructionError unless both are n-dimensional.
HalfPlaneSplit half_plane_split(const EigenAnalysis& ea, const Tolerances& tol = {});

/// Upper half-plane eigenvalues with multiplicity (cluster representatives),
/// ordered by descending Im.
std::vector<cplx> upper_eigenvalues(const EigenAnalysis& ea);

struct LatticeEntry {
  cplx value;
  std::vector<int> nu;
};

struct SpectrumLattice {
  std::vector<cplx> mu;  // lambda_j / i, normalized symbol
  cplx z{1.0, 0.0};      // values are divided by z
  bool real_cutoff = true;
  std::vector<LatticeEntry> entries;  // sorted by (Re, Im, nu)

  /// Distinct values (within `eps`) with multiplicity counts.
  std::vector<std::pair<cplx, int>> grouped(double eps = 1e-9) const;
};

/// All values (1/z) sum_j mu_j (2 nu_j + 1) up to `cutoff`: a bound on Re when
/// every value is real and positive, on |value| otherwise.
SpectrumLattice lattice_spectrum(const std::vector<cplx>& mu, cplx z, double cutoff);

/// Values sum_j mu_j (2 nu_j + 1) for all |nu| <= degree.
std::vector<LatticeEntry> lattice_by_degree(const std::vector<cplx>& mu, int degree);

enum class Similarity { SelfAdjointSimilar, RealSpectrumNotSimilar, NonrealSpectrum, Indeterminate };

std::string to_string(Similarity s);
/// Plain-language form of the verdict.
std::string describe(Similarity s);

struct Verdict {
  Similarity similarity = Similarity::Indeterminate;
  bool real_spectrum = false;
  bool normal_similar = false;
  double max_imag_ratio = 0.0;  // max |Im(mu_j / z)| / max |mu_j|
  std::string note;
};

/// Reality test max_j |Im(mu_j / z)| <= tol.rank_rel * max_j |mu_j| plus
/// the Jordan test on the upper clusters. Ambiguous clustering yields
/// Indeterminate.
Verdict classify(const EigenAnalysis& ea, cplx z, const Tolerances& tol = {});

}  // namespace qsymm
