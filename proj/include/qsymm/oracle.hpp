#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/SparseCore>

#include "qsymm/quadform.hpp"
#include "qsymm/spectral.hpp"
#include "qsymm/types.hpp"

namespace qsymm::oracle {

using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::ColMajor>;

/// Weyl quantization of q restricted to the first `cutoff` Hermite functions
/// of each mode (tensor basis, last mode fastest).
struct HermiteTruncation {
  int n = 0;
  int cutoff = 0;
  SparseMatrix matrix;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Refuses (InputError) when cutoff < 4 or cutoff^n > 10^4.
HermiteTruncation quantize(const QuadraticSymbol& q, int cutoff);

/// Eigenvalues sorted by (Re, Im). The matrix is split into the two
/// total-parity sectors, each solved densely.
std::vector<cplx> truncated_eigenvalues(const HermiteTruncation& t);

struct ComparisonRow {
  cplx oracle;
  cplx lattice;
  double error = 0.0;
  bool flagged = false;
};

struct Comparison {
  std::vector<ComparisonRow> rows;  // ordered by Re of the lattice value
  double max_error = 0.0;
  int flagged = 0;
};

/// Matches the k oracle eigenvalues of smallest real part with the first k
/// lattice entries by repeated global nearest pairing. Rows with error above
/// `window` are flagged.
Comparison compare_spectra(const std::vector<cplx>& oracle_eigenvalues, const SpectrumLattice& lattice, int k,
                           double window = 1e-4);

struct ConditionRow {
  double param = 0.0;
  cplx ev1, ev2;  // closest pair of upper half-plane eigenvalues of F
  double gap = 0.0;
  double cond = 0.0;  // cond of F's eigenvector matrix, unit columns
};

std::vector<ConditionRow> exceptional_condition_sweep(const SymbolFamily& family, const std::vector<double>& grid);

void write_condition_csv(std::ostream& os, const std::vector<ConditionRow>& rows);

}  // namespace qsymm::oracle
