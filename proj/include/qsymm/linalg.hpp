#pragma once

#include <vector>

#include "qsymm/types.hpp"

namespace qsymm::linalg {

/// Real 2m x 2m matrix of the complex-linear map v -> A v acting on the
/// stacking (Re v, Im v).
rmat realify(const cmat& A);

/// Real 2m x 2m matrix of the antilinear map v -> Q conj(v) acting on the
/// stacking (Re v, Im v).
rmat realify_antilinear(const cmat& Q);

rvec stack_real(const cvec& v);
cvec unstack_real(const rvec& v);

/// Rank from singular values: counts sigma_i > threshold.
int numerical_rank(const cmat& A, double threshold);

/// Orthonormal basis of the span of the trailing `dim` right singular
/// vectors of A (a numerical kernel of prescribed dimension).
cmat kernel_basis(const cmat& A, int dim);

/// Orthonormal basis for the column span of A (thin QR with column pivoting).
cmat orthonormalize(const cmat& A);

double condition_number(const cmat& A);

/// Complex Schur form A = Z T Z^H with T upper triangular.
struct SchurForm {
  cmat T;
  cmat Z;
};

SchurForm complex_schur(const cmat& A);

/// Reorders a Schur form by unitary Givens swaps of adjacent diagonal
/// entries so that every entry flagged in `select` (indexed by the current
/// diagonal position) moves to the leading block, preserving relative order.
/// Returns the size of the leading block.
int reorder_schur(SchurForm& schur, std::vector<bool> select);

/// Largest singular value.
double spectral_norm(const cmat& A);

}  // namespace qsymm::linalg
