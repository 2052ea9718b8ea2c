#include "qsymm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <ostream>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qsymm/errors.hpp"

namespace qsymm::oracle {

namespace {

// Single-mode operators on the first N Hermite functions. Products are
// formed on N + 2 states and then truncated, so x^2 is P x^2 P rather than
// (P x P)^2.
struct ModeOps {
  cmat x, d, xx, dd, xd_dx;
};

ModeOps mode_ops(int N) {
  const int L = N + 2;
  cmat a = cmat::Zero(L, L);
  for (int m = 1; m < L; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
  const cmat ad = a.adjoint();
  const double r2 = std::sqrt(2.0);
  const cmat x = (a + ad) / r2;
  const cmat d = (a - ad) / (I * r2);
  ModeOps ops;
  ops.x = x.topLeftCorner(N, N);
  ops.d = d.topLeftCorner(N, N);
  ops.xx = (x * x).topLeftCorner(N, N);
  ops.dd = (d * d).topLeftCorner(N, N);
  ops.xd_dx = (x * d + d * x).topLeftCorner(N, N);
  return ops;
}

struct Factor {
  int mode;
  const cmat* op;
};

// Adds c * (tensor product of the factors, identity elsewhere).
void add_term(std::vector<Eigen::Triplet<cplx>>& trip, int n, int N, cplx c, const std::vector<Factor>& f) {
  if (c == cplx(0.0)) return;
  std::vector<int> stride(n, 1);
  for (int j = n - 2; j >= 0; --j) stride[j] = stride[j + 1] * N;
  int dim = stride[0] * N;
  for (int col = 0; col < dim; ++col) {
    const int m0 = (col / stride[f[0].mode]) % N;
    for (int r0 = std::max(0, m0 - 2); r0 <= std::min(N - 1, m0 + 2); ++r0) {
      const cplx v0 = (*f[0].op)(r0, m0);
      if (v0 == cplx(0.0)) continue;
      const int row0 = col + (r0 - m0) * stride[f[0].mode];
      if (f.size() == 1) {
        trip.emplace_back(row0, col, c * v0);
        continue;
      }
      const int m1 = (col / stride[f[1].mode]) % N;
      for (int r1 = std::max(0, m1 - 2); r1 <= std::min(N - 1, m1 + 2); ++r1) {
        const cplx v1 = (*f[1].op)(r1, m1);
        if (v1 == cplx(0.0)) continue;
        trip.emplace_back(row0 + (r1 - m1) * stride[f[1].mode], col, c * v0 * v1);
      }
    }
  }
}

std::vector<cplx> zgeev_eigenvalues(cmat A) {
  const lapack_int m = static_cast<lapack_int>(A.rows());
  if (m == 0) return {};
  std::vector<cplx> w(m);
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', m, A.data(), m, w.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw ConstructionError("zgeev failed with info " + std::to_string(info));
  return w;
}

}  // namespace

HermiteTruncation quantize(const QuadraticSymbol& q, int cutoff) {
  if (cutoff < 4) throw InputError("oracle cutoff must be at least 4");
  const int n = q.n;
  double dim = std::pow(static_cast<double>(cutoff), n);
  if (dim > 1e4)
    throw InputError("oracle basis size " + std::to_string(static_cast<long long>(dim)) + " exceeds 10^4");
  const ModeOps ops = mode_ops(cutoff);
  std::vector<Eigen::Triplet<cplx>> trip;
  for (int j = 0; j < n; ++j) {
    add_term(trip, n, cutoff, q.A(j, j), {{j, &ops.xx}});
    add_term(trip, n, cutoff, q.C(j, j), {{j, &ops.dd}});
    add_term(trip, n, cutoff, q.B(j, j), {{j, &ops.xd_dx}});
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      add_term(trip, n, cutoff, q.A(j, k), {{j, &ops.x}, {k, &ops.x}});
      add_term(trip, n, cutoff, q.C(j, k), {{j, &ops.d}, {k, &ops.d}});
      // Weyl symbol 2 B_jk x_k xi_j, commuting factors
      add_term(trip, n, cutoff, 2.0 * q.B(j, k), {{k, &ops.x}, {j, &ops.d}});
    }
  }
  HermiteTruncation t;
  t.n = n;
  t.cutoff = cutoff;
  const int d = static_cast<int>(dim);
  t.matrix.resize(d, d);
  t.matrix.setFromTriplets(trip.begin(), trip.end());
  t.matrix.prune(cplx(0.0));
  return t;
}

std::vector<cplx> truncated_eigenvalues(const HermiteTruncation& t) {
  const int dim = t.dim();
  std::vector<std::vector<int>> sector(2);
  for (int s = 0; s < dim; ++s) {
    int total = 0, rest = s;
    for (int j = 0; j < t.n; ++j) {
      total += rest % t.cutoff;
      rest /= t.cutoff;
    }
    sector[total % 2].push_back(s);
  }
  std::vector<int> where(dim);
  for (int p = 0; p < 2; ++p)
    for (size_t i = 0; i < sector[p].size(); ++i) where[sector[p][i]] = static_cast<int>(i);

  std::vector<cmat> blocks{cmat::Zero(sector[0].size(), sector[0].size()),
                           cmat::Zero(sector[1].size(), sector[1].size())};
  std::vector<int> parity(dim);
  for (int p = 0; p < 2; ++p)
    for (int s : sector[p]) parity[s] = p;
  for (int k = 0; k < t.matrix.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(t.matrix, k); it; ++it) {
      const int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
      if (parity[r] != parity[c]) throw ConstructionError("oracle matrix couples parity sectors");
      blocks[parity[r]](where[r], where[c]) = it.value();
    }

  std::vector<cplx> out;
  for (auto& b : blocks) {
    auto w = zgeev_eigenvalues(std::move(b));
    out.insert(out.end(), w.begin(), w.end());
  }
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

Comparison compare_spectra(const std::vector<cplx>& oracle_eigenvalues, const SpectrumLattice& lattice, int k,
                           double window) {
  const int m = std::min<int>({k, static_cast<int>(oracle_eigenvalues.size()), static_cast<int>(lattice.entries.size())});
  std::vector<cplx> a(oracle_eigenvalues.begin(), oracle_eigenvalues.begin() + m);
  std::vector<cplx> b;
  for (int i = 0; i < m; ++i) b.push_back(lattice.entries[i].value);
  std::vector<bool> used_a(m, false), used_b(m, false);
  Comparison cmp;
  for (int step = 0; step < m; ++step) {
    int bi = -1, bj = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (used_a[i]) continue;
      for (int j = 0; j < m; ++j)
        if (!used_b[j] && std::abs(a[i] - b[j]) < best) {
          best = std::abs(a[i] - b[j]);
          bi = i;
          bj = j;
        }
    }
    used_a[bi] = used_b[bj] = true;
    ComparisonRow row{a[bi], b[bj], best, best > window};
    cmp.rows.push_back(row);
    cmp.max_error = std::max(cmp.max_error, best);
    cmp.flagged += row.flagged ? 1 : 0;
  }
  std::sort(cmp.rows.begin(), cmp.rows.end(), [](const ComparisonRow& x, const ComparisonRow& y) {
    if (x.lattice.real() != y.lattice.real()) return x.lattice.real() < y.lattice.real();
    return x.oracle.real() < y.oracle.real();
  });
  return cmp;
}

std::vector<ConditionRow> exceptional_condition_sweep(const SymbolFamily& family, const std::vector<double>& grid) {
  std::vector<ConditionRow> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double p : grid) {
    const cmat F = fundamental_matrix(family.at(p));
    Eigen::ComplexEigenSolver<cmat> es(F, true);
    std::vector<cplx> upper;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()(i).imag() > 0) upper.push_back(es.eigenvalues()(i));
    ConditionRow row;
    row.param = p;
    row.gap = nan;
    row.ev1 = row.ev2 = cplx(nan, nan);
    for (size_t i = 0; i < upper.size(); ++i)
      for (size_t j = i + 1; j < upper.size(); ++j) {
        const double g = std::abs(upper[i] - upper[j]);
        if (!(g >= row.gap)) {
          row.gap = g;
          const bool ordered = upper[i].imag() <= upper[j].imag();
          row.ev1 = ordered ? upper[i] : upper[j];
          row.ev2 = ordered ? upper[j] : upper[i];
        }
      }
    if (upper.size() == 1) row.ev1 = upper[0];
    cmat V = es.eigenvectors();
    for (Eigen::Index c = 0; c < V.cols(); ++c) V.col(c).normalize();
    Eigen::JacobiSVD<cmat> svd(V);
    const auto& s = svd.singularValues();
    row.cond = s(s.size() - 1) > 0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
    rows.push_back(row);
  }
  return rows;
}

void write_condition_csv(std::ostream& os, const std::vector<ConditionRow>& rows) {
  os << "param,re_ev_1,im_ev_1,re_ev_2,im_ev_2,gap,cond\n";
  os.precision(17);
  for (const auto& r : rows)
    os << r.param << ',' << r.ev1.real() << ',' << r.ev1.imag() << ',' << r.ev2.real() << ',' << r.ev2.imag() << ','
       << r.gap << ',' << r.cond << '\n';
}

}  // namespace qsymm::oracle
