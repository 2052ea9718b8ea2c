#include "qsymm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "qsymm/errors.hpp"

namespace qsymm {

namespace {

bool by_im_re(cplx a, cplx b) {
  if (a.imag() != b.imag()) return a.imag() < b.imag();
  return a.real() < b.real();
}

// Union-find style single linkage over eigenvalues.
std::vector<std::vector<int>> single_linkage(const std::vector<cplx>& ev, double tol) {
  const int m = static_cast<int>(ev.size());
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (std::abs(ev[i] - ev[j]) <= tol) parent[find(i)] = find(j);
  std::vector<std::vector<int>> groups;
  std::vector<int> slot(m, -1);
  for (int i = 0; i < m; ++i) {
    const int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

}  // namespace

bool EigenAnalysis::diagonalizable() const {
  for (const auto& c : clusters)
    if (c.geom_mult != c.alg_mult) return false;
  return true;
}

EigenAnalysis eigen_analysis(const cmat& F, const Tolerances& tol) {
  if (F.rows() != F.cols() || F.rows() == 0) throw InputError("eigen_analysis: F must be square and nonempty");
  EigenAnalysis out;
  out.F = F;
  out.schur = linalg::complex_schur(F);
  out.cluster_tol = tol.cluster_tol(F.norm());

  const int m = static_cast<int>(F.rows());
  std::vector<cplx> ev(m);
  for (int i = 0; i < m; ++i) ev[i] = out.schur.T(i, i);
  auto groups = single_linkage(ev, out.cluster_tol);

  out.min_separation = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < groups.size(); ++a)
    for (size_t b = a + 1; b < groups.size(); ++b)
      for (int i : groups[a])
        for (int j : groups[b]) out.min_separation = std::min(out.min_separation, std::abs(ev[i] - ev[j]));
  out.ambiguous = out.min_separation <= 10.0 * out.cluster_tol;

  const double fnorm = std::max(1.0, linalg::spectral_norm(F));
  for (const auto& g : groups) {
    EigenCluster c;
    c.alg_mult = static_cast<int>(g.size());
    cplx sum = 0.0;
    for (int i : g) {
      c.members.push_back(ev[i]);
      sum += ev[i];
    }
    c.lambda = sum / static_cast<double>(g.size());
    std::sort(c.members.begin(), c.members.end(), by_im_re);

    linalg::SchurForm s = out.schur;
    std::vector<bool> select(m, false);
    for (int i : g) select[i] = true;
    const int k = linalg::reorder_schur(s, select);
    c.subspace = s.Z.leftCols(k);

    const cmat N = s.T.topLeftCorner(k, k) - c.lambda * cmat::Identity(k, k);
    std::vector<int> ranks{k};
    cmat P = cmat::Identity(k, k);
    double thr = tol.rank_rel;
    while (ranks.back() > 0) {
      P = P * N;
      thr *= fnorm;
      const int r = linalg::numerical_rank(P, thr);
      if (r >= ranks.back()) break;  // guards against a non-nilpotent block
      ranks.push_back(r);
    }
    if (ranks.back() != 0) ranks.push_back(0);
    c.geom_mult = k - ranks[1];
    // b_p = ranks[p-1] - ranks[p] blocks of size >= p.
    std::vector<int> at_least;
    for (size_t p = 1; p < ranks.size(); ++p) at_least.push_back(ranks[p - 1] - ranks[p]);
    at_least.push_back(0);
    for (size_t p = at_least.size() - 1; p-- > 0;) {
      const int exact = at_least[p] - at_least[p + 1];
      for (int j = 0; j < exact; ++j) c.segre.push_back(static_cast<int>(p + 1));
    }
    std::sort(c.segre.rbegin(), c.segre.rend());
    out.clusters.push_back(std::move(c));
  }
  std::sort(out.clusters.begin(), out.clusters.end(),
            [](const EigenCluster& a, const EigenCluster& b) { return by_im_re(a.lambda, b.lambda); });
  return out;
}

HalfPlaneSplit half_plane_split(const EigenAnalysis& ea, const Tolerances& tol) {
  const int m = static_cast<int>(ea.F.rows());
  const int n = m / 2;
  auto leading = [&](bool upper) {
    linalg::SchurForm s = ea.schur;
    std::vector<bool> select(m);
    for (int i = 0; i < m; ++i) {
      const double im = s.T(i, i).imag();
      if (std::abs(im) <= ea.cluster_tol)
        throw ConstructionError("half_plane_split: eigenvalue on the real axis");
      select[i] = upper ? im > 0 : im < 0;
    }
    const int k = linalg::reorder_schur(s, select);
    if (k != n)
      throw ConstructionError("half_plane_split: " + std::string(upper ? "upper" : "lower") +
                              " invariant subspace has dimension " + std::to_string(k) + ", expected " +
                              std::to_string(n));
    return LagrangianPlane::from_frame(s.Z.leftCols(k), tol);
  };
  return {leading(true), leading(false)};
}

std::vector<cplx> upper_eigenvalues(const EigenAnalysis& ea) {
  std::vector<cplx> out;
  for (const auto& c : ea.clusters)
    if (c.lambda.imag() > 0)
      for (int j = 0; j < c.alg_mult; ++j) out.push_back(c.lambda);
  std::stable_sort(out.begin(), out.end(), [](cplx a, cplx b) { return a.imag() > b.imag(); });
  return out;
}

// ---------------------------------------------------------------------------
// Lattice

namespace {

void enumerate(const std::vector<cplx>& mu, const std::vector<int>& bound, std::vector<int>& nu, size_t j,
               const std::function<void(const std::vector<int>&)>& visit) {
  if (j == mu.size()) {
    visit(nu);
    return;
  }
  for (int v = 0; v <= bound[j]; ++v) {
    nu[j] = v;
    enumerate(mu, bound, nu, j + 1, visit);
  }
}

cplx lattice_value(const std::vector<cplx>& mu, const std::vector<int>& nu) {
  cplx s = 0.0;
  for (size_t j = 0; j < mu.size(); ++j) s += mu[j] * (2.0 * nu[j] + 1.0);
  return s;
}

void sort_entries(std::vector<LatticeEntry>& e) {
  std::sort(e.begin(), e.end(), [](const LatticeEntry& a, const LatticeEntry& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    if (a.value.imag() != b.value.imag()) return a.value.imag() < b.value.imag();
    return a.nu < b.nu;
  });
}

}  // namespace

SpectrumLattice lattice_spectrum(const std::vector<cplx>& mu, cplx z, double cutoff) {
  SpectrumLattice L;
  L.mu = mu;
  L.z = z;
  const double scale = std::accumulate(mu.begin(), mu.end(), 0.0, [](double a, cplx b) { return a + std::abs(b); });
  for (cplx m : mu) {
    const cplx w = m / z;
    if (!(w.real() > 0.0) || std::abs(w.imag()) > 1e-12 * std::max(1.0, scale)) L.real_cutoff = false;
  }
  std::vector<int> bound(mu.size());
  for (size_t j = 0; j < mu.size(); ++j) {
    const double re = mu[j].real();
    if (!(re > 0.0)) throw InputError("lattice_spectrum: mu must have positive real part");
    bound[j] = std::max(-1, static_cast<int>(std::floor((cutoff / re - 1.0) / 2.0 + 1e-12)));
  }
  std::vector<int> nu(mu.size(), 0);
  enumerate(mu, bound, nu, 0, [&](const std::vector<int>& v) {
    const cplx val = lattice_value(mu, v) / z;
    const double key = L.real_cutoff ? val.real() : std::abs(val);
    if (key <= cutoff * (1.0 + 1e-12)) L.entries.push_back({val, v});
  });
  sort_entries(L.entries);
  return L;
}

std::vector<std::pair<cplx, int>> SpectrumLattice::grouped(double eps) const {
  std::vector<std::pair<cplx, int>> out;
  for (const auto& e : entries) {
    bool merged = false;
    for (auto& [v, count] : out)
      if (std::abs(v - e.value) <= eps * std::max(1.0, std::abs(v))) {
        ++count;
        merged = true;
        break;
      }
    if (!merged) out.emplace_back(e.value, 1);
  }
  return out;
}

std::vector<LatticeEntry> lattice_by_degree(const std::vector<cplx>& mu, int degree) {
  std::vector<LatticeEntry> out;
  std::vector<int> bound(mu.size(), degree);
  std::vector<int> nu(mu.size(), 0);
  enumerate(mu, bound, nu, 0, [&](const std::vector<int>& v) {
    if (std::accumulate(v.begin(), v.end(), 0) <= degree) out.push_back({lattice_value(mu, v), v});
  });
  sort_entries(out);
  return out;
}

// ---------------------------------------------------------------------------
// Verdict

std::string to_string(Similarity s) {
  switch (s) {
    case Similarity::SelfAdjointSimilar: return "REAL_SPECTRUM_SELF_ADJOINT_SIMILAR";
    case Similarity::RealSpectrumNotSimilar: return "REAL_SPECTRUM_NOT_SIMILAR";
    case Similarity::NonrealSpectrum: return "NONREAL_SPECTRUM";
    case Similarity::Indeterminate: return "INDETERMINATE";
  }
  return "INDETERMINATE";
}

std::string describe(Similarity s) {
  switch (s) {
    case Similarity::SelfAdjointSimilar:
      return "spectrum is real and the operator is similar to a self-adjoint operator";
    case Similarity::RealSpectrumNotSimilar:
      return "spectrum is real but F has Jordan blocks, so the operator is not similar to a self-adjoint operator";
    case Similarity::NonrealSpectrum:
      return "spectrum is not real; the similarity criterion does not apply";
    case Similarity::Indeterminate:
      return "indeterminate near exceptional point";
  }
  return "";
}

Verdict classify(const EigenAnalysis& ea, cplx z, const Tolerances& tol) {
  Verdict v;
  double top = 0.0, worst = 0.0;
  bool jordan = false;
  for (const auto& c : ea.clusters) {
    if (c.lambda.imag() <= 0) continue;
    const cplx w = (c.lambda / I) / z;
    top = std::max(top, std::abs(w));
    worst = std::max(worst, std::abs(w.imag()));
    if (c.geom_mult != c.alg_mult) jordan = true;
  }
  v.max_imag_ratio = top > 0.0 ? worst / top : 0.0;
  v.real_spectrum = v.max_imag_ratio <= tol.rank_rel;
  v.normal_similar = !ea.ambiguous && ea.diagonalizable();
  if (ea.ambiguous) {
    v.similarity = Similarity::Indeterminate;
    v.note = "eigenvalue clusters closer than 10x the cluster tolerance";
  } else if (!v.real_spectrum) {
    v.similarity = Similarity::NonrealSpectrum;
  } else {
    v.similarity = jordan ? Similarity::RealSpectrumNotSimilar : Similarity::SelfAdjointSimilar;
  }
  return v;
}

}  // namespace qsymm
