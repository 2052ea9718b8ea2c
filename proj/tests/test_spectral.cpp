#include <doctest.h>

#include "helpers.hpp"
#include "qsymm/linalg.hpp"
#include "qsymm/quadform.hpp"
#include "qsymm/spectral.hpp"

using namespace qsymm;
using namespace qsymm::testing;

namespace {

const double kMu1 = 1.17557050458494625833741190928;
const double kMu2 = 1.90211303259030714423287866676;
const double kSqrt25 = 1.58113883008418966599944677222;

EigenAnalysis analysis_of(const QuadraticSymbol& q) { return eigen_analysis(fundamental_matrix(q)); }

std::vector<double> real_values(const SpectrumLattice& L) {
  std::vector<double> out;
  for (const auto& e : L.entries) out.push_back(e.value.real());
  return out;
}

}  // namespace

TEST_CASE("harmonic oscillator clusters") {
  const auto ea = analysis_of(harmonic());
  REQUIRE(ea.clusters.size() == 2);
  CHECK(std::abs(ea.clusters[0].lambda + I) < 1e-14);
  CHECK(std::abs(ea.clusters[1].lambda - I) < 1e-14);
  for (const auto& c : ea.clusters) {
    CHECK(c.alg_mult == 1);
    CHECK(c.geom_mult == 1);
    CHECK(c.segre == std::vector<int>{1});
  }
  CHECK(ea.diagonalizable());
  CHECK_FALSE(ea.ambiguous);
}

TEST_CASE("coupled oscillator eigenvalues at g = 1") {
  const auto ea = analysis_of(coupled(1.0));
  REQUIRE(ea.clusters.size() == 4);
  const auto up = upper_eigenvalues(ea);
  REQUIRE(up.size() == 2);
  CHECK(std::abs(up[0] - I * kMu2) < 1e-12);
  CHECK(std::abs(up[1] - I * kMu1) < 1e-12);
  CHECK(ea.diagonalizable());
}

TEST_CASE("coupled oscillator at the exceptional point g = 3/2") {
  const auto ea = analysis_of(coupled(1.5));
  REQUIRE(ea.clusters.size() == 2);
  for (const auto& c : ea.clusters) {
    CHECK(std::abs(std::abs(c.lambda) - kSqrt25) < 1e-7);
    CHECK(std::abs(c.lambda.real()) < 1e-7);
    CHECK(c.alg_mult == 2);
    CHECK(c.geom_mult == 1);
    CHECK(c.segre == std::vector<int>{2});
    CHECK(c.subspace.cols() == 2);
  }
  CHECK_FALSE(ea.diagonalizable());
  const cmat F = fundamental_matrix(coupled(1.5));
  const cmat shifted = F - ea.clusters[1].lambda * cmat::Identity(4, 4);
  CHECK(linalg::numerical_rank(shifted, 1e-8 * std::max(1.0, linalg::spectral_norm(F))) == 3);
}

TEST_CASE("generalized eigenspaces are invariant and annihilated") {
  for (double g : {0.0, 1.0, 1.5, 2.0}) {
    const auto ea = analysis_of(coupled(g));
    const cmat& F = ea.F;
    int total = 0;
    for (const auto& c : ea.clusters) {
      total += c.alg_mult;
      cmat P = c.subspace;
      const cmat shifted = F - c.lambda * cmat::Identity(F.rows(), F.cols());
      for (int k = 0; k < c.alg_mult; ++k) P = shifted * P;
      CHECK(P.norm() < 1e-6);
    }
    CHECK(total == 4);
  }
}

TEST_CASE("Segre characters of a hand-built Jordan matrix") {
  cmat F = cmat::Zero(6, 6);
  F.diagonal() << 2.0 * I, 2.0 * I, 2.0 * I, -2.0 * I, -2.0 * I, -2.0 * I;
  F(0, 1) = 1.0;
  F(1, 2) = 1.0;
  F(3, 4) = 1.0;
  const auto ea = eigen_analysis(F);
  REQUIRE(ea.clusters.size() == 2);
  CHECK(ea.clusters[0].segre == std::vector<int>{2, 1});
  CHECK(ea.clusters[0].geom_mult == 2);
  CHECK(ea.clusters[1].segre == std::vector<int>{3});
}

TEST_CASE("half-plane split") {
  const auto split = half_plane_split(analysis_of(harmonic()));
  CHECK(std::abs(graph_matrix(split.plus)(0, 0) - I) < 1e-13);
  CHECK(std::abs(graph_matrix(split.minus)(0, 0) + I) < 1e-13);

  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    QuadraticSymbol q = random_elliptic(n, rng);
    q = q.scaled(ellipticity_certificate(q).z);
    const auto s = half_plane_split(analysis_of(q));
    CHECK(s.plus.n() == n);
    CHECK(s.plus.lagrangian_defect() < 1e-10);
    CHECK(s.minus.lagrangian_defect() < 1e-10);
    const auto R = RealSubspace::real_phase_space(n);
    CHECK(positivity_form(s.plus, R).positive());
    CHECK(positivity_form(s.minus, R).negative());
  }
  const auto s15 = half_plane_split(analysis_of(coupled(1.5)));
  CHECK(s15.plus.lagrangian_defect() < 1e-8);
  CHECK(positivity_form(s15.plus, RealSubspace::real_phase_space(2)).positive());
}

TEST_CASE("lattice examples") {
  const auto h = lattice_spectrum({1.0}, 1.0, 7.0);
  CHECK(real_values(h) == std::vector<double>{1, 3, 5, 7});
  CHECK(h.real_cutoff);

  const auto two = lattice_spectrum({2.0, 1.0}, 1.0, 9.0);
  const auto vals = real_values(two);
  REQUIRE(vals.size() == 6);
  const std::vector<double> expected{3, 5, 7, 7, 9, 9};
  for (size_t k = 0; k < 6; ++k) CHECK(vals[k] == doctest::Approx(expected[k]).epsilon(1e-15));
  const auto g = two.grouped();
  REQUIRE(g.size() == 4);
  CHECK(g[2].second == 2);
  CHECK(g[3].second == 2);
}

TEST_CASE("lattice at g = 1") {
  const double want[] = {3.077683537175253402570291, 5.428824546345145919245114, 6.881909602355867691036048,
                         7.779965555515038435919938, 9.233050611525760207710872, 10.13110656468493095259476};
  const auto L = lattice_spectrum({kMu1, kMu2}, 1.0, 10.2);
  REQUIRE(L.entries.size() == 6);
  for (int k = 0; k < 6; ++k) CHECK(std::abs(L.entries[k].value - want[k]) < 1e-13);
  CHECK(L.entries[0].nu == std::vector<int>{0, 0});
}

TEST_CASE("lattice of a rotated symbol is divided by z") {
  const auto L = lattice_spectrum({1.0}, I, 7.0);
  CHECK_FALSE(L.real_cutoff);
  for (const auto& e : L.entries) CHECK(std::abs(e.value.real()) < 1e-15);
  CHECK(L.entries.size() == 4);
}

TEST_CASE("nonreal lattice is closed under conjugation for PT symbols") {
  const auto ea = analysis_of(coupled(2.0));
  std::vector<cplx> mu;
  for (const cplx& l : upper_eigenvalues(ea)) mu.push_back(l / I);
  const auto L = lattice_spectrum(mu, 1.0, 12.0);
  CHECK_FALSE(L.real_cutoff);
  std::vector<cplx> vals, conj;
  for (const auto& e : L.entries) {
    vals.push_back(e.value);
    conj.push_back(std::conj(e.value));
  }
  CHECK(multiset_distance(vals, conj) < 1e-10);
}

TEST_CASE("lattice by degree") {
  const auto e = lattice_by_degree({2.0, 1.0}, 2);
  CHECK(e.size() == 6);
}

TEST_CASE("similarity classification of the coupled oscillator") {
  const auto v1 = classify(analysis_of(coupled(1.0)), 1.0);
  CHECK(v1.similarity == Similarity::SelfAdjointSimilar);
  CHECK(v1.real_spectrum);
  CHECK(v1.normal_similar);

  const auto v15 = classify(analysis_of(coupled(1.5)), 1.0);
  CHECK(v15.similarity == Similarity::RealSpectrumNotSimilar);
  CHECK(v15.real_spectrum);
  CHECK_FALSE(v15.normal_similar);

  const auto v2 = classify(analysis_of(coupled(2.0)), 1.0);
  CHECK(v2.similarity == Similarity::NonrealSpectrum);
  CHECK_FALSE(v2.real_spectrum);

  CHECK(to_string(Similarity::SelfAdjointSimilar) == "REAL_SPECTRUM_SELF_ADJOINT_SIMILAR");
  CHECK(to_string(Similarity::Indeterminate) == "INDETERMINATE");
  CHECK_FALSE(describe(Similarity::NonrealSpectrum).empty());
}

TEST_CASE("nearly coincident eigenvalues are indeterminate") {
  cmat F = cmat::Zero(4, 4);
  F.diagonal() << I, I + 1e-6, -I, -I - 1e-6;
  const auto ea = eigen_analysis(F);
  CHECK(ea.ambiguous);
  CHECK(classify(ea, 1.0).similarity == Similarity::Indeterminate);
}

TEST_CASE("analysis is deterministic") {
  const auto a = analysis_of(coupled(1.2));
  const auto b = analysis_of(coupled(1.2));
  REQUIRE(a.clusters.size() == b.clusters.size());
  for (size_t k = 0; k < a.clusters.size(); ++k) CHECK(a.clusters[k].lambda == b.clusters[k].lambda);
}

TEST_CASE("Schur reordering keeps the factorization") {
  Rng rng(32);
  const cmat A = random_complex(5, 5, rng);
  auto s = linalg::complex_schur(A);
  std::vector<bool> sel{false, true, false, true, false};
  const cplx d1 = s.T(1, 1), d3 = s.T(3, 3);
  const int k = linalg::reorder_schur(s, sel);
  CHECK(k == 2);
  CHECK(std::abs(s.T(0, 0) - d1) < 1e-10);
  CHECK(std::abs(s.T(1, 1) - d3) < 1e-10);
  CHECK((s.Z * s.T * s.Z.adjoint() - A).norm() < 1e-12);
  CHECK(s.T.triangularView<Eigen::StrictlyLower>().toDenseMatrix().norm() < 1e-13);
}
