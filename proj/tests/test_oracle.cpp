#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "qsymm/oracle.hpp"
#include "qsymm/spectral.hpp"

using namespace qsymm;
using namespace qsymm::testing;

namespace {

cmat dense(const oracle::HermiteTruncation& t) { return cmat(t.matrix); }

SymbolFamily coupled_family() {
  SymbolFamily fam;
  fam.parameter = "g";
  fam.base = coupled(0.0);
  cmat dA(2, 2);
  dA << 0, I, I, 0;
  fam.direction = QuadraticSymbol::make(dA, cmat::Zero(2, 2), cmat::Zero(2, 2));
  return fam;
}

SpectrumLattice lattice_of(const QuadraticSymbol& q, double cutoff) {
  const auto ea = eigen_analysis(fundamental_matrix(q));
  std::vector<cplx> mu;
  for (const cplx& l : upper_eigenvalues(ea)) mu.push_back(l / I);
  return lattice_spectrum(mu, 1.0, cutoff);
}

}  // namespace

TEST_CASE("harmonic oscillator is diagonal in the Hermite basis") {
  const auto t = oracle::quantize(harmonic(), 8);
  const cmat M = dense(t);
  for (int k = 0; k < 8; ++k) CHECK(std::abs(M(k, k) - double(2 * k + 1)) < 1e-14);
  CHECK((M - cmat(M.diagonal().asDiagonal())).norm() < 1e-14);
}

TEST_CASE("position squared on three Hermite functions") {
  const auto q = QuadraticSymbol::make(cmat::Identity(1, 1), cmat::Zero(1, 1), cmat::Zero(1, 1));
  const auto t = oracle::quantize(q, 4);
  const cmat M = dense(t);
  CHECK(std::abs(M(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(M(1, 1) - 1.5) < 1e-15);
  CHECK(std::abs(M(2, 2) - 2.5) < 1e-15);
  CHECK(std::abs(M(0, 2) - std::sqrt(2.0) / 2.0) < 1e-15);
  CHECK(std::abs(M(2, 0) - std::sqrt(2.0) / 2.0) < 1e-15);
}

TEST_CASE("size guard") {
  CHECK_THROWS_AS(oracle::quantize(harmonic(), 3), InputError);
  Rng rng(51);
  CHECK_THROWS_AS(oracle::quantize(random_elliptic(3, rng), 22), InputError);
  CHECK_NOTHROW(oracle::quantize(random_elliptic(3, rng), 21));
}

TEST_CASE("real symbols give Hermitian matrices") {
  Rng rng(52);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 1 + trial % 2;
    const cmat A = random_symmetric(n, rng).cast<cplx>(), C = random_symmetric(n, rng).cast<cplx>();
    const cmat B = random_real(n, n, rng).cast<cplx>();
    const cmat M = dense(oracle::quantize(QuadraticSymbol::make(A, B, C), 10));
    CHECK((M - M.adjoint()).norm() < 1e-12 * (1 + M.norm()));
    const cmat M0 = dense(oracle::quantize(QuadraticSymbol::make(A, cmat::Zero(n, n), C), 10));
    CHECK(M0.imag().norm() < 1e-14);
    CHECK((M0 - M0.transpose()).norm() < 1e-12 * (1 + M0.norm()));
  }
}

TEST_CASE("decoupled oscillators reproduce the lattice") {
  const auto ev = oracle::truncated_eigenvalues(oracle::quantize(coupled(0.0), 10));
  const double want[] = {3, 5, 7, 7, 9, 9};
  for (int k = 0; k < 6; ++k) CHECK(std::abs(ev[k] - want[k]) < 1e-2);

  const auto ev40 = oracle::truncated_eigenvalues(oracle::quantize(coupled(0.0), 40));
  for (int k = 0; k < 6; ++k) CHECK(std::abs(ev40[k] - want[k]) < 1e-10);
}

TEST_CASE("PT symmetric truncations keep a conjugation-closed low spectrum") {
  const auto ev = oracle::truncated_eigenvalues(oracle::quantize(coupled(1.0), 30));
  std::vector<cplx> low(ev.begin(), ev.begin() + 6), conj;
  for (const cplx& z : low) conj.push_back(std::conj(z));
  CHECK(multiset_distance(low, conj) < 1e-6);
}

TEST_CASE("truncation error decreases with the cutoff") {
  const auto L = lattice_of(coupled(1.0), 12.0);
  double prev = INFINITY;
  for (int N : {10, 20, 30, 40}) {
    const auto cmp = oracle::compare_spectra(oracle::truncated_eigenvalues(oracle::quantize(coupled(1.0), N)), L, 6);
    CHECK(cmp.max_error < prev);
    prev = cmp.max_error;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("spectrum comparison") {
  const auto L = lattice_spectrum({1.0}, 1.0, 11.0);
  const auto ev = oracle::truncated_eigenvalues(oracle::quantize(harmonic(), 8));
  const auto cmp = oracle::compare_spectra(ev, L, 6);
  REQUIRE(cmp.rows.size() == 6);
  CHECK(cmp.max_error < 1e-13);
  CHECK(cmp.flagged == 0);

  std::vector<cplx> shifted = ev;
  shifted[2] += 1e-3;
  const auto bad = oracle::compare_spectra(shifted, L, 6);
  CHECK(bad.flagged == 1);
  CHECK(bad.rows[2].flagged);
}

TEST_CASE("exceptional-point condition sweep") {
  const auto rows = oracle::exceptional_condition_sweep(coupled_family(), {0.0, 1.0, 1.4, 1.45, 1.49, 1.499, 1.5, 2.0});
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].gap == doctest::Approx(1.0).epsilon(1e-12));
  const double gaps[] = {0.726542528005360885895466757481, 0.342604369070972183228633318142,
                         0.243623211508570796735673100172, 0.109427320529194437738762027655,
                         0.0346373200255400399848510621055};
  for (int k = 0; k < 5; ++k) CHECK(std::abs(rows[k + 1].gap - gaps[k]) < 1e-9);
  for (int k = 1; k < 6; ++k) {
    CHECK(rows[k].gap < rows[k - 1].gap);
    CHECK(rows[k].cond > rows[k - 1].cond);
  }
  CHECK(rows[6].gap <= 1e-7);
  CHECK(rows[6].cond >= 1e6);
  CHECK(std::abs(rows[7].ev1.real()) > 0.1);

  std::ostringstream os;
  oracle::write_condition_csv(os, rows);
  CHECK(os.str().rfind("param,re_ev_1,im_ev_1,re_ev_2,im_ev_2,gap,cond\n", 0) == 0);
}
