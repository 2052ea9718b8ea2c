#include <doctest.h>

#include "helpers.hpp"
#include "qsymm/errors.hpp"
#include "qsymm/linalg.hpp"
#include "qsymm/symplectic.hpp"

using namespace qsymm;
using namespace qsymm::testing;

namespace {

cvec vec(std::initializer_list<cplx> xs) {
  cvec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (cplx x : xs) v(k++) = x;
  return v;
}

cmat random_symmetric_complex(int n, Rng& rng) {
  const cmat X = random_complex(n, n, rng);
  return 0.5 * (X + X.transpose());
}

cmat graph_frame(const cmat& A) {
  const int n = static_cast<int>(A.rows());
  cmat V(2 * n, n);
  V << cmat::Identity(n, n), A;
  return V;
}

/// Random weight with positive definite Levi matrix.
WeightForm random_psh_weight(int n, Rng& rng) {
  const cmat X = random_complex(n, n, rng);
  const cmat L = X * X.adjoint() + 0.3 * cmat::Identity(n, n);
  return WeightForm::from_complex(random_symmetric_complex(n, rng), L);
}

}  // namespace

TEST_CASE("symplectic form on basis vectors") {
  const PhaseVector e{vec({1.0}), vec({0.0})};
  const PhaseVector f{vec({0.0}), vec({1.0})};
  CHECK(symplectic_form(e, f) == cplx(-1.0));
  CHECK(symplectic_form(f, e) == cplx(1.0));
  CHECK(symplectic_form(e, e) == cplx(0.0));
}

TEST_CASE("symplectic form is bilinear without conjugation") {
  const PhaseVector X{vec({1.0}), vec({I})};
  const PhaseVector Y{vec({1.0}), vec({-I})};
  CHECK(std::abs(symplectic_form(X, Y) - 2.0 * I) < 1e-15);
}

TEST_CASE("symplectic form rejects mismatched dimensions") {
  const PhaseVector X{vec({1.0}), vec({0.0})};
  const PhaseVector Y{vec({1.0, 0.0}), vec({0.0, 0.0})};
  CHECK_THROWS_AS(symplectic_form(X, Y), InputError);
  CHECK_THROWS_AS(symplectic_form(vec({1.0, 2.0}), vec({1.0, 2.0, 3.0})), InputError);
}

TEST_CASE("symplectic form is antisymmetric and matches its matrix") {
  Rng rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 3;
    const cvec X = random_cvec(2 * n, rng), Y = random_cvec(2 * n, rng);
    const cplx s = symplectic_form(X, Y);
    CHECK(std::abs(s + symplectic_form(Y, X)) <= 1e-14 * (1 + std::abs(s)));
    const cplx viaJ = (X.transpose() * sigma_matrix(n).cast<cplx>() * Y)(0, 0);
    CHECK(std::abs(s - viaJ) <= 1e-13);
  }
}

TEST_CASE("lift of an involution") {
  rmat k1(1, 1);
  k1 << -1;
  rmat K1 = lift_involution(k1);
  CHECK(K1(0, 0) == -1.0);
  CHECK(K1(1, 1) == 1.0);

  rmat swap(2, 2);
  swap << 0, 1, 1, 0;
  rmat K2 = lift_involution(swap);
  CHECK((K2.topLeftCorner(2, 2) - swap).norm() == 0.0);
  CHECK((K2.bottomRightCorner(2, 2) + swap).norm() == 0.0);
  CHECK(K2.topRightCorner(2, 2).norm() == 0.0);

  rmat bad(1, 1);
  bad << 2;
  CHECK_THROWS_AS(lift_involution(bad), InputError);
}

TEST_CASE("lifted involutions are antisymplectic") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 3;
    const rmat K = lift_involution(random_involution(n, rng));
    const rmat J = sigma_matrix(n);
    const double scale = std::max(1.0, K.squaredNorm());
    CHECK((K.transpose() * J * K + J).norm() <= 1e-12 * scale);
    CHECK((K * K - rmat::Identity(2 * n, 2 * n)).norm() <= 1e-12 * scale);
  }
}

TEST_CASE("symplectic defect") {
  Rng rng(13);
  const int n = 2;
  const rmat P = random_real(n, n, rng) + 2.0 * rmat::Identity(n, n);
  rmat S = rmat::Zero(2 * n, 2 * n);
  S.topLeftCorner(n, n) = P;
  S.bottomRightCorner(n, n) = P.inverse().transpose();
  CHECK(symplectic_defect(S.cast<cplx>()) < 1e-14);
  CHECK(symplectic_defect(2.0 * cmat::Identity(2 * n, 2 * n)) > 0.1);
}

TEST_CASE("graph matrices of lines in C^2") {
  cmat f1(2, 1);
  f1 << 1.0, I;
  CHECK(std::abs(graph_matrix(LagrangianPlane::from_frame(f1))(0, 0) - I) < 1e-14);
  cmat f2(2, 1);
  f2 << I, -1.0;
  CHECK(std::abs(graph_matrix(LagrangianPlane::from_frame(f2))(0, 0) - I) < 1e-14);
  cmat f3(2, 1);
  f3 << 0.0, 1.0;
  CHECK_THROWS_AS(graph_matrix(LagrangianPlane::from_frame(f3)), TransversalityError);
}

TEST_CASE("planes must be Lagrangian and graphs symmetric") {
  cmat f(4, 2);
  f << 1, 0, 0, 0, 0, 1, 0, 0;  // (x1, xi1) plane: sigma does not vanish
  CHECK_THROWS_AS(LagrangianPlane::from_frame(f), InputError);
  cmat A(2, 2);
  A << 1, 2, 0, 1;
  CHECK_THROWS_AS(LagrangianPlane::from_graph(A), InputError);
}

TEST_CASE("graph matrix round trip") {
  Rng rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const cmat A = random_symmetric_complex(n, rng);
    const auto plane = LagrangianPlane::from_frame(graph_frame(A) * random_complex(n, n, rng));
    CHECK(plane.lagrangian_defect() < 1e-12);
    CHECK((graph_matrix(plane) - A).norm() < 1e-10);
  }
}

TEST_CASE("positivity of the line xi = i x") {
  const auto R2 = RealSubspace::real_phase_space(1);
  cmat f(2, 1);
  f << 1.0, I;
  const cmat b = positivity_gram(f, R2);
  CHECK(std::abs(b(0, 0) - 2.0) < 1e-14);
  const auto form = positivity_form(LagrangianPlane::from_frame(f), R2);
  CHECK(form.positive());
  CHECK(form.signature == Signature{1, 0, 0});
}

TEST_CASE("positivity form of a graph is twice Im A") {
  Rng rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const cmat A = random_symmetric_complex(n, rng);
    const auto sigma = RealSubspace::real_phase_space(n);
    CHECK((positivity_gram(graph_frame(A), sigma) - 2.0 * A.imag().cast<cplx>()).norm() < 1e-12);
  }
}

TEST_CASE("positivity form degenerates as the plane approaches the real subspace") {
  const auto R2 = RealSubspace::real_phase_space(1);
  cmat real_line(2, 1);
  real_line << 1.0, 0.5;
  CHECK(positivity_form(LagrangianPlane::from_frame(real_line), R2).meets_sigma());
  double prev = 0.0;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    cmat f(2, 1);
    f << 1.0, 0.5 + I * eps;
    const double inv = positivity_form(LagrangianPlane::from_frame(f), R2).inverse_norm;
    CHECK(inv > prev);
    CHECK(inv > 0.5 / eps);
    prev = inv;
  }
}

TEST_CASE("weighted real subspace for |x|^2 / 2") {
  const WeightForm phi = WeightForm::from_complex(cmat::Zero(1, 1), 0.5 * cmat::Identity(1, 1));
  CHECK(std::abs(phi(vec({cplx(1.0, 2.0)})) - 2.5) < 1e-14);
  const auto sigma = RealSubspace::weighted(phi);
  cmat fiber(2, 1);
  fiber << 0.0, 1.0;
  CHECK(positivity_form(LagrangianPlane::from_frame(fiber), sigma).negative());
  // every frame vector is fixed by the involution
  const cmat& F = sigma.real_frame();
  for (int k = 0; k < F.cols(); ++k) CHECK((sigma.involution()(F.col(k)) - F.col(k)).norm() < 1e-14);
}

TEST_CASE("degenerate Levi matrix is rejected") {
  const WeightForm phi = WeightForm::from_complex(0.5 * cmat::Identity(1, 1), cmat::Zero(1, 1));
  CHECK_THROWS_AS(RealSubspace::weighted(phi), InputError);
}

TEST_CASE("pluriharmonic / Hermitian split") {
  const WeightForm abs2 = WeightForm::from_complex(cmat::Zero(1, 1), 0.5 * cmat::Identity(1, 1));
  CHECK(plh_herm_split(abs2).plh.hessian.norm() < 1e-15);
  CHECK((plh_herm_split(abs2).herm.hessian - abs2.hessian).norm() < 1e-15);

  const WeightForm re_x2 = WeightForm::from_complex(0.5 * cmat::Identity(1, 1), cmat::Zero(1, 1));
  CHECK(plh_herm_split(re_x2).herm.hessian.norm() < 1e-15);

  // Phi0 for B = i/2 is |x|^2 / 4
  const cplx B = 0.5 * I;
  const WeightForm phi0 =
      WeightForm::from_complex(cmat::Constant(1, 1, -I * B / 2.0 - 0.25), 0.25 * cmat::Identity(1, 1));
  CHECK((phi0.hessian - 0.5 * rmat::Identity(2, 2)).norm() < 1e-15);

  Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    const WeightForm phi = WeightForm(random_symmetric(2 * n, rng));
    const auto split = plh_herm_split(phi);
    const cvec x = random_cvec(n, rng);
    CHECK(std::abs(split.plh(x) + split.herm(x) - phi(x)) < 1e-12);
    CHECK(std::abs(split.plh(I * x) + split.plh(x)) < 1e-12);
    CHECK(std::abs(split.herm(I * x) - split.herm(x)) < 1e-12);
    CHECK((WeightForm::from_complex(phi.xx_block(), phi.levi()).hessian - phi.hessian).norm() < 1e-12);
  }
}

TEST_CASE("weight composition") {
  Rng rng(17);
  const WeightForm phi(random_symmetric(4, rng));
  const cmat C = random_complex(2, 2, rng);
  const cvec x = random_cvec(2, rng);
  CHECK(std::abs(phi.composed(C)(x) - phi(C * x)) < 1e-12);
}

TEST_CASE("form signature") {
  rmat d(2, 2);
  d << 1, 0, 0, -1;
  CHECK(form_signature(d) == Signature{1, 1, 0});
  CHECK(form_signature(rmat::Zero(2, 2)) == Signature{0, 0, 2});
  // |y|^2/4 + Im(y theta) in (Re y, Im y, Re theta, Im theta)
  rmat H(4, 4);
  H << 0.5, 0, 0, 1, 0, 0.5, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0;
  CHECK(form_signature(H) == Signature{2, 2, 0});
}

TEST_CASE("random plurisubharmonic weights: fiber negative, pluriharmonic plane positive") {
  Rng rng(18);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const WeightForm phi = random_psh_weight(n, rng);
    const auto sigma = RealSubspace::weighted(phi);
    cmat fiber = cmat::Zero(2 * n, n);
    fiber.bottomRows(n) = cmat::Identity(n, n);
    CHECK(positivity_form(LagrangianPlane::from_frame(fiber), sigma).negative());
    const cmat plh_graph = (2.0 / I) * phi.xx_block();
    CHECK(positivity_form(LagrangianPlane::from_graph(plh_graph), sigma).positive());
  }
}

TEST_CASE("realification of antilinear maps") {
  Rng rng(19);
  const cmat Q = random_complex(3, 3, rng);
  const cvec v = random_cvec(3, rng);
  const AntilinearMap a{Q};
  const rvec lhs = a.realified() * linalg::stack_real(v);
  CHECK((linalg::unstack_real(lhs) - a(v)).norm() < 1e-13);
  const cmat M = random_complex(3, 3, rng);
  CHECK((linalg::unstack_real(linalg::realify(M) * linalg::stack_real(v)) - M * v).norm() < 1e-13);
}
