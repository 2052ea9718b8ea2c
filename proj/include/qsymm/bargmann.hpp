#pragma once

#include <string>
#include <vector>

#include "qsymm/quadform.hpp"
#include "qsymm/spectral.hpp"
#include "qsymm/symplectic.hpp"
#include "qsymm/tolerance.hpp"
#include "qsymm/types.hpp"

namespace qsymm {

/// Real symplectic change of coordinates taking Lambda_minus to eta = -i y.
struct Preparation {
  rmat prep;          // diag(R, R^{-t}) [[I, 0], [-Re A_minus, I]]
  rmat prep_inverse;
  QuadraticSymbol q;  // q o prep^{-1}
  cmat a_minus;       // graph of Lambda_minus before preparation
  cmat a_plus;        // graph of Lambda_plus after preparation
  double minus_residual = 0.0;  // ||graph(prep Lambda_minus) + i I||
};

/// Throws PositivityError unless Im A_minus is negative definite and the
/// prepared Im A_plus is positive definite.
Preparation prepare_lambda_minus(const QuadraticSymbol& q, const HalfPlaneSplit& split, const Tolerances& tol = {});

struct BargmannData {
  cmat b;        // (I - i A_plus)^{-1} A_plus
  cmat kappa_t;  // (y, eta) -> (y - i eta, eta + i B eta - B y)
  WeightForm phi0;
};

BargmannData bargmann_data(const cmat& a_plus);

struct TransformedSymbol {
  cmat q_tilde;     // phase matrix of q o kappa_T^{-1}
  cmat m;           // q~(x, xi) = M x . xi
  double xx_norm = 0.0;
  double xixi_norm = 0.0;
};

/// Throws ConstructionError when a diagonal block of q~ exceeds
/// `tol.structure * max(1, ||q~||)`.
TransformedSymbol transformed_symbol(const QuadraticSymbol& q_prepped, const cmat& kappa_t,
                                     const Tolerances& tol = {});

struct JordanReduction {
  cmat c;                      // C^{-1} M C ~ J
  cmat j;                      // exact Jordan matrix
  std::vector<cplx> lambdas;   // J_jj / 2
  std::vector<int> gammas;     // superdiagonal of J, size n - 1
  std::vector<std::vector<int>> blocks;  // Jordan block sizes per eigenvalue
  double condition = 0.0;      // cond(C)
  double residual = 0.0;       // ||C^{-1} M C - J|| / max(1, ||M||)
  bool ill_conditioned = false;  // cond(C) > 1e12
};

/// Blocks are ordered by descending Im of the eigenvalue, then descending
/// size. Chains are scaled so that every superdiagonal entry is 0 or 1.
JordanReduction jordan_reduce(const cmat& M, const Tolerances& tol = {});

/// Matrix of the model operator on monomials x^alpha with |alpha| <= degree.
/// The basis is ordered by (degree, sum_j j alpha_j, lex), which makes the
/// matrix lower triangular.
struct MonomialMatrix {
  std::vector<std::vector<int>> basis;
  cmat matrix;

  bool lower_triangular(double eps = 0.0) const;
  std::vector<cplx> eigenvalues() const;  // the diagonal
};

MonomialMatrix model_operator_matrix(const std::vector<cplx>& lambdas, const std::vector<int>& gammas, int degree);

/// Holomorphic quadratic phase phi(w) = 1/2 w^t P w in w = (x, y, theta),
/// x, y in C^n, theta in C^N.
struct QuadraticPhase {
  int n = 0;
  int N = 0;
  cmat P;
};

/// (i/2)(x - y)^2 - (1/2) B x . x
QuadraticPhase bargmann_phase(const cmat& B);
/// (C x - y) . theta
QuadraticPhase scaling_phase(const cmat& C);

struct CriticalValue {
  WeightForm target;
  Signature signature;  // of the form in the integration variables
};

/// vc over (y, theta) in C^n x C^N of Phi_source(y) - Im phi(x, y, theta).
/// Throws TransversalityError when the form in (y, theta) is degenerate.
CriticalValue critical_value_weight(const QuadraticPhase& phase, const WeightForm& source,
                                    const Tolerances& tol = {});

/// sup over real y of -Im phi(x, y) (N = 0). Throws TransversalityError
/// unless the form in y is negative definite.
CriticalValue critical_value_weight_real(const QuadraticPhase& phase, const Tolerances& tol = {});

struct NormalFormChecks {
  double prep_symplectic_defect = 0.0;
  double kappa_t_symplectic_defect = 0.0;
  double kappa_c_symplectic_defect = 0.0;
  double fiber_residual = 0.0;  // kappa_T(Lambda_minus) vs {x = 0}
  double base_residual = 0.0;   // kappa_T(Lambda_plus) vs {xi = 0}
  double lambda_phi0_residual = 0.0;  // kappa_T(R^{2n}) vs Lambda_Phi0
  double b_symmetry = 0.0;
  double spectrum_residual = 0.0;  // Spec(M) vs 2 x upper Spec(F)
  double phi0_min_eig = 0.0;
  double phi1_min_eig = 0.0;
  double phi0_critical_error = 0.0;
  double phi1_critical_error = 0.0;
  Signature phi0_signature;  // real-domain route
  Signature phi1_signature;  // expected (2n, 2n)
};

struct NormalForm {
  Preparation preparation;
  BargmannData bargmann;
  TransformedSymbol transformed;
  JordanReduction jordan;
  WeightForm phi1;
  NormalFormChecks checks;
  std::vector<std::string> warnings;
};

/// Runs the full reduction for a symbol with Re q positive definite.
NormalForm normal_form(const QuadraticSymbol& q_norm, const EigenAnalysis& ea, const Tolerances& tol = {});

}  // namespace qsymm
