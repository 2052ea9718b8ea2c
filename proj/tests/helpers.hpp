#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "qsymm/quadform.hpp"
#include "qsymm/types.hpp"

namespace qsymm::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline rmat random_real(int r, int c, Rng& rng) {
  rmat M(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) M(i, j) = uniform(rng);
  return M;
}

inline cmat random_complex(int r, int c, Rng& rng) {
  return random_real(r, c, rng).cast<cplx>() + I * random_real(r, c, rng).cast<cplx>();
}

inline cvec random_cvec(int m, Rng& rng) { return random_complex(m, 1, rng).col(0); }

inline rmat random_symmetric(int m, Rng& rng) {
  const rmat X = random_real(m, m, rng);
  return 0.5 * (X + X.transpose());
}

inline rmat random_spd(int m, Rng& rng, double floor = 0.2) {
  const rmat X = random_real(m, m, rng);
  return X * X.transpose() + floor * rmat::Identity(m, m);
}

/// Q = R + i S with R positive definite, rotated by a phase of modulus < pi/4.
inline QuadraticSymbol random_elliptic(int n, Rng& rng) {
  const int m = 2 * n;
  const double s = uniform(rng, 0.0, 2.0);
  cmat Q = random_spd(m, rng).cast<cplx>() + I * (s * random_symmetric(m, rng)).cast<cplx>();
  Q *= std::polar(1.0, uniform(rng, -0.7, 0.7));
  return QuadraticSymbol::from_phase_matrix(Q);
}

/// kappa = P diag(+-1) P^{-1} with P well conditioned, at least one -1.
inline rmat random_involution(int n, Rng& rng) {
  const rmat P = random_real(n, n, rng) + 2.0 * rmat::Identity(n, n);
  rvec d(n);
  for (int i = 0; i < n; ++i) d(i) = uniform(rng) < 0 ? -1.0 : 1.0;
  d(0) = -1.0;
  return P * d.asDiagonal() * P.inverse();
}

/// Symmetrizes R + i S under conj(Q) = K^t Q K, keeping Re Q positive definite.
inline QuadraticSymbol random_pt(int n, Rng& rng) {
  const int m = 2 * n;
  const rmat kappa = random_involution(n, rng);
  rmat K = rmat::Zero(m, m);
  K.topLeftCorner(n, n) = kappa;
  K.bottomRightCorner(n, n) = -kappa.transpose();
  const rmat R = random_spd(m, rng);
  const rmat S = uniform(rng, 0.5, 3.0) * random_symmetric(m, rng);
  const rmat Rs = 0.5 * (R + K.transpose() * R * K);
  const rmat Ss = 0.5 * (S - K.transpose() * S * K);
  const cmat Q = Rs.cast<cplx>() + I * Ss.cast<cplx>();
  return QuadraticSymbol::from_phase_matrix(Q, kappa);
}

/// xi^2 + omega1^2 x1^2 + omega2^2 x2^2 + 2 i g x1 x2 with kappa = diag(-1, 1).
inline QuadraticSymbol coupled(double g, double w1 = 2.0, double w2 = 1.0) {
  cmat A(2, 2);
  A << w1 * w1, I * g, I * g, w2 * w2;
  rmat kappa(2, 2);
  kappa << -1, 0, 0, 1;
  return QuadraticSymbol::make(A, cmat::Zero(2, 2), cmat::Identity(2, 2), kappa);
}

inline QuadraticSymbol harmonic() {
  rmat kappa(1, 1);
  kappa << -1;
  return QuadraticSymbol::make(cmat::Identity(1, 1), cmat::Zero(1, 1), cmat::Identity(1, 1), kappa);
}

/// Closest distance from z to any element of v.
inline double nearest(const std::vector<cplx>& v, cplx z) {
  double best = INFINITY;
  for (const cplx& w : v) best = std::min(best, std::abs(w - z));
  return best;
}

/// Max over a of the distance to b after greedy one-to-one matching.
inline double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const cplx& z : a) {
    size_t k = 0;
    for (size_t j = 1; j < b.size(); ++j)
      if (std::abs(b[j] - z) < std::abs(b[k] - z)) k = j;
    worst = std::max(worst, std::abs(b[k] - z));
    b.erase(b.begin() + static_cast<long>(k));
  }
  return worst;
}

}  // namespace qsymm::testing
