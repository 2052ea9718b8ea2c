#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qsymm {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rmat = Eigen::MatrixXd;
using rvec = Eigen::VectorXd;

inline constexpr cplx I{0.0, 1.0};

}  // namespace qsymm
