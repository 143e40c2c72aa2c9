#pragma once

#include <complex>

#include <Eigen/Dense>

namespace ftn {

using cplx = std::complex<double>;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

}  // namespace ftn
