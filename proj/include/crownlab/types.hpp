#pragma once

#include <complex>

#include <Eigen/Dense>

namespace crownlab {

using cplx = std::complex<double>;

/// Coordinates of an element of the Cartan subspace (or its dual) in the
/// ambient inner-product space. Type A vectors carry the zero-sum constraint.
using RealVec = Eigen::VectorXd;
using ComplexVec = Eigen::VectorXcd;
using RealMat = Eigen::MatrixXd;
using ComplexMat = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// Default tolerance for geometric membership tests.
inline constexpr double kGeomTol = 1e-9;

}  // namespace crownlab
