#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace dvkit {

using cplx = std::complex<double>;
using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using CVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// A point of C^2.
struct Point2 {
  cplx z;
  cplx w;
};

inline cplx unit(double theta) { return std::polar(1.0, theta); }

}  // namespace dvkit
