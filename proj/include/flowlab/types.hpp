#pragma once

#include <Eigen/Dense>
#include <complex>

namespace flowlab {

using Real = double;
using Complex = std::complex<Real>;
using Index = Eigen::Index;

using ArrayXr = Eigen::ArrayXd;
using ArrayXXr = Eigen::ArrayXXd;
using ArrayXc = Eigen::ArrayXcd;
using VecXr = Eigen::VectorXd;
using Vec2r = Eigen::Vector2d;
using Vec3r = Eigen::Vector3d;

inline constexpr Real kPi = 3.14159265358979323846;
inline constexpr Real kTwoPi = 2.0 * kPi;

}  // namespace flowlab
