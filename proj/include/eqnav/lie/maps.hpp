#pragma once

#include "eqnav/lie/groups.hpp"

namespace eqnav::lie {

// Projections; both guard their zero denominators.
Vec3 pi_z1(const Vec3& v);  // v / v.z
Vec3 pi_s2(const Vec3& v);  // v / |v|

// Differentials of the projections at v, as 2x3 (unit plane drops the
// constant third coordinate) and 3x3 maps.
Eigen::Matrix<double, 2, 3> dpi_z1(const Vec3& v);
Mat3 dpi_s2(const Vec3& v);

// 3x4 pattern matrix of the intrinsic-error column.
Eigen::Matrix<double, 3, 4> xi_mat(const Vec3& v);

// Rotation part of SE(3)/SE2(3) elements.
Mat3 GammaR(const SE3& X);
Mat3 GammaR(const SE23& X);

// Sub-element extractions from extended poses.
SE3 chi(const SE23& X);    // (A, a)
SE3 Theta(const SE23& X);  // (A, b)

// Omega(X) = (0, 0, a)^ in se2(3) coordinates.
Vec9 Omega(const SE23& X);

// Slot projections se2(3) -> se(3).
Vec6 Pi(const Vec9& x);       // (a, b)
Vec6 Upsilon(const Vec9& x);  // (a, c)

// Embeddings se(3) -> se2(3) with a zero third slot.
Vec9 embed_pi(const Vec6& x);

}  // namespace eqnav::lie
