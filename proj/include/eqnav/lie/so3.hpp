#pragma once

#include <Eigen/Core>
#include <Eigen/Dense>
#include <stdexcept>

namespace eqnav::lie {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Below this angle the trigonometric coefficient fractions switch to their
// 4-term Taylor expansions.
inline constexpr double kSmallAngle = 1e-4;

// Branch guard for rotation logarithms.
inline constexpr double kLogBranchGuard = M_PI - 1e-6;

Mat3 skew(const Vec3& v);
Vec3 unskew(const Mat3& M);

// unskew with a pattern check: throws if M is not skew-symmetric within tol.
Vec3 unskew_checked(const Mat3& M, double tol = 1e-9);

Mat3 exp_so3(const Vec3& w);
// Throws on rotation angle >= pi - 1e-6 (branch ambiguity).
Vec3 log_so3(const Mat3& R);

// Gamma_m operators of SO(3), closed form for m = 0,1,2.
Mat3 gamma0_so3(const Vec3& w);  // = exp(w^)
Mat3 gamma1_so3(const Vec3& w);  // left Jacobian
Mat3 gamma2_so3(const Vec3& w);
Mat3 jl_so3(const Vec3& w);
Mat3 jr_so3(const Vec3& w);
Mat3 jl_inv_so3(const Vec3& w);
Mat3 jr_inv_so3(const Vec3& w);

// Nearest rotation by polar decomposition (orthonormality repair).
Mat3 project_so3(const Mat3& M);

bool is_rotation(const Mat3& R, double tol = 1e-9);

struct SO3 {
  Mat3 R = Mat3::Identity();

  SO3() = default;
  explicit SO3(const Mat3& m) : R(m) {}

  static SO3 Identity() { return SO3(); }
  static SO3 Exp(const Vec3& w) { return SO3(exp_so3(w)); }
  Vec3 log() const { return log_so3(R); }
  SO3 inv() const { return SO3(Mat3(R.transpose())); }
  SO3 operator*(const SO3& o) const { return SO3(Mat3(R * o.R)); }
  Vec3 operator*(const Vec3& v) const { return R * v; }

  // Re-project onto SO(3) when drift exceeds tol.
  void repair(double tol = 1e-7) {
    if ((R.transpose() * R - Mat3::Identity()).norm() > tol) R = project_so3(R);
  }
};

}  // namespace eqnav::lie
