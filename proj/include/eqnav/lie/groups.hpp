#pragma once

#include <Eigen/Core>

#include "eqnav/lie/so3.hpp"

namespace eqnav::lie {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec9 = Eigen::Matrix<double, 9, 1>;
using Vec10 = Eigen::Matrix<double, 10, 1>;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat9 = Eigen::Matrix<double, 9, 9>;
using Mat10 = Eigen::Matrix<double, 10, 10>;
using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;

// ---------------------------------------------------------------------------
// SE(3), also used for HG(3) which is isomorphic and acts on velocities.
// Tangent ordering (w, t): rotation first.
// ---------------------------------------------------------------------------
struct SE3 {
  SO3 R;
  Vec3 t = Vec3::Zero();

  SE3() = default;
  SE3(const SO3& r, const Vec3& tt) : R(r), t(tt) {}

  static SE3 Identity() { return SE3(); }
  static SE3 Exp(const Vec6& x);
  Vec6 log() const;
  SE3 inv() const { return SE3(R.inv(), Vec3(-(R.inv() * t))); }
  SE3 operator*(const SE3& o) const { return SE3(R * o.R, Vec3(R * o.t + t)); }
  // Rigid-body action on points.
  Vec3 operator*(const Vec3& v) const { return R * v + t; }
  Mat4 matrix() const;
  static SE3 from_matrix(const Mat4& M);
  Mat6 Ad() const;
};

Mat4 wedge_se3(const Vec6& x);
Vec6 vee_se3(const Mat4& U, double tol = 1e-9);
Mat6 ad_se3(const Vec6& x);
Mat6 jl_se3(const Vec6& x);

// Q1 closed form shared by SE(3)/SE2(3)/G(3) left Jacobians.
Mat3 q1_so3(const Vec3& w, const Vec3& z);
// Series oracles used for cross-checks (p,r summed to `terms`).
Mat3 q1_series(const Vec3& w, const Vec3& z, int terms = 20);
Mat3 q2_so3(const Vec3& w, const Vec3& z);
Mat3 q2_series(const Vec3& w, const Vec3& z, int terms = 20);
Mat3 u1_so3(const Vec3& w);
Mat3 u1_series(const Vec3& w, int terms = 30);

// ---------------------------------------------------------------------------
// SE2(3) extended poses. Tangent ordering (w, v, p).
// ---------------------------------------------------------------------------
struct SE23 {
  SO3 R;
  Vec3 v = Vec3::Zero();
  Vec3 p = Vec3::Zero();

  SE23() = default;
  SE23(const SO3& r, const Vec3& vv, const Vec3& pp) : R(r), v(vv), p(pp) {}

  static SE23 Identity() { return SE23(); }
  static SE23 Exp(const Vec9& x);
  Vec9 log() const;
  SE23 inv() const {
    const SO3 Rt = R.inv();
    return SE23(Rt, Vec3(-(Rt * v)), Vec3(-(Rt * p)));
  }
  SE23 operator*(const SE23& o) const {
    return SE23(R * o.R, Vec3(R * o.v + v), Vec3(R * o.p + p));
  }
  Mat5 matrix() const;
  static SE23 from_matrix(const Mat5& M);
  Mat9 Ad() const;
};

Mat5 wedge_se23(const Vec9& x);
Vec9 vee_se23(const Mat5& U, double tol = 1e-9);
Mat9 ad_se23(const Vec9& x);
Mat9 jl_se23(const Vec9& x);

// ---------------------------------------------------------------------------
// SOT(3): rotation and scale.
// Tangent ordering (w, alpha); matrix form s*R in R^{3x3}.
// ---------------------------------------------------------------------------
struct SOT3 {
  SO3 R;
  double s = 1.0;

  SOT3() = default;
  SOT3(const SO3& r, double ss) : R(r), s(ss) {
    if (s <= 0.0) throw std::invalid_argument("SOT3: scale must be positive");
  }

  static SOT3 Identity() { return SOT3(); }
  static SOT3 Exp(const Vec4& x);
  Vec4 log() const;
  SOT3 inv() const { return SOT3(R.inv(), 1.0 / s); }
  SOT3 operator*(const SOT3& o) const { return SOT3(R * o.R, s * o.s); }
  // Scaled-rotation action on points.
  Vec3 operator*(const Vec3& v) const { return s * (R * v); }
  Mat3 matrix() const { return s * R.R; }
  Mat4 Ad() const;
};

Mat3 wedge_sot3(const Vec4& x);
Vec4 vee_sot3(const Mat3& U, double tol = 1e-9);
Mat4 ad_sot3(const Vec4& x);
Mat4 jl_sot3(const Vec4& x);

// ---------------------------------------------------------------------------
// Inhomogeneous Galilean group G(3): (A, a, b, c).
// Tangent ordering (w, v, r, alpha).
// ---------------------------------------------------------------------------
struct Gal3 {
  SO3 R;
  Vec3 a = Vec3::Zero();
  Vec3 b = Vec3::Zero();
  double c = 0.0;

  Gal3() = default;
  Gal3(const SO3& r, const Vec3& aa, const Vec3& bb, double cc)
      : R(r), a(aa), b(bb), c(cc) {}

  static Gal3 Identity() { return Gal3(); }
  static Gal3 Exp(const Vec10& x);
  Vec10 log() const;
  Gal3 inv() const {
    const SO3 Rt = R.inv();
    return Gal3(Rt, Vec3(-(Rt * a)), Vec3(-(Rt * (b - c * a))), -c);
  }
  Gal3 operator*(const Gal3& o) const {
    return Gal3(R * o.R, Vec3(R * o.a + a), Vec3(R * o.b + c * o.a + b),
                c + o.c);
  }
  Mat5 matrix() const;
  static Gal3 from_matrix(const Mat5& M);
  Mat10 Ad() const;
};

Mat5 wedge_gal3(const Vec10& x);
Vec10 vee_gal3(const Mat5& U, double tol = 1e-9);
Mat10 ad_gal3(const Vec10& x);
Mat10 jl_gal3(const Vec10& x);
Mat10 jl_gal3_series(const Vec10& x, int terms = 30);

// ---------------------------------------------------------------------------
// Intrinsic group IN (5 parameters, upper triangular) and the skewless
// 4-parameter variant used for camera intrinsics.
// Tangent ordering IN: (alpha, beta, zeta, gamma, delta); In4: (a, b, u, v).
// ---------------------------------------------------------------------------
struct In5 {
  double a = 1.0, b = 1.0, s = 0.0, x = 0.0, y = 0.0;

  In5() = default;
  In5(double aa, double bb, double ss, double xx, double yy)
      : a(aa), b(bb), s(ss), x(xx), y(yy) {
    if (a <= 0.0 || b <= 0.0)
      throw std::invalid_argument("In5: diagonal must be positive");
  }

  static In5 Identity() { return In5(); }
  static In5 Exp(const Vec5& u);
  Vec5 log() const;
  In5 inv() const {
    return In5(1.0 / a, 1.0 / b, -s / (a * b), -x / a + s * y / (a * b),
               -y / b);
  }
  In5 operator*(const In5& o) const { return from_matrix(matrix() * o.matrix()); }
  Mat3 matrix() const;
  static In5 from_matrix(const Mat3& M);
  // Adjoint via X u^ X^-1 and vee; the printed matrix in the source material
  // is dimensionally inconsistent, see the module notes.
  Eigen::Matrix<double, 5, 5> Ad() const;
};

Mat3 wedge_in5(const Vec5& u);
Vec5 vee_in5(const Mat3& U, double tol = 1e-9);
Eigen::Matrix<double, 5, 5> ad_in5(const Vec5& u);

struct In4 {
  double fx = 1.0, fy = 1.0, cx = 0.0, cy = 0.0;

  In4() = default;
  In4(double a, double b, double u, double v) : fx(a), fy(b), cx(u), cy(v) {
    if (fx <= 0.0 || fy <= 0.0)
      throw std::invalid_argument("In4: focal lengths must be positive");
  }

  static In4 Identity() { return In4(); }
  static In4 Exp(const Vec4& u);
  Vec4 log() const;
  In4 inv() const {
    return In4(1.0 / fx, 1.0 / fy, -cx / fx, -cy / fy);
  }
  In4 operator*(const In4& o) const {
    return In4(fx * o.fx, fy * o.fy, fx * o.cx + cx, fy * o.cy + cy);
  }
  Vec3 operator*(const Vec3& v) const {
    return Vec3(fx * v.x() + cx * v.z(), fy * v.y() + cy * v.z(), v.z());
  }
  Mat3 matrix() const;
  static In4 from_matrix(const Mat3& M);
  Mat4 Ad() const;
};

Mat3 wedge_in4(const Vec4& u);
Vec4 vee_in4(const Mat3& U, double tol = 1e-9);
Mat4 ad_in4(const Vec4& u);

}  // namespace eqnav::lie
