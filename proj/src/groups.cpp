#include "eqnav/lie/groups.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace eqnav::lie {

namespace {

void check_pattern(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string(what) + ": matrix off the algebra pattern");
}

double phi1(double a) {
  // (e^a - 1)/a
  if (std::abs(a) < 1e-6) return 1.0 + a / 2.0 + a * a / 6.0 + a * a * a / 24.0;
  return std::expm1(a) / a;
}

}  // namespace

// --------------------------------------------------------------------- SE(3)

Mat4 wedge_se3(const Vec6& x) {
  Mat4 U = Mat4::Zero();
  U.topLeftCorner<3, 3>() = skew(x.head<3>());
  U.topRightCorner<3, 1>() = x.tail<3>();
  return U;
}

Vec6 vee_se3(const Mat4& U, double tol) {
  check_pattern(U.row(3).norm() <= tol &&
                    (U.topLeftCorner<3, 3>() + U.topLeftCorner<3, 3>().transpose()).norm() <= tol,
                "vee_se3");
  Vec6 x;
  x.head<3>() = unskew(U.topLeftCorner<3, 3>());
  x.tail<3>() = U.topRightCorner<3, 1>();
  return x;
}

Mat6 ad_se3(const Vec6& x) {
  Mat6 M = Mat6::Zero();
  const Mat3 W = skew(x.head<3>());
  M.topLeftCorner<3, 3>() = W;
  M.bottomRightCorner<3, 3>() = W;
  M.bottomLeftCorner<3, 3>() = skew(x.tail<3>());
  return M;
}

Mat6 jl_se3(const Vec6& x) {
  Mat6 J = Mat6::Zero();
  const Vec3 w = x.head<3>();
  const Mat3 G1 = gamma1_so3(w);
  J.topLeftCorner<3, 3>() = G1;
  J.bottomRightCorner<3, 3>() = G1;
  J.bottomLeftCorner<3, 3>() = q1_so3(w, x.tail<3>());
  return J;
}

SE3 SE3::Exp(const Vec6& x) {
  const Vec3 w = x.head<3>();
  return SE3(SO3::Exp(w), Vec3(gamma1_so3(w) * x.tail<3>()));
}

Vec6 SE3::log() const {
  Vec6 x;
  const Vec3 w = R.log();
  x.head<3>() = w;
  x.tail<3>() = gamma1_so3(w).inverse() * t;
  return x;
}

Mat4 SE3::matrix() const {
  Mat4 M = Mat4::Identity();
  M.topLeftCorner<3, 3>() = R.R;
  M.topRightCorner<3, 1>() = t;
  return M;
}

SE3 SE3::from_matrix(const Mat4& M) {
  return SE3(SO3(Mat3(M.topLeftCorner<3, 3>())), Vec3(M.topRightCorner<3, 1>()));
}

Mat6 SE3::Ad() const {
  Mat6 M = Mat6::Zero();
  M.topLeftCorner<3, 3>() = R.R;
  M.bottomRightCorner<3, 3>() = R.R;
  M.bottomLeftCorner<3, 3>() = skew(t) * R.R;
  return M;
}

// ----------------------------------------------------- Q1 / Q2 / U1 helpers

Mat3 q1_so3(const Vec3& w, const Vec3& z) {
  const double t = w.norm();
  const Mat3 W = skew(w);
  const Mat3 Z = skew(z);
  double c1, c2, c3;
  if (t < 0.02) {
    const double t2 = t * t;
    c1 = 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0;
    c2 = 1.0 / 24.0 - t2 / 720.0 + t2 * t2 / 40320.0;
    c3 = 1.0 / 120.0 - t2 / 2520.0 + t2 * t2 / 120960.0;
  } else {
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const double st = std::sin(t), ct = std::cos(t);
    c1 = (t - st) / t3;
    c2 = (t2 + 2.0 * ct - 2.0) / (2.0 * t4);
    c3 = (2.0 * t - 3.0 * st + t * ct) / (2.0 * t5);
  }
  return 0.5 * Z + c1 * (W * Z + Z * W + W * Z * W) +
         c2 * (W * W * Z + Z * W * W - 3.0 * W * Z * W) +
         c3 * (W * Z * W * W + W * W * Z * W);
}

Mat3 q1_series(const Vec3& w, const Vec3& z, int terms) {
  const Mat3 W = skew(w);
  const Mat3 Z = skew(z);
  Mat3 S = Mat3::Zero();
  Mat3 Wr = Mat3::Identity();
  for (int r = 0; r < terms; ++r) {
    Mat3 Wp = Mat3::Identity();
    for (int p = 0; p < terms; ++p) {
      double f = 1.0;
      for (int k = 2; k <= p + r + 2; ++k) f *= k;
      S += (1.0 / f) * Wr * Z * Wp;
      Wp = Wp * W;
    }
    Wr = Wr * W;
  }
  return S;
}

Mat3 q2_series(const Vec3& w, const Vec3& z, int terms) {
  // The (p+1) weight rides on the left power; this is the expansion the
  // 10-dim left Jacobian actually produces (see test_lie Gal3 checks).
  const Mat3 W = skew(w);
  const Mat3 Z = skew(z);
  Mat3 S = Mat3::Zero();
  Mat3 Wr = Mat3::Identity();
  for (int r = 0; r < terms; ++r) {
    Mat3 Wp = Mat3::Identity();
    for (int p = 0; p < terms; ++p) {
      double f = 1.0;
      for (int k = 2; k <= p + r + 3; ++k) f *= k;
      S += ((r + 1.0) / f) * Wr * Z * Wp;
      Wp = Wp * W;
    }
    Wr = Wr * W;
  }
  return S;
}

Mat3 q2_so3(const Vec3& w, const Vec3& z) {
  const double t = w.norm();
  // The closed form below loses all significant digits near zero; the series
  // converges in a handful of shells there.
  if (t < 0.1) return q2_series(w, z, 12);
  const Mat3 W = skew(w);
  const Mat3 Z = skew(z);
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t, t6 = t5 * t,
               t7 = t6 * t;
  const double st = std::sin(t), ct = std::cos(t);
  const double d1 = (t2 + 2.0 * ct - 2.0) / (2.0 * t4);
  const double d2 = (t3 - 6.0 * t + 6.0 * st) / (6.0 * t5);
  const double d3 = (-2.0 * ct - t * st + 2.0) / t4;
  const double d4 = (t3 + 6.0 * t * ct + 6.0 * t - 12.0 * st) / (6.0 * t5);
  const double d5 = (-3.0 * t * ct - (t2 - 3.0) * st) / (4.0 * t5);
  const double d6 = (t * ct + 2.0 * t - 3.0 * st) / (4.0 * t5);
  const double d7 = ((t2 - 8.0) * ct - 5.0 * t * st + 8.0) / (4.0 * t6);
  const double d8 =
      (2.0 * t3 + 3.0 * t2 * st + 15.0 * t * ct - 15.0 * st) / (12.0 * t7);
  return (1.0 / 6.0) * Z + d1 * Z * W + d2 * Z * W * W + d3 * W * Z +
         d4 * W * W * Z + d5 * W * Z * W + d6 * W * W * Z * W +
         d7 * W * Z * W * W + d8 * W * W * Z * W * W;
}

Mat3 u1_so3(const Vec3& w) {
  const double t = w.norm();
  const Mat3 W = skew(w);
  double c1, c2;
  if (t < 0.02) {
    const double t2 = t * t;
    c1 = 1.0 / 3.0 - t2 / 30.0 + t2 * t2 / 840.0;
    c2 = 1.0 / 8.0 - t2 / 144.0 + t2 * t2 / 5760.0;
  } else {
    const double t3 = t * t * t, t4 = t3 * t;
    const double st = std::sin(t), ct = std::cos(t);
    c1 = (st - t * ct) / t3;
    c2 = (t * t - 2.0 * t * st - 2.0 * ct + 2.0) / (2.0 * t4);
  }
  return 0.5 * Mat3::Identity() + c1 * W + c2 * W * W;
}

Mat3 u1_series(const Vec3& w, int terms) {
  const Mat3 W = skew(w);
  Mat3 S = Mat3::Zero();
  Mat3 Wk = Mat3::Identity();
  for (int k = 0; k < terms; ++k) {
    double f = 1.0;
    for (int m = 2; m <= k + 2; ++m) f *= m;
    S += ((k + 1.0) / f) * Wk;
    Wk = Wk * W;
  }
  return S;
}

// -------------------------------------------------------------------- SE2(3)

Mat5 wedge_se23(const Vec9& x) {
  Mat5 U = Mat5::Zero();
  U.topLeftCorner<3, 3>() = skew(x.head<3>());
  U.block<3, 1>(0, 3) = x.segment<3>(3);
  U.block<3, 1>(0, 4) = x.tail<3>();
  return U;
}

Vec9 vee_se23(const Mat5& U, double tol) {
  check_pattern(U.bottomRows(2).norm() <= tol &&
                    (U.topLeftCorner<3, 3>() + U.topLeftCorner<3, 3>().transpose()).norm() <= tol,
                "vee_se23");
  Vec9 x;
  x.head<3>() = unskew(U.topLeftCorner<3, 3>());
  x.segment<3>(3) = U.block<3, 1>(0, 3);
  x.tail<3>() = U.block<3, 1>(0, 4);
  return x;
}

Mat9 ad_se23(const Vec9& x) {
  Mat9 M = Mat9::Zero();
  const Mat3 W = skew(x.head<3>());
  M.block<3, 3>(0, 0) = W;
  M.block<3, 3>(3, 3) = W;
  M.block<3, 3>(6, 6) = W;
  M.block<3, 3>(3, 0) = skew(x.segment<3>(3));
  M.block<3, 3>(6, 0) = skew(x.tail<3>());
  return M;
}

Mat9 jl_se23(const Vec9& x) {
  Mat9 J = Mat9::Zero();
  const Vec3 w = x.head<3>();
  const Mat3 G1 = gamma1_so3(w);
  J.block<3, 3>(0, 0) = G1;
  J.block<3, 3>(3, 3) = G1;
  J.block<3, 3>(6, 6) = G1;
  J.block<3, 3>(3, 0) = q1_so3(w, x.segment<3>(3));
  J.block<3, 3>(6, 0) = q1_so3(w, x.tail<3>());
  return J;
}

SE23 SE23::Exp(const Vec9& x) {
  const Vec3 w = x.head<3>();
  const Mat3 G1 = gamma1_so3(w);
  return SE23(SO3::Exp(w), Vec3(G1 * x.segment<3>(3)), Vec3(G1 * x.tail<3>()));
}

Vec9 SE23::log() const {
  Vec9 x;
  const Vec3 w = R.log();
  const Mat3 G1inv = gamma1_so3(w).inverse();
  x.head<3>() = w;
  x.segment<3>(3) = G1inv * v;
  x.tail<3>() = G1inv * p;
  return x;
}

Mat5 SE23::matrix() const {
  Mat5 M = Mat5::Identity();
  M.topLeftCorner<3, 3>() = R.R;
  M.block<3, 1>(0, 3) = v;
  M.block<3, 1>(0, 4) = p;
  return M;
}

SE23 SE23::from_matrix(const Mat5& M) {
  return SE23(SO3(Mat3(M.topLeftCorner<3, 3>())), Vec3(M.block<3, 1>(0, 3)),
              Vec3(M.block<3, 1>(0, 4)));
}

Mat9 SE23::Ad() const {
  Mat9 M = Mat9::Zero();
  M.block<3, 3>(0, 0) = R.R;
  M.block<3, 3>(3, 3) = R.R;
  M.block<3, 3>(6, 6) = R.R;
  M.block<3, 3>(3, 0) = skew(v) * R.R;
  M.block<3, 3>(6, 0) = skew(p) * R.R;
  return M;
}

// -------------------------------------------------------------------- SOT(3)

Mat3 wedge_sot3(const Vec4& x) {
  return skew(x.head<3>()) + x(3) * Mat3::Identity();
}

Vec4 vee_sot3(const Mat3& U, double tol) {
  const double alpha = U.trace() / 3.0;
  const Mat3 W = U - alpha * Mat3::Identity();
  check_pattern((W + W.transpose()).norm() <= tol, "vee_sot3");
  Vec4 x;
  x.head<3>() = unskew(W);
  x(3) = alpha;
  return x;
}

Mat4 ad_sot3(const Vec4& x) {
  Mat4 M = Mat4::Zero();
  M.topLeftCorner<3, 3>() = skew(x.head<3>());
  return M;
}

Mat4 jl_sot3(const Vec4& x) {
  Mat4 J = Mat4::Identity();
  J.topLeftCorner<3, 3>() = gamma1_so3(x.head<3>());
  return J;
}

SOT3 SOT3::Exp(const Vec4& x) {
  return SOT3(SO3::Exp(x.head<3>()), std::exp(x(3)));
}

Vec4 SOT3::log() const {
  Vec4 x;
  x.head<3>() = R.log();
  x(3) = std::log(s);
  return x;
}

Mat4 SOT3::Ad() const {
  Mat4 M = Mat4::Identity();
  M.topLeftCorner<3, 3>() = R.R;
  return M;
}

// --------------------------------------------------------------------- G(3)

Mat5 wedge_gal3(const Vec10& x) {
  Mat5 U = Mat5::Zero();
  U.topLeftCorner<3, 3>() = skew(x.head<3>());
  U.block<3, 1>(0, 3) = x.segment<3>(3);
  U.block<3, 1>(0, 4) = x.segment<3>(6);
  U(3, 4) = x(9);
  return U;
}

Vec10 vee_gal3(const Mat5& U, double tol) {
  check_pattern(U.row(4).norm() <= tol && U.block<1, 4>(3, 0).norm() <= tol &&
                    (U.topLeftCorner<3, 3>() + U.topLeftCorner<3, 3>().transpose()).norm() <= tol,
                "vee_gal3");
  Vec10 x;
  x.head<3>() = unskew(U.topLeftCorner<3, 3>());
  x.segment<3>(3) = U.block<3, 1>(0, 3);
  x.segment<3>(6) = U.block<3, 1>(0, 4);
  x(9) = U(3, 4);
  return x;
}

Mat10 ad_gal3(const Vec10& x) {
  Mat10 M = Mat10::Zero();
  const Mat3 W = skew(x.head<3>());
  M.block<3, 3>(0, 0) = W;
  M.block<3, 3>(3, 3) = W;
  M.block<3, 3>(6, 6) = W;
  M.block<3, 3>(3, 0) = skew(x.segment<3>(3));
  M.block<3, 3>(6, 0) = skew(x.segment<3>(6));
  M.block<3, 3>(6, 3) = -x(9) * Mat3::Identity();
  M.block<3, 1>(6, 9) = x.segment<3>(3);
  return M;
}

Mat10 jl_gal3(const Vec10& x) {
  const Vec3 w = x.head<3>();
  const Vec3 v = x.segment<3>(3);
  const Vec3 r = x.segment<3>(6);
  const double alpha = x(9);
  const Mat3 G1 = gamma1_so3(w);
  Mat10 J = Mat10::Zero();
  J.block<3, 3>(0, 0) = G1;
  J.block<3, 3>(3, 3) = G1;
  J.block<3, 3>(6, 6) = G1;
  J.block<3, 3>(3, 0) = q1_so3(w, v);
  J.block<3, 3>(6, 0) = q1_so3(w, r) - alpha * q2_so3(w, v);
  J.block<3, 3>(6, 3) = -alpha * u1_so3(w);
  J.block<3, 1>(6, 9) = gamma2_so3(w) * v;
  J(9, 9) = 1.0;
  return J;
}

Mat10 jl_gal3_series(const Vec10& x, int terms) {
  const Mat10 A = ad_gal3(x);
  Mat10 S = Mat10::Zero();
  Mat10 Ak = Mat10::Identity();
  double f = 1.0;
  for (int k = 0; k < terms; ++k) {
    f *= (k + 1);
    S += Ak / f;
    Ak = Ak * A;
  }
  return S;
}

Gal3 Gal3::Exp(const Vec10& x) {
  const Vec3 w = x.head<3>();
  const Mat3 G1 = gamma1_so3(w);
  const double alpha = x(9);
  return Gal3(SO3::Exp(w), Vec3(G1 * x.segment<3>(3)),
              Vec3(G1 * x.segment<3>(6) + alpha * gamma2_so3(w) * x.segment<3>(3)),
              alpha);
}

Vec10 Gal3::log() const {
  Vec10 x;
  const Vec3 w = R.log();
  const Mat3 G1inv = gamma1_so3(w).inverse();
  const Vec3 v = G1inv * a;
  x.head<3>() = w;
  x.segment<3>(3) = v;
  x.segment<3>(6) = G1inv * (b - c * gamma2_so3(w) * v);
  x(9) = c;
  return x;
}

Mat5 Gal3::matrix() const {
  Mat5 M = Mat5::Identity();
  M.topLeftCorner<3, 3>() = R.R;
  M.block<3, 1>(0, 3) = a;
  M.block<3, 1>(0, 4) = b;
  M(3, 4) = c;
  return M;
}

Gal3 Gal3::from_matrix(const Mat5& M) {
  return Gal3(SO3(Mat3(M.topLeftCorner<3, 3>())), Vec3(M.block<3, 1>(0, 3)),
              Vec3(M.block<3, 1>(0, 4)), M(3, 4));
}

Mat10 Gal3::Ad() const {
  Mat10 M = Mat10::Zero();
  const Mat3& A = R.R;
  M.block<3, 3>(0, 0) = A;
  M.block<3, 3>(3, 3) = A;
  M.block<3, 3>(6, 6) = A;
  M.block<3, 3>(3, 0) = skew(a) * A;
  M.block<3, 3>(6, 0) = skew(Vec3(b - c * a)) * A;
  M.block<3, 3>(6, 3) = -c * A;
  M.block<3, 1>(6, 9) = a;
  M(9, 9) = 1.0;
  return M;
}

// ----------------------------------------------------------------------- IN

Mat3 wedge_in5(const Vec5& u) {
  Mat3 U = Mat3::Zero();
  U(0, 0) = u(0);
  U(1, 1) = u(1);
  U(0, 1) = u(2);
  U(0, 2) = u(3);
  U(1, 2) = u(4);
  return U;
}

Vec5 vee_in5(const Mat3& U, double tol) {
  check_pattern(std::abs(U(1, 0)) <= tol && U.row(2).norm() <= tol, "vee_in5");
  Vec5 u;
  u << U(0, 0), U(1, 1), U(0, 1), U(0, 2), U(1, 2);
  return u;
}

Eigen::Matrix<double, 5, 5> ad_in5(const Vec5& u) {
  // Columns of [u^, e_i^] over the 5 basis directions.
  Eigen::Matrix<double, 5, 5> M;
  const Mat3 U = wedge_in5(u);
  for (int i = 0; i < 5; ++i) {
    Vec5 e = Vec5::Zero();
    e(i) = 1.0;
    const Mat3 V = wedge_in5(e);
    M.col(i) = vee_in5(Mat3(U * V - V * U));
  }
  return M;
}

In5 In5::Exp(const Vec5& u) { return from_matrix(Mat3(wedge_in5(u).exp())); }

Vec5 In5::log() const { return vee_in5(Mat3(matrix().log()), 1e-7); }

Mat3 In5::matrix() const {
  Mat3 M = Mat3::Identity();
  M(0, 0) = a;
  M(1, 1) = b;
  M(0, 1) = s;
  M(0, 2) = x;
  M(1, 2) = y;
  return M;
}

In5 In5::from_matrix(const Mat3& M) {
  return In5(M(0, 0), M(1, 1), M(0, 1), M(0, 2), M(1, 2));
}

Eigen::Matrix<double, 5, 5> In5::Ad() const {
  Eigen::Matrix<double, 5, 5> M;
  const Mat3 X = matrix();
  const Mat3 Xinv = inv().matrix();
  for (int i = 0; i < 5; ++i) {
    Vec5 e = Vec5::Zero();
    e(i) = 1.0;
    M.col(i) = vee_in5(Mat3(X * wedge_in5(e) * Xinv));
  }
  return M;
}

// ---------------------------------------------------------------------- IN4

Mat3 wedge_in4(const Vec4& u) {
  Mat3 U = Mat3::Zero();
  U(0, 0) = u(0);
  U(1, 1) = u(1);
  U(0, 2) = u(2);
  U(1, 2) = u(3);
  return U;
}

Vec4 vee_in4(const Mat3& U, double tol) {
  check_pattern(std::abs(U(1, 0)) <= tol && std::abs(U(0, 1)) <= tol &&
                    U.row(2).norm() <= tol,
                "vee_in4");
  return Vec4(U(0, 0), U(1, 1), U(0, 2), U(1, 2));
}

Mat4 ad_in4(const Vec4& u) {
  Mat4 M = Mat4::Zero();
  M(2, 0) = -u(2);
  M(2, 2) = u(0);
  M(3, 1) = -u(3);
  M(3, 3) = u(1);
  return M;
}

In4 In4::Exp(const Vec4& u) {
  return In4(std::exp(u(0)), std::exp(u(1)), u(2) * phi1(u(0)), u(3) * phi1(u(1)));
}

Vec4 In4::log() const {
  const double a = std::log(fx);
  const double b = std::log(fy);
  return Vec4(a, b, cx / phi1(a), cy / phi1(b));
}

Mat3 In4::matrix() const {
  Mat3 M = Mat3::Identity();
  M(0, 0) = fx;
  M(1, 1) = fy;
  M(0, 2) = cx;
  M(1, 2) = cy;
  return M;
}

In4 In4::from_matrix(const Mat3& M) {
  return In4(M(0, 0), M(1, 1), M(0, 2), M(1, 2));
}

Mat4 In4::Ad() const {
  Mat4 M = Mat4::Identity();
  M(2, 0) = -cx;
  M(2, 2) = fx;
  M(3, 1) = -cy;
  M(3, 3) = fy;
  return M;
}

}  // namespace eqnav::lie
