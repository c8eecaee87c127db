#include "eqnav/lie/so3.hpp"

#include <cmath>

namespace eqnav::lie {

Mat3 skew(const Vec3& v) {
  Mat3 M;
  M << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return M;
}

Vec3 unskew(const Mat3& M) { return Vec3(M(2, 1), M(0, 2), M(1, 0)); }

Vec3 unskew_checked(const Mat3& M, double tol) {
  if ((M + M.transpose()).norm() > tol || std::abs(M.trace()) > tol)
    throw std::invalid_argument("unskew: matrix is not in so(3)");
  return unskew(M);
}

namespace {

// The closed fractions below cancel catastrophically near zero (t^3..t^5
// denominators), so the Taylor switch sits well above kSmallAngle; the
// truncation error of the 4-term branches is < 1e-16 at this threshold.
constexpr double kTaylorSwitch = 0.02;

// sin(t)/t, (1-cos(t))/t^2, (t-sin(t))/t^3 with Taylor branches.
double sinc(double t) {
  if (std::abs(t) < kTaylorSwitch) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0;
  }
  return std::sin(t) / t;
}

double one_minus_cos(double t) {
  if (std::abs(t) < kTaylorSwitch) {
    const double t2 = t * t;
    return 0.5 - t2 / 24.0 + t2 * t2 / 720.0 - t2 * t2 * t2 / 40320.0;
  }
  return (1.0 - std::cos(t)) / (t * t);
}

double t_minus_sin(double t) {
  if (std::abs(t) < kTaylorSwitch) {
    const double t2 = t * t;
    return 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0 - t2 * t2 * t2 / 362880.0;
  }
  return (t - std::sin(t)) / (t * t * t);
}

double gamma2_c2(double t) {
  // (t^2 + 2cos(t) - 2) / (2 t^4)
  if (std::abs(t) < kTaylorSwitch) {
    const double t2 = t * t;
    return 1.0 / 24.0 - t2 / 720.0 + t2 * t2 / 40320.0 - t2 * t2 * t2 / 3628800.0;
  }
  return (t * t + 2.0 * std::cos(t) - 2.0) / (2.0 * t * t * t * t);
}

}  // namespace

Mat3 exp_so3(const Vec3& w) {
  const double t = w.norm();
  const Mat3 W = skew(w);
  return Mat3::Identity() + sinc(t) * W + one_minus_cos(t) * W * W;
}

Vec3 log_so3(const Mat3& R) {
  // atan2-based angle extraction.
  const Vec3 axis_raw(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));
  const double s = 0.5 * axis_raw.norm();
  const double c = 0.5 * (R.trace() - 1.0);
  const double t = std::atan2(s, c);
  if (t >= kLogBranchGuard)
    throw std::domain_error("log_so3: rotation angle too close to pi");
  if (s < 1e-12) return 0.5 * axis_raw;  // t ~ 0 and cos > 0 on this branch
  return (0.5 * t / std::sin(t)) * axis_raw;
}

Mat3 gamma0_so3(const Vec3& w) { return exp_so3(w); }

Mat3 gamma1_so3(const Vec3& w) {
  const double t = w.norm();
  const Mat3 W = skew(w);
  return Mat3::Identity() + one_minus_cos(t) * W + t_minus_sin(t) * W * W;
}

Mat3 gamma2_so3(const Vec3& w) {
  const double t = w.norm();
  const Mat3 W = skew(w);
  return 0.5 * Mat3::Identity() + t_minus_sin(t) * W + gamma2_c2(t) * W * W;
}

Mat3 jl_so3(const Vec3& w) { return gamma1_so3(w); }
Mat3 jr_so3(const Vec3& w) { return gamma1_so3(-w); }

Mat3 jl_inv_so3(const Vec3& w) {
  const double t = w.norm();
  const Mat3 W = skew(w);
  double c;
  if (t < kSmallAngle) {
    const double t2 = t * t;
    c = 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0;
  } else {
    c = (1.0 / (t * t)) - (1.0 + std::cos(t)) / (2.0 * t * std::sin(t));
  }
  return Mat3::Identity() - 0.5 * W + c * W * W;
}

Mat3 jr_inv_so3(const Vec3& w) { return jl_inv_so3(-w); }

Mat3 project_so3(const Mat3& M) {
  Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 R = svd.matrixU() * svd.matrixV().transpose();
  if (R.determinant() < 0.0) {
    Mat3 D = Mat3::Identity();
    D(2, 2) = -1.0;
    R = svd.matrixU() * D * svd.matrixV().transpose();
  }
  return R;
}

bool is_rotation(const Mat3& R, double tol) {
  return (R.transpose() * R - Mat3::Identity()).norm() <= tol &&
         std::abs(R.determinant() - 1.0) <= tol;
}

}  // namespace eqnav::lie
