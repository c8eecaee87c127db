#include "eqnav/lie/maps.hpp"

namespace eqnav::lie {

Vec3 pi_z1(const Vec3& v) {
  if (v.z() == 0.0) throw std::domain_error("pi_z1: zero z component");
  return v / v.z();
}

Vec3 pi_s2(const Vec3& v) {
  const double n = v.norm();
  if (n == 0.0) throw std::domain_error("pi_s2: zero vector");
  return v / n;
}

Eigen::Matrix<double, 2, 3> dpi_z1(const Vec3& v) {
  Eigen::Matrix<double, 2, 3> D;
  const double z = v.z();
  D << 1.0 / z, 0.0, -v.x() / (z * z), 0.0, 1.0 / z, -v.y() / (z * z);
  return D;
}

Mat3 dpi_s2(const Vec3& v) {
  const double n = v.norm();
  return (Mat3::Identity() - (v * v.transpose()) / (n * n)) / n;
}

Eigen::Matrix<double, 3, 4> xi_mat(const Vec3& v) {
  Eigen::Matrix<double, 3, 4> M = Eigen::Matrix<double, 3, 4>::Zero();
  M(0, 0) = v.x();
  M(1, 1) = v.y();
  M(0, 2) = v.z();
  M(1, 3) = v.z();
  return M;
}

Mat3 GammaR(const SE3& X) { return X.R.R; }
Mat3 GammaR(const SE23& X) { return X.R.R; }

SE3 chi(const SE23& X) { return SE3(X.R, X.v); }
SE3 Theta(const SE23& X) { return SE3(X.R, X.p); }

Vec9 Omega(const SE23& X) {
  Vec9 x = Vec9::Zero();
  x.tail<3>() = X.v;
  return x;
}

Vec6 Pi(const Vec9& x) {
  Vec6 y;
  y.head<3>() = x.head<3>();
  y.tail<3>() = x.segment<3>(3);
  return y;
}

Vec6 Upsilon(const Vec9& x) {
  Vec6 y;
  y.head<3>() = x.head<3>();
  y.tail<3>() = x.tail<3>();
  return y;
}

Vec9 embed_pi(const Vec6& x) {
  Vec9 y = Vec9::Zero();
  y.head<6>() = x;
  return y;
}

}  // namespace eqnav::lie
