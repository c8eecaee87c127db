#include "eqnav/msceqf/hybrid.hpp"

namespace eqnav::msceqf {

using namespace eqnav::lie;
using sym::Xi;
using sym::XElem;

namespace {

// Minimal SOT(3) element mapping src to dst (rotation about src x dst plus
// the norm ratio).
SOT3 sot3_between(const Vec3& src, const Vec3& dst) {
  const double q = dst.norm() / src.norm();
  const Vec3 a = src.normalized(), b = dst.normalized();
  const Vec3 ax = a.cross(b);
  Mat3 R = Mat3::Identity();
  if (ax.norm() > 1e-14) {
    const double ang = std::atan2(ax.norm(), a.dot(b));
    R = exp_so3(Vec3(ang * ax.normalized()));
  } else if (a.dot(b) < 0.0) {
    throw std::domain_error("sot3_between: antipodal directions");
  }
  return SOT3(SO3(R), q);
}

Vec3 cam_feature(const Xi& xi) {
  const SE3 PS = Theta(xi.T) * xi.S;
  return PS.inv() * xi.pf;
}

}  // namespace

XElem SymVinsHybrid::identity() const {
  XElem x = core_.identity();
  x.Q = SOT3();
  return x;
}

XElem SymVinsHybrid::compose(const XElem& a, const XElem& b) const {
  XElem x = core_.compose(a, b);
  x.Q = a.Q * b.Q;
  return x;
}

XElem SymVinsHybrid::inverse(const XElem& a) const {
  XElem x = core_.inverse(a);
  x.Q = a.Q.inv();
  return x;
}

XElem SymVinsHybrid::exp(const VecX& eps) const {
  XElem x = core_.exp(eps.head<25>());
  x.Q = SOT3::Exp(eps.tail<4>());
  return x;
}

VecX SymVinsHybrid::log(const XElem& a) const {
  VecX eps(29);
  eps.head<25>() = core_.log(a);
  eps.tail<4>() = a.Q.log();
  return eps;
}

MatX SymVinsHybrid::Ad(const XElem& a) const {
  MatX M = MatX::Zero(29, 29);
  M.topLeftCorner<25, 25>() = core_.Ad(a);
  M.bottomRightCorner<4, 4>() = a.Q.Ad();
  return M;
}

MatX SymVinsHybrid::ad(const VecX& eps) const {
  MatX M = MatX::Zero(29, 29);
  M.topLeftCorner<25, 25>() = core_.ad(eps.head<25>());
  M.bottomRightCorner<4, 4>() = ad_sot3(eps.tail<4>());
  return M;
}

Xi SymVinsHybrid::phi(const XElem& X, const Xi& xi) const {
  Xi out = core_.phi(X, xi);
  const SE3 PS = Theta(xi.T) * xi.S;
  out.pf = (PS * X.E) * (X.Q.inv() * (PS.inv() * xi.pf));
  return out;
}

VecX SymVinsHybrid::lift(const Xi& xi, const VecX& u) const {
  VecX lam(29);
  lam.head<25>() = core_.lift(xi, u);
  const Vec3 cf = cam_feature(xi);
  const double n2 = cf.squaredNorm();
  if (n2 < 1e-12) throw std::domain_error("hybrid lift: feature at camera");
  const Vec3 Om = lam.segment<3>(15);
  const Vec3 wt = lam.segment<3>(18);
  lam.segment<3>(25) = Om + cf.cross(wt) / n2;
  lam(28) = cf.dot(wt) / n2;
  return lam;
}

XElem SymVinsHybrid::group_from_state(const Xi& xi, const Xi& o) const {
  XElem Z = core_.group_from_state(xi, o);
  // feature slot: P0 S0 E_Z * Q^-1 (P0 S0)^-1 p0 = pf
  const SE3 PS0 = Theta(o.T) * o.S;
  const Vec3 target = (PS0 * Z.E).inv() * xi.pf;
  const Vec3 c0 = PS0.inv() * o.pf;
  Z.Q = sot3_between(target, c0);  // Q^-1 c0 = target
  return Z;
}

Xi SymVinsHybrid::state_retract(const Xi& xi, const VecX& d) const {
  Xi out = core_.state_retract(xi, d.head<25>());
  out.pf = xi.pf + d.tail<4>().head<3>();
  return out;
}

VecX SymVinsHybrid::state_delta(const Xi& a, const Xi& b) const {
  VecX d = VecX::Zero(29);
  d.head<25>() = core_.state_delta(a, b);
  d.segment<3>(25) = b.pf - a.pf;
  return d;
}

VecX SymVinsHybrid::dynamics(const Xi& xi, const VecX& u) const {
  VecX d = VecX::Zero(29);
  d.head<25>() = core_.dynamics(xi, u);
  return d;  // static landmark
}

MatX hybrid_A(const SymVinsHybrid& sym, const EqfState& s, const VecX& u) {
  MatX A = MatX::Zero(29, 29);
  A.topLeftCorner<25, 25>() = msceqf_A(sym.core(), s, u);

  const Mat3& Qr = s.Xhat.Q.R.R;
  const double qs = s.Xhat.Q.s;
  const Vec3 c0 = (Theta(s.origin.T) * s.origin.S).inv() * s.origin.pf;
  const Vec3 gamma = (1.0 / qs) * (Qr.transpose() * c0);
  const double n2 = gamma.squaredNorm();
  Eigen::Matrix<double, 3, 4> zeta;
  zeta.leftCols<3>() = skew(c0);
  zeta.col(3) = -c0;
  zeta = ((1.0 / qs) * (Qr.transpose() * zeta)).eval();

  // [Upsilon; Gamma] = Ad_{E^-1} [5A 6A 7A 0 0]
  MatX M = MatX::Zero(6, 29);
  M.leftCols<21>() = A.block<6, 21>(15, 0);
  M = (s.Xhat.E.inv().Ad() * M).eval();
  const MatX Ups = M.topRows<3>();
  const MatX Gam = M.bottomRows<3>();

  // omega: translational part of Lambda_3 at the estimate
  const Xi est = sym.core().phi(s.Xhat, s.origin);
  VecX ufull = VecX::Zero(22);
  ufull.head(u.size()) = u;
  const Vec3 om = sym.core().lift(est, ufull).segment<3>(18);

  MatX Theta_m = MatX::Zero(3, 29);
  Theta_m.rightCols<4>() =
      (Mat3::Identity() - 2.0 * gamma * gamma.transpose() / n2) * zeta;

  A.block<3, 29>(25, 0) =
      Qr * (Ups + (skew(gamma) * Gam - skew(om) * Theta_m) / n2);
  A.block<1, 29>(28, 0) =
      (gamma.transpose() * Gam + om.transpose() * Theta_m) / n2;
  return A;
}

MatX hybrid_B(const SymVinsHybrid& sym, const EqfState& s, const VecX& u) {
  (void)u;
  MatX B = MatX::Zero(29, 12);
  B.topLeftCorner<25, 12>() = msceqf_B(sym.core(), s);
  const Mat3& Qr = s.Xhat.Q.R.R;
  const double qs = s.Xhat.Q.s;
  const Vec3 c0 = (Theta(s.origin.T) * s.origin.S).inv() * s.origin.pf;
  const Vec3 gamma = (1.0 / qs) * (Qr.transpose() * c0);
  const double n2 = gamma.squaredNorm();
  const MatX fourB = s.Xhat.E.inv().Ad() * B.block<6, 6>(15, 0);
  Eigen::Matrix<double, 3, 6> sel;
  sel.leftCols<3>() = Mat3::Identity();
  sel.rightCols<3>() = skew(gamma) / n2;
  B.block<3, 6>(25, 0) = Qr * sel * fourB;
  Eigen::Matrix<double, 1, 6> sel2 = Eigen::Matrix<double, 1, 6>::Zero();
  B.block<1, 6>(28, 0) =
      (gamma.transpose() / n2) * fourB.bottomRows<3>();
  (void)sel2;
  return B;
}

OutputModel persistent_feature_output(const SymVinsHybrid& sym,
                                      const EqfState& s, const Vec3& y,
                                      const Mat3& R_meas) {
  OutputModel out;
  const Vec3 c0 = (Theta(s.origin.T) * s.origin.S).inv() * s.origin.pf;
  if (c0.norm() < 1e-6)
    throw std::domain_error("persistent feature at the camera origin");
  const Vec3 y0 = pi_s2(c0);
  const Vec3 Qy = s.Xhat.Q.R.R * y;
  out.residual = y0.cross(Qy);
  out.C = MatX::Zero(3, 29);
  out.C.block<3, 3>(0, 25) = 0.5 * skew(y0) * skew(Vec3(y0 + Qy));
  out.Dt = s.Xhat.Q.R.R;
  out.R = R_meas;
  (void)sym;
  return out;
}

}  // namespace eqnav::msceqf
