#include "eqnav/sym/variants.hpp"

namespace eqnav::sym {

using namespace eqnav::lie;

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::E_SO3xR12: return "mekf";
    case Variant::F_SE23xR6: return "iekf";
    case Variant::C_TwoFrames: return "tfg";
    case Variant::D_TangentGroup: return "tg";
    case Variant::A_DirectPosition: return "dp";
    case Variant::B_SemiDirectBias: return "sd";
    case Variant::ATT_TangentSO3: return "att-eqf";
    case Variant::ATT_Direct: return "att-iekf";
    case Variant::MS21_ArduPilot: return "ms21";
    case Variant::VINS_MSCEqF: return "vins";
  }
  return "?";
}

VecX Symmetry::error_coords(const Xi& xi, const XElem& Xhat,
                            const Xi& origin) const {
  const Xi e = phi(inverse(Xhat), xi);
  return err_log(group_from_state(e, origin));
}

Vec9 ins_lambda1(const SE23& T, const VecX& b, const Vec3& omega,
                 const Vec3& accel, const Vec3& nu, const Vec3& gravity) {
  Vec9 lam;
  const Mat3 Rt = T.R.R.transpose();
  const Vec3 bw = b.segment<3>(0);
  const Vec3 ba = b.segment<3>(3);
  const Vec3 bv = (b.size() >= 9) ? Vec3(b.segment<3>(6)) : Vec3(Vec3::Zero());
  lam.head<3>() = omega - bw;
  lam.segment<3>(3) = accel - ba + Rt * gravity;
  lam.tail<3>() = nu - bv + Rt * T.v;
  return lam;
}

namespace {

Mat3 rot(const Xi& xi) { return xi.T.R.R; }

// Blockwise rotation of stacked 3-vectors (the two-frames "*" action).
VecX star(const Mat3& A, const VecX& x) {
  VecX y(x.size());
  for (int i = 0; i < x.size(); i += 3) y.segment<3>(i) = A * x.segment<3>(i);
  return y;
}

// Chart shared by the SE2(3)-carrier variants: (R, v, p, b...).
Xi ins_retract(const Xi& xi, const VecX& d) {
  Xi out = xi;
  out.T.R = xi.T.R * SO3::Exp(d.head<3>());
  out.T.v += d.segment<3>(3);
  out.T.p += d.segment<3>(6);
  out.b = xi.b + d.tail(xi.b.size());
  return out;
}

VecX ins_delta(const Xi& a, const Xi& b) {
  VecX d(9 + a.b.size());
  d.head<3>() = (a.T.R.inv() * b.T.R).log();
  d.segment<3>(3) = b.T.v - a.T.v;
  d.segment<3>(6) = b.T.p - a.T.p;
  d.tail(a.b.size()) = b.b - a.b;
  return d;
}

}  // namespace

// ======================================================================== E

int SymE::dof() const { return 15; }
int SymE::input_dim() const { return 12; }

XElem SymE::identity() const {
  XElem x;
  x.delta = VecX::Zero(12);
  return x;
}

XElem SymE::compose(const XElem& a, const XElem& b) const {
  XElem x;
  x.D.R = a.D.R * b.D.R;
  x.delta = a.delta + b.delta;
  return x;
}

XElem SymE::inverse(const XElem& a) const {
  XElem x;
  x.D.R = a.D.R.inv();
  x.delta = -a.delta;
  return x;
}

XElem SymE::exp(const VecX& eps) const {
  XElem x;
  x.D.R = SO3::Exp(eps.head<3>());
  x.delta = eps.tail(12);
  return x;
}

VecX SymE::log(const XElem& a) const {
  VecX eps(15);
  eps.head<3>() = a.D.R.log();
  eps.tail(12) = a.delta;
  return eps;
}

MatX SymE::Ad(const XElem& a) const {
  MatX M = MatX::Identity(15, 15);
  M.topLeftCorner<3, 3>() = a.D.R.R;
  return M;
}

MatX SymE::ad(const VecX& eps) const {
  MatX M = MatX::Zero(15, 15);
  M.topLeftCorner<3, 3>() = skew(eps.head<3>());
  return M;
}

Xi SymE::phi(const XElem& X, const Xi& xi) const {
  Xi out = xi;
  out.T.R = xi.T.R * X.D.R;
  out.T.v = xi.T.v + X.delta.segment<3>(0);
  out.T.p = xi.T.p + X.delta.segment<3>(3);
  out.b = xi.b + X.delta.tail<6>();
  return out;
}

VecX SymE::lift(const Xi& xi, const VecX& u) const {
  VecX lam(15);
  const Vec3 omega = u.head<3>(), accel = u.segment<3>(3);
  lam.head<3>() = omega - Vec3(xi.b.head<3>());
  lam.segment<3>(3) =
      rot(xi) * (accel - Vec3(xi.b.tail<3>())) + world_.gravity();
  lam.segment<3>(6) = xi.T.v;
  lam.tail<6>() = u.tail<6>();
  return lam;
}

XElem SymE::group_from_state(const Xi& xi, const Xi& o) const {
  XElem Z;
  Z.D.R = o.T.R.inv() * xi.T.R;
  Z.delta = VecX(12);
  Z.delta.segment<3>(0) = xi.T.v - o.T.v;
  Z.delta.segment<3>(3) = xi.T.p - o.T.p;
  Z.delta.tail<6>() = xi.b - o.b;
  return Z;
}

Xi SymE::state_retract(const Xi& xi, const VecX& d) const {
  return ins_retract(xi, d);
}
VecX SymE::state_delta(const Xi& a, const Xi& b) const {
  return ins_delta(a, b);
}

VecX SymE::dynamics(const Xi& xi, const VecX& u) const {
  VecX d(15);
  d.head<3>() = Vec3(u.head<3>()) - Vec3(xi.b.head<3>());
  d.segment<3>(3) =
      rot(xi) * (Vec3(u.segment<3>(3)) - Vec3(xi.b.tail<3>())) + world_.gravity();
  d.segment<3>(6) = xi.T.v;
  d.tail<6>() = u.tail<6>();
  return d;
}

// ======================================================================== F

int SymF::dof() const { return 15; }
int SymF::input_dim() const { return 12; }

XElem SymF::identity() const {
  XElem x;
  x.delta = VecX::Zero(6);
  return x;
}

XElem SymF::compose(const XElem& a, const XElem& b) const {
  XElem x;
  x.D = a.D * b.D;
  x.delta = a.delta + b.delta;
  return x;
}

XElem SymF::inverse(const XElem& a) const {
  XElem x;
  x.D = a.D.inv();
  x.delta = -a.delta;
  return x;
}

XElem SymF::exp(const VecX& eps) const {
  XElem x;
  x.D = SE23::Exp(eps.head<9>());
  x.delta = eps.tail(6);
  return x;
}

VecX SymF::log(const XElem& a) const {
  VecX eps(15);
  eps.head<9>() = a.D.log();
  eps.tail(6) = a.delta;
  return eps;
}

MatX SymF::Ad(const XElem& a) const {
  MatX M = MatX::Identity(15, 15);
  M.topLeftCorner<9, 9>() = a.D.Ad();
  return M;
}

MatX SymF::ad(const VecX& eps) const {
  MatX M = MatX::Zero(15, 15);
  M.topLeftCorner<9, 9>() = ad_se23(eps.head<9>());
  return M;
}

Xi SymF::phi(const XElem& X, const Xi& xi) const {
  Xi out = xi;
  out.T = xi.T * X.D;
  out.b = xi.b + X.delta;
  return out;
}

VecX SymF::lift(const Xi& xi, const VecX& u) const {
  VecX lam(15);
  lam.head<9>() = ins_lambda1(xi.T, xi.b, u.head<3>(), u.segment<3>(3),
                              Vec3::Zero(), world_.gravity());
  lam.tail<6>() = u.tail<6>();
  return lam;
}

XElem SymF::group_from_state(const Xi& xi, const Xi& o) const {
  XElem Z;
  Z.D = o.T.inv() * xi.T;
  Z.delta = xi.b - o.b;
  return Z;
}

Xi SymF::state_retract(const Xi& xi, const VecX& d) const {
  return ins_retract(xi, d);
}
VecX SymF::state_delta(const Xi& a, const Xi& b) const {
  return ins_delta(a, b);
}

VecX SymF::dynamics(const Xi& xi, const VecX& u) const {
  VecX d(15);
  d.head<3>() = Vec3(u.head<3>()) - Vec3(xi.b.head<3>());
  d.segment<3>(3) =
      rot(xi) * (Vec3(u.segment<3>(3)) - Vec3(xi.b.tail<3>())) + world_.gravity();
  d.segment<3>(6) = xi.T.v;
  d.tail<6>() = u.tail<6>();
  return d;
}

// ======================================================================== C

int SymC::dof() const { return 15; }
int SymC::input_dim() const { return 12; }

XElem SymC::identity() const {
  XElem x;
  x.delta = VecX::Zero(6);
  return x;
}

XElem SymC::compose(const XElem& a, const XElem& b) const {
  XElem x;
  x.D = a.D * b.D;
  x.delta = a.delta + star(a.D.R.R, b.delta);
  return x;
}

XElem SymC::inverse(const XElem& a) const {
  XElem x;
  x.D = a.D.inv();
  x.delta = -star(a.D.R.R.transpose(), a.delta);
  return x;
}

XElem SymC::exp(const VecX& eps) const {
  XElem x;
  x.D = SE23::Exp(eps.head<9>());
  const Mat3 G1 = gamma1_so3(eps.head<3>());
  x.delta = VecX(6);
  x.delta.head<3>() = G1 * eps.segment<3>(9);
  x.delta.tail<3>() = G1 * eps.tail<3>();
  return x;
}

VecX SymC::log(const XElem& a) const {
  VecX eps(15);
  eps.head<9>() = a.D.log();
  const Mat3 G1inv = gamma1_so3(eps.head<3>()).inverse();
  eps.segment<3>(9) = G1inv * a.delta.head<3>();
  eps.tail<3>() = G1inv * a.delta.tail<3>();
  return eps;
}

MatX SymC::Ad(const XElem& a) const {
  MatX M = MatX::Zero(15, 15);
  const Mat3& A = a.D.R.R;
  M.topLeftCorner<9, 9>() = a.D.Ad();
  M.block<3, 3>(9, 9) = A;
  M.block<3, 3>(12, 12) = A;
  M.block<3, 3>(9, 0) = skew(a.delta.head<3>()) * A;
  M.block<3, 3>(12, 0) = skew(a.delta.tail<3>()) * A;
  return M;
}

MatX SymC::ad(const VecX& eps) const {
  MatX M = MatX::Zero(15, 15);
  const Mat3 W = skew(eps.head<3>());
  M.topLeftCorner<9, 9>() = ad_se23(eps.head<9>());
  M.block<3, 3>(9, 9) = W;
  M.block<3, 3>(12, 12) = W;
  M.block<3, 3>(9, 0) = skew(eps.segment<3>(9));
  M.block<3, 3>(12, 0) = skew(eps.tail<3>());
  return M;
}

Xi SymC::phi(const XElem& X, const Xi& xi) const {
  Xi out = xi;
  out.T = xi.T * X.D;
  out.b = star(X.D.R.R.transpose(), VecX(xi.b - X.delta));
  return out;
}

VecX SymC::lift(const Xi& xi, const VecX& u) const {
  VecX lam(15);
  const Vec3 omega = u.head<3>();
  const Vec3 wmb = omega - Vec3(xi.b.head<3>());
  lam.head<9>() = ins_lambda1(xi.T, xi.b, omega, u.segment<3>(3), Vec3::Zero(),
                              world_.gravity());
  lam.segment<3>(9) = Vec3(xi.b.head<3>()).cross(wmb) - Vec3(u.segment<3>(6));
  lam.tail<3>() = Vec3(xi.b.tail<3>()).cross(wmb) - Vec3(u.tail<3>());
  return lam;
}

XElem SymC::group_from_state(const Xi& xi, const Xi& o) const {
  XElem Z;
  Z.D = o.T.inv() * xi.T;
  Z.delta = o.b - star(Z.D.R.R, xi.b);
  return Z;
}

Xi SymC::state_retract(const Xi& xi, const VecX& d) const {
  return ins_retract(xi, d);
}
VecX SymC::state_delta(const Xi& a, const Xi& b) const {
  return ins_delta(a, b);
}

VecX SymC::dynamics(const Xi& xi, const VecX& u) const {
  VecX d(15);
  d.head<3>() = Vec3(u.head<3>()) - Vec3(xi.b.head<3>());
  d.segment<3>(3) =
      rot(xi) * (Vec3(u.segment<3>(3)) - Vec3(xi.b.tail<3>())) + world_.gravity();
  d.segment<3>(6) = xi.T.v;
  d.tail<6>() = u.tail<6>();
  return d;
}

// ======================================================================== D

int SymD::dof() const { return 18; }
int SymD::input_dim() const { return 18; }

XElem SymD::identity() const {
  XElem x;
  x.delta = VecX::Zero(9);
  return x;
}

XElem SymD::compose(const XElem& a, const XElem& b) const {
  XElem x;
  x.D = a.D * b.D;
  x.delta = a.delta + a.D.Ad() * b.delta;
  return x;
}

XElem SymD::inverse(const XElem& a) const {
  XElem x;
  x.D = a.D.inv();
  x.delta = -(x.D.Ad() * a.delta);
  return x;
}

XElem SymD::exp(const VecX& eps) const {
  XElem x;
  x.D = SE23::Exp(eps.head<9>());
  x.delta = jl_se23(eps.head<9>()) * eps.tail<9>();
  return x;
}

VecX SymD::log(const XElem& a) const {
  VecX eps(18);
  eps.head<9>() = a.D.log();
  eps.tail<9>() = jl_se23(eps.head<9>()).inverse() * a.delta;
  return eps;
}

MatX SymD::Ad(const XElem& a) const {
  MatX M = MatX::Zero(18, 18);
  const Mat9 AdD = a.D.Ad();
  M.topLeftCorner<9, 9>() = AdD;
  M.bottomRightCorner<9, 9>() = AdD;
  M.bottomLeftCorner<9, 9>() = ad_se23(a.delta) * AdD;
  return M;
}

MatX SymD::ad(const VecX& eps) const {
  MatX M = MatX::Zero(18, 18);
  const Mat9 adT = ad_se23(eps.head<9>());
  M.topLeftCorner<9, 9>() = adT;
  M.bottomRightCorner<9, 9>() = adT;
  M.bottomLeftCorner<9, 9>() = ad_se23(eps.tail<9>());
  return M;
}

Xi SymD::phi(const XElem& X, const Xi& xi) const {
  Xi out = xi;
  out.T = xi.T * X.D;
  out.b = X.D.inv().Ad() * (xi.b - X.delta);
  return out;
}

VecX SymD::lift(const Xi& xi, const VecX& u) const {
  VecX lam(18);
  const Vec9 l1 = ins_lambda1(xi.T, xi.b, u.head<3>(), u.segment<3>(3),
                              u.segment<3>(6), world_.gravity());
  lam.head<9>() = l1;
  lam.tail<9>() = ad_se23(xi.b) * l1 - u.tail<9>();
  return lam;
}

VecX SymD::psi(const XElem& X, const VecX& u) const {
  VecX out(18);
  const Mat9 AdDinv = X.D.inv().Ad();
  out.head<9>() = AdDinv * (u.head<9>() - X.delta) + Omega(X.D.inv());
  out.tail<9>() = AdDinv * u.tail<9>();
  return out;
}

XElem SymD::group_from_state(const Xi& xi, const Xi& o) const {
  XElem Z;
  Z.D = o.T.inv() * xi.T;
  Z.delta = o.b - Z.D.Ad() * xi.b;
  return Z;
}

Xi SymD::state_retract(const Xi& xi, const VecX& d) const {
  return ins_retract(xi, d);
}
VecX SymD::state_delta(const Xi& a, const Xi& b) const {
  return ins_delta(a, b);
}

VecX SymD::dynamics(const Xi& xi, const VecX& u) const {
  VecX d(18);
  d.head<3>() = Vec3(u.head<3>()) - Vec3(xi.b.head<3>());
  d.segment<3>(3) =
      rot(xi) * (Vec3(u.segment<3>(3)) - Vec3(xi.b.segment<3>(3))) + world_.gravity();
  d.segment<3>(6) =
      rot(xi) * (Vec3(u.segment<3>(6)) - Vec3(xi.b.tail<3>())) + xi.T.v;
  d.tail<9>() = u.tail<9>();
  return d;
}

// ======================================================================== A

int SymA::dof() const { return 15; }
int SymA::input_dim() const { return 15; }

XElem SymA::identity() const {
  XElem x;
  x.delta = VecX::Zero(6);
  return x;
}

XElem SymA::compose(const XElem& a, const XElem& b) const {
  XElem x;
  x.E = a.E * b.E;
  x.delta = a.delta + a.E.Ad() * b.delta;
  x.gamma = a.gamma + b.gamma;
  return x;
}

XElem SymA::inverse(const XElem& a) const {
  XElem x;
  x.E = a.E.inv();
  x.delta = -(x.E.Ad() * a.delta);
  x.gamma = -a.gamma;
  return x;
}

XElem SymA::exp(const VecX& eps) const {
  XElem x;
  x.E = SE3::Exp(eps.head<6>());
  x.delta = jl_se3(eps.head<6>()) * eps.segment<6>(6);
  x.gamma = eps.tail<3>();
  return x;
}

VecX SymA::log(const XElem& a) const {
  VecX eps(15);
  eps.head<6>() = a.E.log();
  eps.segment<6>(6) = jl_se3(eps.head<6>()).inverse() * a.delta;
  eps.tail<3>() = a.gamma;
  return eps;
}

MatX SymA::Ad(const XElem& a) const {
  MatX M = MatX::Identity(15, 15);
  const Mat6 AdB = a.E.Ad();
  M.topLeftCorner<6, 6>() = AdB;
  M.block<6, 6>(6, 6) = AdB;
  M.block<6, 6>(6, 0) = ad_se3(a.delta) * AdB;
  return M;
}

MatX SymA::ad(const VecX& eps) const {
  MatX M = MatX::Zero(15, 15);
  const Mat6 adV = ad_se3(eps.head<6>());
  M.topLeftCorner<6, 6>() = adV;
  M.block<6, 6>(6, 6) = adV;
  M.block<6, 6>(6, 0) = ad_se3(eps.segment<6>(6));
  return M;
}

Xi SymA::phi(const XElem& X, const Xi& xi) const {
  Xi out = xi;
  // HG(3) carrier (R, v); the position transforms linearly.
  const SE3 V(xi.T.R, xi.T.v);
  const SE3 VB = V * X.E;
  out.T.R = VB.R;
  out.T.v = VB.t;
  out.b = X.E.inv().Ad() * (xi.b - X.delta);
  out.T.p = xi.T.p + X.gamma;
  return out;
}

VecX SymA::lift(const Xi& xi, const VecX& u) const {
  VecX lam(15);
  Vec6 l1;
  const Mat3 Rt = rot(xi).transpose();
  l1.head<3>() = Vec3(u.head<3>()) - Vec3(xi.b.head<3>());
  l1.tail<3>() =
      Vec3(u.segment<3>(3)) - Vec3(xi.b.tail<3>()) + Rt * world_.gravity();
  lam.head<6>() = l1;
  lam.segment<6>(6) = ad_se3(xi.b) * l1 - u.segment<6>(6);
  lam.tail<3>() = rot(xi) * Vec3(u.tail<3>()) + xi.T.v;
  return lam;
}

VecX SymA::psi(const XElem& X, const VecX& u) const {
  VecX out(15);
  const Mat6 AdBinv = X.E.inv().Ad();
  out.head<6>() = AdBinv * (u.head<6>() - X.delta);
  out.segment<6>(6) = AdBinv * u.segment<6>(6);
  out.tail<3>() = X.E.R.R.transpose() * (Vec3(u.tail<3>()) - X.E.t);
  return out;
}

XElem SymA::group_from_state(const Xi& xi, const Xi& o) const {
  XElem Z;
  const SE3 Vo(o.T.R, o.T.v), V(xi.T.R, xi.T.v);
  Z.E = Vo.inv() * V;
  Z.delta = o.b - Z.E.Ad() * xi.b;
  Z.gamma = xi.T.p - o.T.p;
  return Z;
}

Xi SymA::state_retract(const Xi& xi, const VecX& d) const {
  Xi out = xi;
  out.T.R = xi.T.R * SO3::Exp(d.head<3>());
  out.T.v += d.segment<3>(3);
  out.b = xi.b + d.segment<6>(6);
  out.T.p += d.tail<3>();
  return out;
}

VecX SymA::state_delta(const Xi& a, const Xi& b) const {
  VecX d(15);
  d.head<3>() = (a.T.R.inv() * b.T.R).log();
  d.segment<3>(3) = b.T.v - a.T.v;
  d.segment<6>(6) = b.b - a.b;
  d.tail<3>() = b.T.p - a.T.p;
  return d;
}

VecX SymA::dynamics(const Xi& xi, const VecX& u) const {
  VecX d(15);
  d.head<3>() = Vec3(u.head<3>()) - Vec3(xi.b.head<3>());
  d.segment<3>(3) =
      rot(xi) * (Vec3(u.segment<3>(3)) - Vec3(xi.b.tail<3>())) + world_.gravity();
  d.segment<6>(6) = u.segment<6>(6);
  d.tail<3>() = rot(xi) * Vec3(u.tail<3>()) + xi.T.v;
  return d;
}

// ======================================================================== B

int SymB::dof() const { return 15; }
int SymB::input_dim() const { return 12; }

XElem SymB::identity() const {
  XElem x;
  x.delta = VecX::Zero(6);
  return x;
}

XElem SymB::compose(const XElem& a, const XElem& b) const {
  XElem x;
  x.D = a.D * b.D;
  x.delta = a.delta + chi(a.D).Ad() * b.delta;
  return x;
}

XElem SymB::inverse(const XElem& a) const {
  XElem x;
  x.D = a.D.inv();
  x.delta = -(chi(x.D).Ad() * a.delta);
  return x;
}

XElem SymB::exp(const VecX& eps) const {
  XElem x;
  x.D = SE23::Exp(eps.head<9>());
  x.delta = jl_se3(Pi(eps.head<9>())) * eps.tail<6>();
  return x;
}

VecX SymB::log(const XElem& a) const {
  VecX eps(15);
  eps.head<9>() = a.D.log();
  eps.tail<6>() = jl_se3(Pi(eps.head<9>())).inverse() * a.delta;
  return eps;
}

MatX SymB::Ad(const XElem& a) const {
  MatX M = MatX::Zero(15, 15);
  const Mat9 AdD = a.D.Ad();
  M.topLeftCorner<9, 9>() = AdD;
  M.bottomRightCorner<6, 6>() = chi(a.D).Ad();
  M.bottomLeftCorner<6, 9>() = ad_se3(a.delta) * AdD.topRows<6>();
  return M;
}

MatX SymB::ad(const VecX& eps) const {
  MatX M = MatX::Zero(15, 15);
  M.topLeftCorner<9, 9>() = ad_se23(eps.head<9>());
  M.bottomRightCorner<6, 6>() = ad_se3(Pi(eps.head<9>()));
  M.block<6, 6>(9, 0) = ad_se3(eps.tail<6>());
  return M;
}

Xi SymB::phi(const XElem& X, const Xi& xi) const {
  Xi out = xi;
  out.T = xi.T * X.D;
  out.b = chi(X.D).inv().Ad() * (xi.b - X.delta);
  return out;
}

VecX SymB::lift(const Xi& xi, const VecX& u) const {
  VecX lam(15);
  const Vec9 l1 = ins_lambda1(xi.T, xi.b, u.head<3>(), u.segment<3>(3),
                              Vec3::Zero(), world_.gravity());
  lam.head<9>() = l1;
  lam.tail<6>() = ad_se3(xi.b) * Pi(l1) - u.tail<6>();
  return lam;
}

VecX SymB::psi(const XElem& X, const VecX& u) const {
  // chi-reduced action; the position row of Lambda_1 has no equivariant
  // counterpart on this input space (the TG variant exists for that).
  VecX out(12);
  const Mat6 AdBinv = chi(X.D).inv().Ad();
  out.head<6>() = AdBinv * (u.head<6>() - X.delta);
  out.tail<6>() = AdBinv * u.tail<6>();
  return out;
}

XElem SymB::group_from_state(const Xi& xi, const Xi& o) const {
  XElem Z;
  Z.D = o.T.inv() * xi.T;
  Z.delta = o.b - chi(Z.D).Ad() * xi.b;
  return Z;
}

Xi SymB::state_retract(const Xi& xi, const VecX& d) const {
  return ins_retract(xi, d);
}
VecX SymB::state_delta(const Xi& a, const Xi& b) const {
  return ins_delta(a, b);
}

VecX SymB::dynamics(const Xi& xi, const VecX& u) const {
  VecX d(15);
  d.head<3>() = Vec3(u.head<3>()) - Vec3(xi.b.head<3>());
  d.segment<3>(3) =
      rot(xi) * (Vec3(u.segment<3>(3)) - Vec3(xi.b.tail<3>())) + world_.gravity();
  d.segment<3>(6) = xi.T.v;
  d.tail<6>() = u.tail<6>();
  return d;
}

std::unique_ptr<Symmetry> make_symmetry(Variant v, const WorldParams& world,
                                        int n_att_calib) {
  switch (v) {
    case Variant::E_SO3xR12: return std::make_unique<SymE>(world);
    case Variant::F_SE23xR6: return std::make_unique<SymF>(world);
    case Variant::C_TwoFrames: return std::make_unique<SymC>(world);
    case Variant::D_TangentGroup: return std::make_unique<SymD>(world);
    case Variant::A_DirectPosition: return std::make_unique<SymA>(world);
    case Variant::B_SemiDirectBias: return std::make_unique<SymB>(world);
    case Variant::ATT_TangentSO3:
      return std::make_unique<SymAtt>(world, n_att_calib);
    case Variant::ATT_Direct:
      return std::make_unique<SymAttDirect>(world, n_att_calib);
    case Variant::MS21_ArduPilot: return std::make_unique<SymMs21>(world);
    case Variant::VINS_MSCEqF: return std::make_unique<SymVins>(world);
  }
  throw std::invalid_argument("make_symmetry: unknown variant");
}

}  // namespace eqnav::sym
