#include "eqnav/sym/variants.hpp"

namespace eqnav::sym {

using namespace eqnav::lie;

// Error layout [nav(9) | bias(6) | lever(3) | mag(3)].

int SymMs21::dof() const { return 21; }
int SymMs21::input_dim() const { return 18; }

XElem SymMs21::identity() const {
  XElem x;
  x.delta = VecX::Zero(6);
  x.B.assign(1, SO3());
  return x;
}

XElem SymMs21::compose(const XElem& a, const XElem& b) const {
  XElem x;
  x.D = a.D * b.D;
  x.delta = a.delta + chi(a.D).Ad() * b.delta;
  x.gamma = a.gamma + a.D.R.R * b.gamma;
  x.B = {a.B[0] * b.B[0]};
  return x;
}

XElem SymMs21::inverse(const XElem& a) const {
  XElem x;
  x.D = a.D.inv();
  x.delta = -(chi(x.D).Ad() * a.delta);
  x.gamma = -(a.D.R.R.transpose() * a.gamma);
  x.B = {a.B[0].inv()};
  return x;
}

XElem SymMs21::exp(const VecX& eps) const {
  XElem x;
  x.D = SE23::Exp(eps.head<9>());
  x.delta = jl_se3(Pi(eps.head<9>())) * eps.segment<6>(9);
  x.gamma = gamma1_so3(eps.head<3>()) * eps.segment<3>(15);
  x.B = {SO3::Exp(eps.tail<3>())};
  return x;
}

VecX SymMs21::log(const XElem& a) const {
  VecX eps(21);
  eps.head<9>() = a.D.log();
  eps.segment<6>(9) = jl_se3(Pi(eps.head<9>())).inverse() * a.delta;
  eps.segment<3>(15) = gamma1_so3(eps.head<3>()).inverse() * a.gamma;
  eps.tail<3>() = a.B[0].log();
  return eps;
}

MatX SymMs21::Ad(const XElem& a) const {
  MatX M = MatX::Zero(21, 21);
  const Mat9 AdD = a.D.Ad();
  M.topLeftCorner<9, 9>() = AdD;
  M.block<6, 6>(9, 9) = chi(a.D).Ad();
  M.block<6, 9>(9, 0) = ad_se3(a.delta) * AdD.topRows<6>();
  M.block<3, 3>(15, 0) = skew(a.gamma) * a.D.R.R;
  M.block<3, 3>(15, 15) = a.D.R.R;
  M.block<3, 3>(18, 18) = a.B[0].R;
  return M;
}

MatX SymMs21::ad(const VecX& eps) const {
  MatX M = MatX::Zero(21, 21);
  M.topLeftCorner<9, 9>() = ad_se23(eps.head<9>());
  M.block<6, 6>(9, 9) = ad_se3(Pi(eps.head<9>()));
  M.block<6, 6>(9, 0) = ad_se3(eps.segment<6>(9));
  M.block<3, 3>(15, 0) = skew(eps.segment<3>(15));
  M.block<3, 3>(15, 15) = skew(eps.head<3>());
  M.block<3, 3>(18, 18) = skew(eps.tail<3>());
  return M;
}

Xi SymMs21::phi(const XElem& X, const Xi& xi) const {
  Xi out = xi;
  const Mat3 At = X.D.R.R.transpose();
  out.T = xi.T * X.D;
  out.b = chi(X.D).inv().Ad() * (xi.b - X.delta);
  out.t = At * (xi.t - X.gamma);
  out.C = {SO3(Mat3(At * xi.C[0].R * X.B[0].R))};
  return out;
}

VecX SymMs21::lift(const Xi& xi, const VecX& u) const {
  VecX lam(21);
  const Vec3 omega = u.head<3>();
  const Vec3 wmb = omega - Vec3(xi.b.head<3>());
  const Vec9 l1 = ins_lambda1(xi.T, xi.b, omega, u.segment<3>(3), Vec3::Zero(),
                              world_.gravity());
  lam.head<9>() = l1;
  lam.segment<6>(9) = ad_se3(xi.b) * Pi(l1) - u.segment<6>(6);
  lam.segment<3>(15) = xi.t.cross(wmb) - Vec3(u.segment<3>(12));
  lam.tail<3>() = xi.C[0].R.transpose() * wmb + Vec3(u.tail<3>());
  return lam;
}

VecX SymMs21::psi(const XElem& X, const VecX& u) const {
  // theta action: the velocity output's input dependence transforms the
  // angular rate only.
  VecX out = u;
  out.head<3>() = X.D.R.R.transpose() * Vec3(u.head<3>());
  return out;
}

XElem SymMs21::group_from_state(const Xi& xi, const Xi& o) const {
  XElem Z;
  Z.D = o.T.inv() * xi.T;
  Z.delta = o.b - chi(Z.D).Ad() * xi.b;
  Z.gamma = o.t - Z.D.R.R * xi.t;
  Z.B = {SO3(Mat3(o.C[0].R.transpose() * Z.D.R.R * xi.C[0].R))};
  return Z;
}

Xi SymMs21::state_retract(const Xi& xi, const VecX& d) const {
  Xi out = xi;
  out.T.R = xi.T.R * SO3::Exp(d.head<3>());
  out.T.v += d.segment<3>(3);
  out.T.p += d.segment<3>(6);
  out.b = xi.b + d.segment<6>(9);
  out.t += d.segment<3>(15);
  out.C = {xi.C[0] * SO3::Exp(d.tail<3>())};
  return out;
}

VecX SymMs21::state_delta(const Xi& a, const Xi& b) const {
  VecX d(21);
  d.head<3>() = (a.T.R.inv() * b.T.R).log();
  d.segment<3>(3) = b.T.v - a.T.v;
  d.segment<3>(6) = b.T.p - a.T.p;
  d.segment<6>(9) = b.b - a.b;
  d.segment<3>(15) = b.t - a.t;
  d.tail<3>() = (a.C[0].inv() * b.C[0]).log();
  return d;
}

VecX SymMs21::dynamics(const Xi& xi, const VecX& u) const {
  VecX d(21);
  d.head<3>() = Vec3(u.head<3>()) - Vec3(xi.b.head<3>());
  d.segment<3>(3) = xi.T.R.R * (Vec3(u.segment<3>(3)) - Vec3(xi.b.tail<3>())) +
                    world_.gravity();
  d.segment<3>(6) = xi.T.v;
  d.segment<6>(9) = u.segment<6>(6);
  d.segment<3>(15) = u.segment<3>(12);
  d.tail<3>() = u.tail<3>();
  return d;
}

}  // namespace eqnav::sym
