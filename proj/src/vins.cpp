#include "eqnav/sym/variants.hpp"

namespace eqnav::sym {

using namespace eqnav::lie;

// Error layout [nav(9) | bias(6) | extrinsic(6) | intrinsic(4)].

int SymVins::dof() const { return 25; }
int SymVins::input_dim() const { return 22; }

XElem SymVins::identity() const {
  XElem x;
  x.delta = VecX::Zero(6);
  return x;
}

XElem SymVins::compose(const XElem& a, const XElem& b) const {
  XElem x;
  x.D = a.D * b.D;
  x.delta = a.delta + chi(a.D).Ad() * b.delta;
  x.E = a.E * b.E;
  x.L = a.L * b.L;
  return x;
}

XElem SymVins::inverse(const XElem& a) const {
  XElem x;
  x.D = a.D.inv();
  x.delta = -(chi(x.D).Ad() * a.delta);
  x.E = a.E.inv();
  x.L = a.L.inv();
  return x;
}

XElem SymVins::exp(const VecX& eps) const {
  XElem x;
  x.D = SE23::Exp(eps.head<9>());
  x.delta = jl_se3(Pi(eps.head<9>())) * eps.segment<6>(9);
  x.E = SE3::Exp(eps.segment<6>(15));
  x.L = In4::Exp(eps.tail<4>());
  return x;
}

VecX SymVins::log(const XElem& a) const {
  VecX eps(25);
  eps.head<9>() = a.D.log();
  eps.segment<6>(9) = jl_se3(Pi(eps.head<9>())).inverse() * a.delta;
  eps.segment<6>(15) = a.E.log();
  eps.tail<4>() = a.L.log();
  return eps;
}

MatX SymVins::Ad(const XElem& a) const {
  MatX M = MatX::Zero(25, 25);
  const Mat9 AdD = a.D.Ad();
  M.topLeftCorner<9, 9>() = AdD;
  M.block<6, 6>(9, 9) = chi(a.D).Ad();
  M.block<6, 9>(9, 0) = ad_se3(a.delta) * AdD.topRows<6>();
  M.block<6, 6>(15, 15) = a.E.Ad();
  M.block<4, 4>(21, 21) = a.L.Ad();
  return M;
}

MatX SymVins::ad(const VecX& eps) const {
  MatX M = MatX::Zero(25, 25);
  M.topLeftCorner<9, 9>() = ad_se23(eps.head<9>());
  M.block<6, 6>(9, 9) = ad_se3(Pi(eps.head<9>()));
  M.block<6, 6>(9, 0) = ad_se3(eps.segment<6>(9));
  M.block<6, 6>(15, 15) = ad_se3(eps.segment<6>(15));
  M.block<4, 4>(21, 21) = ad_in4(eps.tail<4>());
  return M;
}

Xi SymVins::phi(const XElem& X, const Xi& xi) const {
  Xi out = xi;
  out.T = xi.T * X.D;
  out.b = chi(X.D).inv().Ad() * (xi.b - X.delta);
  out.S = Theta(X.D).inv() * xi.S * X.E;
  out.K = xi.K * X.L;
  return out;
}

VecX SymVins::lift(const Xi& xi, const VecX& u) const {
  VecX lam(25);
  const Vec9 l1 = ins_lambda1(xi.T, xi.b, u.head<3>(), u.segment<3>(3),
                              Vec3::Zero(), world_.gravity());
  lam.head<9>() = l1;
  lam.segment<6>(9) = ad_se3(xi.b) * Pi(l1) - u.segment<6>(6);
  lam.segment<6>(15) = xi.S.inv().Ad() * Upsilon(l1) + u.segment<6>(12);
  lam.tail<4>() = u.tail<4>();
  return lam;
}

XElem SymVins::group_from_state(const Xi& xi, const Xi& o) const {
  XElem Z;
  Z.D = o.T.inv() * xi.T;
  Z.delta = o.b - chi(Z.D).Ad() * xi.b;
  Z.E = o.S.inv() * Theta(Z.D) * xi.S;
  Z.L = o.K.inv() * xi.K;
  return Z;
}

Xi SymVins::state_retract(const Xi& xi, const VecX& d) const {
  Xi out = xi;
  out.T.R = xi.T.R * SO3::Exp(d.head<3>());
  out.T.v += d.segment<3>(3);
  out.T.p += d.segment<3>(6);
  out.b = xi.b + d.segment<6>(9);
  out.S = xi.S * SE3::Exp(d.segment<6>(15));
  out.K = xi.K * In4::Exp(d.tail<4>());
  return out;
}

VecX SymVins::state_delta(const Xi& a, const Xi& b) const {
  VecX d(25);
  d.head<3>() = (a.T.R.inv() * b.T.R).log();
  d.segment<3>(3) = b.T.v - a.T.v;
  d.segment<3>(6) = b.T.p - a.T.p;
  d.segment<6>(9) = b.b - a.b;
  d.segment<6>(15) = (a.S.inv() * b.S).log();
  d.tail<4>() = (a.K.inv() * b.K).log();
  return d;
}

VecX SymVins::dynamics(const Xi& xi, const VecX& u) const {
  VecX d(25);
  d.head<3>() = Vec3(u.head<3>()) - Vec3(xi.b.head<3>());
  d.segment<3>(3) = xi.T.R.R * (Vec3(u.segment<3>(3)) - Vec3(xi.b.tail<3>())) +
                    world_.gravity();
  d.segment<3>(6) = xi.T.v;
  d.segment<6>(9) = u.segment<6>(6);
  d.segment<6>(15) = u.segment<6>(12);
  d.tail<4>() = u.tail<4>();
  return d;
}

}  // namespace eqnav::sym
