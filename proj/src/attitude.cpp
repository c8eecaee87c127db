#include "eqnav/sym/variants.hpp"

namespace eqnav::sym {

using namespace eqnav::lie;

// ====================================================== tangent SO(3) (EqF)

int SymAtt::dof() const { return 6 + 3 * n_; }
int SymAtt::input_dim() const { return 3; }

XElem SymAtt::identity() const {
  XElem x;
  x.delta = VecX::Zero(3);
  x.B.assign(n_, SO3());
  return x;
}

XElem SymAtt::compose(const XElem& a, const XElem& b) const {
  XElem x;
  x.D.R = a.D.R * b.D.R;
  x.delta = a.delta + a.D.R.R * b.delta;
  x.B.resize(n_);
  for (int i = 0; i < n_; ++i) x.B[i] = a.B[i] * b.B[i];
  return x;
}

XElem SymAtt::inverse(const XElem& a) const {
  XElem x;
  x.D.R = a.D.R.inv();
  x.delta = -(x.D.R.R * a.delta);
  x.B.resize(n_);
  for (int i = 0; i < n_; ++i) x.B[i] = a.B[i].inv();
  return x;
}

XElem SymAtt::exp(const VecX& eps) const {
  XElem x;
  x.D.R = SO3::Exp(eps.head<3>());
  x.delta = gamma1_so3(eps.head<3>()) * eps.segment<3>(3);
  x.B.resize(n_);
  for (int i = 0; i < n_; ++i) x.B[i] = SO3::Exp(eps.segment<3>(6 + 3 * i));
  return x;
}

VecX SymAtt::log(const XElem& a) const {
  VecX eps(dof());
  eps.head<3>() = a.D.R.log();
  eps.segment<3>(3) = gamma1_so3(eps.head<3>()).inverse() * a.delta;
  for (int i = 0; i < n_; ++i) eps.segment<3>(6 + 3 * i) = a.B[i].log();
  return eps;
}

MatX SymAtt::Ad(const XElem& a) const {
  MatX M = MatX::Zero(dof(), dof());
  M.block<3, 3>(0, 0) = a.D.R.R;
  M.block<3, 3>(3, 3) = a.D.R.R;
  M.block<3, 3>(3, 0) = skew(a.delta) * a.D.R.R;
  for (int i = 0; i < n_; ++i) M.block<3, 3>(6 + 3 * i, 6 + 3 * i) = a.B[i].R;
  return M;
}

MatX SymAtt::ad(const VecX& eps) const {
  MatX M = MatX::Zero(dof(), dof());
  M.block<3, 3>(0, 0) = skew(eps.head<3>());
  M.block<3, 3>(3, 3) = skew(eps.head<3>());
  M.block<3, 3>(3, 0) = skew(eps.segment<3>(3));
  for (int i = 0; i < n_; ++i)
    M.block<3, 3>(6 + 3 * i, 6 + 3 * i) = skew(eps.segment<3>(6 + 3 * i));
  return M;
}

Xi SymAtt::phi(const XElem& X, const Xi& xi) const {
  Xi out = xi;
  const Mat3 At = X.D.R.R.transpose();
  out.T.R = xi.T.R * X.D.R;
  out.b = At * (Vec3(xi.b.head<3>()) - Vec3(X.delta));
  for (int i = 0; i < n_; ++i)
    out.C[i] = SO3(Mat3(At * xi.C[i].R * X.B[i].R));
  return out;
}

VecX SymAtt::lift(const Xi& xi, const VecX& u) const {
  VecX lam(dof());
  const Vec3 omega = u.head<3>();
  const Vec3 b = xi.b.head<3>();
  lam.head<3>() = omega - b;
  lam.segment<3>(3) = -omega.cross(b);
  for (int i = 0; i < n_; ++i)
    lam.segment<3>(6 + 3 * i) = xi.C[i].R.transpose() * (omega - b);
  return lam;
}

VecX SymAtt::psi(const XElem& X, const VecX& u) const {
  return X.D.R.R.transpose() * (Vec3(u.head<3>()) - Vec3(X.delta));
}

XElem SymAtt::group_from_state(const Xi& xi, const Xi& o) const {
  XElem Z;
  Z.D.R = o.T.R.inv() * xi.T.R;
  Z.delta = Vec3(o.b.head<3>()) - Z.D.R.R * Vec3(xi.b.head<3>());
  Z.B.resize(n_);
  for (int i = 0; i < n_; ++i)
    Z.B[i] = SO3(Mat3(o.C[i].R.transpose() * Z.D.R.R * xi.C[i].R));
  return Z;
}

Xi SymAtt::state_retract(const Xi& xi, const VecX& d) const {
  Xi out = xi;
  out.T.R = xi.T.R * SO3::Exp(d.head<3>());
  out.b = xi.b + d.segment<3>(3);
  for (int i = 0; i < n_; ++i)
    out.C[i] = xi.C[i] * SO3::Exp(d.segment<3>(6 + 3 * i));
  return out;
}

VecX SymAtt::state_delta(const Xi& a, const Xi& b) const {
  VecX d(dof());
  d.head<3>() = (a.T.R.inv() * b.T.R).log();
  d.segment<3>(3) = b.b.head<3>() - a.b.head<3>();
  for (int i = 0; i < n_; ++i)
    d.segment<3>(6 + 3 * i) = (a.C[i].inv() * b.C[i]).log();
  return d;
}

VecX SymAtt::dynamics(const Xi& xi, const VecX& u) const {
  VecX d = VecX::Zero(dof());
  d.head<3>() = Vec3(u.head<3>()) - Vec3(xi.b.head<3>());
  return d;
}

// eps = (log e_R, e_b, log e_C) with e = phi(E, identity origin):
// e_R = A, e_b = -A^T a, e_C = A^T B.
XElem SymAtt::err_exp(const VecX& eps) const {
  XElem x;
  x.D.R = SO3::Exp(eps.head<3>());
  x.delta = -(x.D.R.R * eps.segment<3>(3));
  x.B.resize(n_);
  for (int i = 0; i < n_; ++i)
    x.B[i] = x.D.R * SO3::Exp(eps.segment<3>(6 + 3 * i));
  return x;
}

VecX SymAtt::err_log(const XElem& a) const {
  VecX eps(dof());
  eps.head<3>() = a.D.R.log();
  eps.segment<3>(3) = -(a.D.R.R.transpose() * a.delta);
  for (int i = 0; i < n_; ++i)
    eps.segment<3>(6 + 3 * i) = (a.D.R.inv() * a.B[i]).log();
  return eps;
}

// =================================== direct product (Imperfect-IEKF route)

int SymAttDirect::dof() const { return 6 + 3 * n_; }
int SymAttDirect::input_dim() const { return 3; }

XElem SymAttDirect::identity() const {
  XElem x;
  x.delta = VecX::Zero(3);
  x.B.assign(n_, SO3());
  return x;
}

XElem SymAttDirect::compose(const XElem& a, const XElem& b) const {
  XElem x;
  x.D.R = a.D.R * b.D.R;
  x.delta = a.delta + b.delta;
  x.B.resize(n_);
  for (int i = 0; i < n_; ++i) x.B[i] = a.B[i] * b.B[i];
  return x;
}

XElem SymAttDirect::inverse(const XElem& a) const {
  XElem x;
  x.D.R = a.D.R.inv();
  x.delta = -a.delta;
  x.B.resize(n_);
  for (int i = 0; i < n_; ++i) x.B[i] = a.B[i].inv();
  return x;
}

XElem SymAttDirect::exp(const VecX& eps) const {
  XElem x;
  x.D.R = SO3::Exp(eps.head<3>());
  x.delta = eps.segment<3>(3);
  x.B.resize(n_);
  for (int i = 0; i < n_; ++i) x.B[i] = SO3::Exp(eps.segment<3>(6 + 3 * i));
  return x;
}

VecX SymAttDirect::log(const XElem& a) const {
  VecX eps(dof());
  eps.head<3>() = a.D.R.log();
  eps.segment<3>(3) = a.delta;
  for (int i = 0; i < n_; ++i) eps.segment<3>(6 + 3 * i) = a.B[i].log();
  return eps;
}

MatX SymAttDirect::Ad(const XElem& a) const {
  MatX M = MatX::Identity(dof(), dof());
  M.block<3, 3>(0, 0) = a.D.R.R;
  for (int i = 0; i < n_; ++i) M.block<3, 3>(6 + 3 * i, 6 + 3 * i) = a.B[i].R;
  return M;
}

MatX SymAttDirect::ad(const VecX& eps) const {
  MatX M = MatX::Zero(dof(), dof());
  M.block<3, 3>(0, 0) = skew(eps.head<3>());
  for (int i = 0; i < n_; ++i)
    M.block<3, 3>(6 + 3 * i, 6 + 3 * i) = skew(eps.segment<3>(6 + 3 * i));
  return M;
}

Xi SymAttDirect::phi(const XElem& X, const Xi& xi) const {
  Xi out = xi;
  out.T.R = xi.T.R * X.D.R;
  out.b = Vec3(xi.b.head<3>()) - Vec3(X.delta);
  for (int i = 0; i < n_; ++i)
    out.C[i] = SO3(Mat3(X.D.R.R.transpose() * xi.C[i].R * X.B[i].R));
  return out;
}

VecX SymAttDirect::lift(const Xi& xi, const VecX& u) const {
  VecX lam = VecX::Zero(dof());
  const Vec3 wmb = Vec3(u.head<3>()) - Vec3(xi.b.head<3>());
  lam.head<3>() = wmb;
  for (int i = 0; i < n_; ++i)
    lam.segment<3>(6 + 3 * i) = xi.C[i].R.transpose() * wmb;
  return lam;
}

XElem SymAttDirect::group_from_state(const Xi& xi, const Xi& o) const {
  XElem Z;
  Z.D.R = o.T.R.inv() * xi.T.R;
  Z.delta = Vec3(o.b.head<3>()) - Vec3(xi.b.head<3>());
  Z.B.resize(n_);
  for (int i = 0; i < n_; ++i)
    Z.B[i] = SO3(Mat3(o.C[i].R.transpose() * Z.D.R.R * xi.C[i].R));
  return Z;
}

Xi SymAttDirect::state_retract(const Xi& xi, const VecX& d) const {
  Xi out = xi;
  out.T.R = xi.T.R * SO3::Exp(d.head<3>());
  out.b = xi.b + d.segment<3>(3);
  for (int i = 0; i < n_; ++i)
    out.C[i] = xi.C[i] * SO3::Exp(d.segment<3>(6 + 3 * i));
  return out;
}

VecX SymAttDirect::state_delta(const Xi& a, const Xi& b) const {
  VecX d(dof());
  d.head<3>() = (a.T.R.inv() * b.T.R).log();
  d.segment<3>(3) = b.b.head<3>() - a.b.head<3>();
  for (int i = 0; i < n_; ++i)
    d.segment<3>(6 + 3 * i) = (a.C[i].inv() * b.C[i]).log();
  return d;
}

VecX SymAttDirect::dynamics(const Xi& xi, const VecX& u) const {
  VecX d = VecX::Zero(dof());
  d.head<3>() = Vec3(u.head<3>()) - Vec3(xi.b.head<3>());
  return d;
}

}  // namespace eqnav::sym
