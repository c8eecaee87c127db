#include "eqnav/msceqf/msceqf.hpp"

namespace eqnav::msceqf {

using namespace eqnav::lie;

namespace {

struct Aux {
  Vec3 psi1, psi2, psi3, psi4;
  Vec6 varrho, theta;
  Mat6 Psi;
};

Aux auxiliaries(const SymVins& sym, const EqfState& s, const VecX& u) {
  Aux a;
  const Mat3& Ahat = s.Xhat.D.R.R;
  const Vec3 ahat = s.Xhat.D.v;
  const Vec3 bhat = s.Xhat.D.p;
  const Mat3 Rr = s.origin.T.R.R;
  const Vec3 vr = s.origin.T.v;
  const Vec3 dw = s.Xhat.delta.head<3>();
  a.psi1 = Ahat * Vec3(u.head<3>()) + dw;
  a.psi2 = a.psi1 - Vec3(s.origin.b.head<3>());
  a.psi3 = ahat - a.psi1.cross(bhat);
  a.psi4 = ahat + Rr.transpose() * vr - a.psi2.cross(bhat);
  a.varrho << a.psi2, a.psi4;
  a.theta << Vec3::Zero(), Rr.transpose() * sym.world().gravity();
  a.Psi = Mat6::Zero();
  a.Psi.bottomLeftCorner<3, 3>() = skew(Vec3(Rr.transpose() * sym.world().gravity()));
  return a;
}

}  // namespace

MatX msceqf_A(const SymVins& sym, const EqfState& s, const VecX& u) {
  MatX A = MatX::Zero(25, 25);
  const Aux ax = auxiliaries(sym, s, u);
  const Mat3 Rr = s.origin.T.R.R;
  const Vec3 vr = s.origin.T.v;
  const Vec6 b0 = s.origin.b;
  const Vec3 b0w = b0.head<3>();
  const Vec3 bhat = s.Xhat.D.p;
  const Mat6 adb0 = ad_se3(b0);
  const Vec6 m6 = chi(s.Xhat.D).Ad() * u.head<6>() + s.Xhat.delta + ax.theta;
  const Mat6 adm = ad_se3(m6);
  const Mat6 AdSr_inv = s.origin.S.inv().Ad();

  // 1A
  A.topLeftCorner<6, 6>() = ax.Psi - adb0;
  A.block<3, 3>(6, 0) = skew(Vec3(Rr.transpose() * vr)) - skew(bhat) * skew(b0w);
  A.block<3, 3>(6, 3) = Mat3::Identity();
  // 2A
  A.block<3, 3>(0, 9) = Mat3::Identity();
  A.block<3, 3>(3, 12) = Mat3::Identity();
  A.block<3, 3>(6, 9) = skew(bhat);
  // 3A
  A.block<6, 6>(9, 0) = adb0 * ax.Psi - adm * adb0;
  // 4A
  A.block<6, 6>(9, 9) = adm;
  // 5A
  MatX fiveA(6, 9);
  fiveA.setZero();
  fiveA.block<3, 3>(0, 0) = -skew(ax.psi1);
  fiveA.block<3, 3>(3, 0) = -skew(ax.psi3) - skew(b0w) * skew(bhat);
  fiveA.block<3, 3>(3, 3) = Mat3::Identity();
  fiveA.block<3, 3>(3, 6) = -skew(ax.psi2);
  A.block<6, 9>(15, 0) = AdSr_inv * fiveA;
  // 6A
  MatX sixA(6, 6);
  sixA.setZero();
  sixA.block<3, 3>(0, 0) = Mat3::Identity();
  sixA.block<3, 3>(3, 0) = skew(bhat);
  A.block<6, 6>(15, 9) = AdSr_inv * sixA;
  // 7A
  A.block<6, 6>(15, 15) = ad_se3(Vec6(AdSr_inv * ax.varrho));
  return A;
}

MatX msceqf_B(const SymVins& sym, const EqfState& s) {
  (void)sym;
  MatX B = MatX::Zero(25, 12);
  const Mat9 AdD = s.Xhat.D.Ad();
  const Mat6 AdB = chi(s.Xhat.D).Ad();
  B.block<9, 6>(0, 0) = AdD.leftCols<6>();
  B.block<6, 6>(9, 0) = ad_se3(VecX(s.origin.b)) * AdB;
  B.block<6, 6>(9, 6) = -AdB;
  MatX inner(6, 6);
  inner.setZero();
  inner.topLeftCorner<3, 3>() = Mat3::Identity();
  B.block<6, 6>(15, 0) = (s.origin.S.inv() * Theta(s.Xhat.D)).Ad() * inner;
  return B;
}

MatX msceqf_Phi(const MatX& A, double dT) {
  const MatX A1 = A.topLeftCorner<9, 9>();
  const MatX A2 = A.block<9, 6>(0, 9);
  const MatX A3 = A.block<6, 9>(9, 0);
  const MatX A4 = A.block<6, 6>(9, 9);
  const MatX A5 = A.block<6, 9>(15, 0);
  const MatX A6 = A.block<6, 6>(15, 9);
  const MatX A7 = A.block<6, 6>(15, 15);
  const double h2 = dT * dT / 2.0;
  MatX Phi = MatX::Identity(25, 25);
  Phi.topLeftCorner<9, 9>() += A1 * dT + (A1 * A1 + A2 * A3) * h2;
  Phi.block<9, 6>(0, 9) += A2 * dT + (A1 * A2 + A2 * A4) * h2;
  Phi.block<6, 9>(9, 0) += A3 * dT + (A3 * A1 + A4 * A3) * h2;
  Phi.block<6, 6>(9, 9) += A4 * dT + (A4 * A4 + A3 * A2) * h2;
  Phi.block<6, 9>(15, 0) += A5 * dT + (A5 * A1 + A6 * A3 + A7 * A5) * h2;
  Phi.block<6, 6>(15, 9) += A6 * dT + (A5 * A2 + A6 * A4 + A7 * A6) * h2;
  Phi.block<6, 6>(15, 15) += A7 * dT + A7 * A7 * h2;
  return Phi;
}

void msceqf_propagate(const SymVins& sym, MsceqfState& s, const VecX& u,
                      double dt, const MatX& Q12) {
  VecX ufull = VecX::Zero(22);
  ufull.head(12) = u.head(12);
  const Xi est = sym.phi(s.core.Xhat, s.core.origin);
  const VecX lam = sym.lift(est, ufull);
  const MatX A = msceqf_A(sym, s.core, ufull);
  const MatX Phi = msceqf_Phi(A, dt);
  const MatX B = msceqf_B(sym, s.core);
  s.core.Xhat = sym.compose(s.core.Xhat, sym.exp(VecX(lam * dt)));
  // clone columns are untouched by Phi
  MatX& Sig = s.core.Sigma;
  Sig.topLeftCorner(25, 25) =
      Phi * Sig.topLeftCorner(25, 25) * Phi.transpose() +
      B * Q12 * B.transpose() * dt;
  if (Sig.cols() > 25) {
    Sig.topRightCorner(25, Sig.cols() - 25) =
        Phi * Sig.topRightCorner(25, Sig.cols() - 25);
    Sig.bottomLeftCorner(Sig.rows() - 25, 25) =
        Sig.topRightCorner(25, Sig.cols() - 25).transpose();
  }
  Sig = 0.5 * (Sig + Sig.transpose()).eval();
  s.core.time += dt;
}

void stochastic_clone(MsceqfState& s, double timestamp) {
  if (static_cast<int>(s.clones.size()) >= s.max_clones)
    throw std::runtime_error("stochastic_clone: window full, prune first");
  const int n = s.dim();
  MatX Sig = MatX::Zero(n + 6, n + 6);
  Sig.topLeftCorner(n, n) = s.core.Sigma;
  Sig.block(n, 0, 6, n) = s.core.Sigma.block(15, 0, 6, n);
  Sig.block(0, n, n, 6) = s.core.Sigma.block(0, 15, n, 6);
  Sig.block(n, n, 6, 6) = s.core.Sigma.block(15, 15, 6, 6);
  s.core.Sigma = Sig;
  s.clones.push_back(s.core.Xhat.E);
  s.clone_times.push_back(timestamp);
}

void prune_clone(MsceqfState& s, int index) {
  const int n = s.dim();
  const int off = s.clone_offset(index);
  MatX Sig(n - 6, n - 6);
  auto keep = [&](int r) { return r < off ? r : r + 6; };
  for (int r = 0; r < n - 6; ++r)
    for (int c = 0; c < n - 6; ++c) Sig(r, c) = s.core.Sigma(keep(r), keep(c));
  s.core.Sigma = Sig;
  s.clones.erase(s.clones.begin() + index);
  s.clone_times.erase(s.clone_times.begin() + index);
}

MatX initial_covariance_D(const SymVins& sym, const XElem& Xhat, const Xi& xi0) {
  // P convention: per-component body perturbations about the current
  // estimate (T exp(q), b + q, S exp(q), K exp(q)).
  (void)sym;
  MatX D = MatX::Zero(25, 25);
  const Mat9 AdD = Xhat.D.Ad();
  const Mat6 AdB = chi(Xhat.D).Ad();
  D.topLeftCorner<9, 9>() = AdD;
  D.block<6, 6>(9, 9) = -AdB;
  D.block<6, 9>(9, 0) = ad_se3(VecX(xi0.b)) * AdD.topRows<6>();
  const Mat6 AdSC = (xi0.S.inv() * Theta(Xhat.D)).Ad();
  D.block<6, 3>(15, 0) = AdSC.leftCols<3>();
  D.block<6, 3>(15, 6) = AdSC.rightCols<3>();
  D.block<6, 6>(15, 15) = Xhat.E.Ad();
  D.block<4, 4>(21, 21) = Xhat.L.Ad();
  return D;
}

MatX initial_covariance_transport(const MatX& P, const SymVins& sym,
                                  const XElem& Xhat, const Xi& xi0) {
  const MatX D = initial_covariance_D(sym, Xhat, xi0);
  return D * P * D.transpose();
}

OutputModel zvu_output(const SymVins& sym, const MsceqfState& s,
                       const Mat3& R_att, const Mat3& R_vel, const Mat3& R_pos) {
  OutputModel out;
  const int n = s.dim();
  const Xi est = sym.phi(s.core.Xhat, s.core.origin);
  const SE23 y(est.T.R, Vec3::Zero(), est.T.p);
  out.residual = (s.core.origin.T.inv() * y * s.core.Xhat.D.inv()).log();
  out.C = MatX::Zero(9, n);
  out.C.topLeftCorner<9, 9>() = MatX::Identity(9, 9);
  out.Dt = MatX::Identity(9, 9);
  out.R = MatX::Zero(9, 9);
  out.R.topLeftCorner<3, 3>() = R_att;
  out.R.block<3, 3>(3, 3) = R_vel;
  out.R.bottomRightCorner<3, 3>() = R_pos;
  return out;
}

bool zvu_detect(const std::vector<double>& disparities, double threshold) {
  if (disparities.size() < 2) return false;
  std::vector<double> d = disparities;
  std::nth_element(d.begin(), d.begin() + d.size() / 2, d.end());
  return d[d.size() / 2] < threshold;
}

}  // namespace eqnav::msceqf
