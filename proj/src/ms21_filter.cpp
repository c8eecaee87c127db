#include "eqnav/filters/ms21_filter.hpp"

#include "eqnav/sym/variants.hpp"

namespace eqnav::filters {

using namespace eqnav::lie;
using sym::Xi;

namespace {

// psi_1 = A_hat omega + delta_omega
Vec3 psi1(const EqfState& s, const VecX& u) {
  return s.Xhat.D.R.R * Vec3(u.head<3>()) + Vec3(s.Xhat.delta.head<3>());
}

}  // namespace

MatX ms21_state_matrix(const Symmetry& sym, const EqfState& s, const VecX& u) {
  (void)sym;
  MatX A = MatX::Zero(21, 21);
  const Vec3 gvec = sym.world().gravity();
  // 1A: exact navigation rows of the semi-direct bias core
  A.block<3, 3>(3, 0) = skew(gvec);
  A.block<3, 3>(6, 3) = Mat3::Identity();
  // nav-bias coupling [[I,0],[0,I],[b^,0]]
  A.block<6, 6>(0, 9) = Mat6::Identity();
  A.block<3, 3>(6, 9) = skew(Vec3(s.Xhat.D.p));
  // 2A: bias block
  Vec6 m6 = chi(s.Xhat.D).Ad() * u.head<6>() + s.Xhat.delta;
  m6.tail<3>() += gvec;
  A.block<6, 6>(9, 9) = ad_se3(m6);
  // 3A = psi_1^: the semi-direct lever slot is autonomous in normal
  // coordinates; the direct-product mag slot couples to eps_R and eps_bw
  // like the attitude calibration block.
  const Mat3 P1 = skew(psi1(s, u));
  A.block<3, 3>(15, 15) = P1;
  A.block<3, 3>(18, 0) = -P1;
  A.block<3, 3>(18, 9) = Mat3::Identity();
  A.block<3, 3>(18, 18) = P1;
  return A;
}

MatX ms21_input_matrix(const Symmetry& sym, const EqfState& s, const VecX& u) {
  (void)u;
  (void)sym;
  // noise slots (w(6), tau(6), zeta(3), mu(3))
  MatX B = MatX::Zero(21, 18);
  const Mat9 AdD = s.Xhat.D.Ad();
  const Mat6 AdB = chi(s.Xhat.D).Ad();
  const Mat3& Ahat = s.Xhat.D.R.R;
  B.block<9, 6>(0, 0) = AdD.leftCols<6>();
  B.block<6, 6>(9, 0) = ad_se3(VecX(s.origin.b)) * AdB;
  B.block<6, 6>(9, 6) = -AdB;
  // lever slot
  B.block<3, 3>(15, 0) =
      Ahat * skew(Vec3(sym.phi(s.Xhat, s.origin).t)) + skew(s.Xhat.gamma) * Ahat;
  B.block<3, 3>(15, 12) = -Ahat;
  // mag slot
  B.block<3, 3>(18, 0) = s.Xhat.B[0].R * sym.phi(s.Xhat, s.origin).C[0].R.transpose();
  B.block<3, 3>(18, 15) = s.Xhat.B[0].R;
  return B;
}

OutputModel ms21_direction_output(const Symmetry& sym, const EqfState& s,
                                  const Vec3& m_world, const Vec3& y,
                                  const Mat3& R_meas) {
  OutputModel out;
  const Xi o = s.origin;
  const Vec3 m0 = o.C[0].R.transpose() * o.T.R.R.transpose() * m_world;
  const Vec3 Ey = s.Xhat.B[0].R * y;
  out.C = MatX::Zero(3, 21);
  out.C.block<3, 3>(0, 18) = skew(m0) * 0.5 * skew(Vec3(m0 + Ey));
  out.residual = m0.cross(Ey);
  // direction chart is rank-2; keep the noise map full rank as in the
  // attitude filter
  out.Dt = s.Xhat.B[0].R;
  out.R = R_meas;
  (void)sym;
  return out;
}

OutputModel ms21_position_output(const Symmetry& sym, const EqfState& s,
                                 const Vec3& pi_raw, const Mat3& R_meas) {
  OutputModel out;
  const Xi est = sym.phi(s.Xhat, s.origin);
  // rho_{Xhat^-1}(0) = predicted GNSS antenna position
  const Vec3 pred = est.T.p + est.T.R.R * est.t;
  out.C = MatX::Zero(3, 21);
  out.C.block<3, 3>(0, 0) = 0.5 * skew(Vec3(pi_raw + pred));
  out.C.block<3, 3>(0, 6) = -Mat3::Identity();
  out.C.block<3, 3>(0, 15) = Mat3::Identity();
  out.residual = pred - pi_raw;
  out.Dt = Mat3::Identity();
  out.R = R_meas;
  return out;
}

OutputModel ms21_velocity_output(const Symmetry& sym, const EqfState& s,
                                 const Vec3& nu_raw, const Vec3& omega,
                                 const Mat3& R_meas) {
  OutputModel out;
  const Xi est = sym.phi(s.Xhat, s.origin);
  const Vec3 pred = est.T.v + est.T.R.R * omega.cross(est.t);
  out.C = MatX::Zero(3, 21);
  out.C.block<3, 3>(0, 0) = 0.5 * skew(Vec3(nu_raw + pred));
  out.C.block<3, 3>(0, 3) = -Mat3::Identity();
  out.C.block<3, 3>(0, 15) = skew(Vec3(s.Xhat.D.R.R * omega));
  out.residual = pred - nu_raw;
  out.Dt = Mat3::Identity();
  out.R = R_meas;
  return out;
}

}  // namespace eqnav::filters
