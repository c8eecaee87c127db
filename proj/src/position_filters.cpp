#include "eqnav/filters/position_filters.hpp"

#include "eqnav/eqf/certify.hpp"

namespace eqnav::filters {

using namespace eqnav::lie;
using sym::XElem;

namespace {

Mat3 g_wedge(const Symmetry& sym) { return skew(sym.world().gravity()); }

// Quantities of the current estimate.
struct Est {
  Mat3 R;
  Vec3 v, p;
  VecX b;
};

Est estimate(const Symmetry& sym, const EqfState& s) {
  const Xi est = sym.phi(s.Xhat, s.origin);
  return {est.T.R.R, est.T.v, est.T.p, est.b};
}

}  // namespace

MatX ins_state_matrix(const Symmetry& sym, const EqfState& s, const VecX& u) {
  const int m = sym.dof();
  MatX A = MatX::Zero(m, m);
  const Est e = estimate(sym, s);
  const Vec3 gvec = sym.world().gravity();

  switch (sym.variant()) {
    case Variant::E_SO3xR12: {
      const Vec3 a_meas = u.segment<3>(3);
      A.block<3, 3>(0, 9) = -e.R;
      A.block<3, 3>(3, 0) = -skew(Vec3(e.R * (a_meas - Vec3(e.b.tail<3>()))));
      A.block<3, 3>(3, 12) = -e.R;
      A.block<3, 3>(6, 3) = Mat3::Identity();
      return A;
    }
    case Variant::F_SE23xR6: {
      A.block<3, 3>(0, 9) = -e.R;
      A.block<3, 3>(3, 0) = skew(gvec);
      A.block<3, 3>(3, 9) = -skew(e.v) * e.R;
      A.block<3, 3>(3, 12) = -e.R;
      A.block<3, 3>(6, 3) = Mat3::Identity();
      A.block<3, 3>(6, 9) = -skew(e.p) * e.R;
      return A;
    }
    case Variant::C_TwoFrames: {
      const Vec3 rw = e.R * (Vec3(u.head<3>()) - Vec3(e.b.head<3>()));
      A.block<3, 3>(3, 0) = skew(gvec);
      A.block<3, 3>(6, 3) = Mat3::Identity();
      A.block<3, 3>(0, 9) = Mat3::Identity();
      A.block<3, 3>(3, 9) = skew(e.v);
      A.block<3, 3>(3, 12) = Mat3::Identity();
      A.block<3, 3>(6, 9) = skew(e.p);
      A.block<3, 3>(9, 9) = skew(rw);
      A.block<3, 3>(12, 12) = skew(rw);
      return A;
    }
    case Variant::D_TangentGroup: {
      // Generic-origin form; reduces to the identity-origin matrix.
      const Mat3 Rr = s.origin.T.R.R;
      Mat9 Psi = Mat9::Zero();
      Psi.block<3, 3>(3, 0) = skew(Vec3(Rr.transpose() * gvec));
      Psi.block<3, 3>(6, 0) = skew(Vec3(Rr.transpose() * s.origin.T.v));
      Psi.block<3, 3>(6, 3) = Mat3::Identity();
      const Mat9 adb0 = ad_se23(s.origin.b);
      const VecX w0 = sym.psi(sym.inverse(s.Xhat), u);
      Vec9 mring = w0.head<9>();
      mring.segment<3>(3) += Rr.transpose() * gvec;
      mring.tail<3>() += Rr.transpose() * s.origin.T.v;
      const Mat9 adm = ad_se23(mring);
      A.topLeftCorner<9, 9>() = Psi - adb0;
      A.topRightCorner<9, 9>() = Mat9::Identity();
      A.bottomLeftCorner<9, 9>() = adb0 * Psi - adm * adb0;
      A.bottomRightCorner<9, 9>() = adm;
      return A;
    }
    case Variant::A_DirectPosition: {
      const VecX u0 = sym.psi(sym.inverse(s.Xhat), u);
      Vec6 m6 = u0.head<6>();
      m6.tail<3>() += gvec;
      A.block<3, 3>(3, 0) = skew(gvec);
      A.block<6, 6>(0, 6) = Mat6::Identity();
      A.block<6, 6>(6, 6) = ad_se3(m6);
      A.block<3, 3>(12, 0) = -skew(Vec3(u0.tail<3>()));
      A.block<3, 3>(12, 3) = Mat3::Identity();
      return A;
    }
    case Variant::B_SemiDirectBias: {
      Vec6 m6 = chi(s.Xhat.D).Ad() * u.head<6>() + s.Xhat.delta;
      m6.tail<3>() += gvec;
      A.block<3, 3>(3, 0) = skew(gvec);
      A.block<3, 3>(6, 3) = Mat3::Identity();
      A.block<6, 6>(0, 9) = Mat6::Identity();
      A.block<3, 3>(6, 9) = skew(Vec3(s.Xhat.D.p));
      A.block<6, 6>(9, 9) = ad_se3(m6);
      return A;
    }
    default:
      throw std::invalid_argument("ins_state_matrix: not an INS variant");
  }
}

MatX ins_input_matrix(const Symmetry& sym, const EqfState& s, const VecX& u) {
  (void)u;
  const int m = sym.dof();
  const int q = sym.input_dim();
  MatX B = MatX::Zero(m, q);
  const Est e = estimate(sym, s);

  switch (sym.variant()) {
    case Variant::E_SO3xR12: {
      B.block<3, 3>(0, 0) = e.R;
      B.block<3, 3>(3, 3) = e.R;
      B.block<6, 6>(9, 6) = Mat6::Identity();
      return B;
    }
    case Variant::F_SE23xR6: {
      const Mat9 AdD = s.Xhat.D.Ad();
      B.block<9, 3>(0, 0) = AdD.leftCols<3>();
      B.block<9, 3>(0, 3) = AdD.middleCols<3>(3);
      B.block<6, 6>(9, 6) = Mat6::Identity();
      return B;
    }
    case Variant::C_TwoFrames: {
      const Mat9 AdD = s.Xhat.D.Ad();
      const Mat3& Ahat = s.Xhat.D.R.R;
      B.block<9, 3>(0, 0) = AdD.leftCols<3>();
      B.block<9, 3>(0, 3) = AdD.middleCols<3>(3);
      B.block<3, 3>(9, 0) =
          Ahat * skew(Vec3(e.b.head<3>())) + skew(Vec3(s.Xhat.delta.head<3>())) * Ahat;
      B.block<3, 3>(12, 0) =
          Ahat * skew(Vec3(e.b.tail<3>())) + skew(Vec3(s.Xhat.delta.tail<3>())) * Ahat;
      B.block<3, 3>(9, 6) = -Ahat;
      B.block<3, 3>(12, 9) = -Ahat;
      return B;
    }
    case Variant::D_TangentGroup: {
      const Mat9 AdD = s.Xhat.D.Ad();
      B.topLeftCorner<9, 9>() = AdD;
      B.bottomLeftCorner<9, 9>() = ad_se23(s.origin.b) * AdD;
      B.bottomRightCorner<9, 9>() = -AdD;
      return B;
    }
    case Variant::A_DirectPosition: {
      const Mat6 AdB = s.Xhat.E.Ad();
      B.topLeftCorner<6, 6>() = AdB;
      B.block<6, 6>(6, 0) = ad_se3(VecX(s.origin.b)) * AdB;
      B.block<6, 6>(6, 6) = -AdB;
      B.block<3, 3>(12, 12) = e.R;
      return B;
    }
    case Variant::B_SemiDirectBias: {
      const Mat9 AdD = s.Xhat.D.Ad();
      const Mat6 AdB = chi(s.Xhat.D).Ad();
      B.block<9, 6>(0, 0) = AdD.leftCols<6>();
      B.block<6, 6>(9, 0) = ad_se3(VecX(s.origin.b)) * AdB;
      B.block<6, 6>(9, 6) = -AdB;
      return B;
    }
    default:
      throw std::invalid_argument("ins_input_matrix: not an INS variant");
  }
}

OutputModel ins_position_output(const Symmetry& sym, const EqfState& s,
                                const Vec3& pi_raw, const Mat3& R_meas) {
  const int m = sym.dof();
  OutputModel out;
  out.C = MatX::Zero(3, m);
  out.Dt = Mat3::Identity();
  out.R = R_meas;
  const Est e = estimate(sym, s);

  switch (sym.variant()) {
    case Variant::E_SO3xR12:
      out.C.block<3, 3>(0, 6) = Mat3::Identity();
      out.residual = pi_raw - e.p;
      return out;
    case Variant::A_DirectPosition:
      out.C.block<3, 3>(0, 12) = Mat3::Identity();
      out.residual = pi_raw - e.p;
      return out;
    case Variant::F_SE23xR6:
    case Variant::C_TwoFrames:
    case Variant::D_TangentGroup:
    case Variant::B_SemiDirectBias:
      out.C.block<3, 3>(0, 0) = 0.5 * skew(Vec3(pi_raw + e.p));
      out.C.block<3, 3>(0, 6) = -Mat3::Identity();
      out.residual = e.p - pi_raw;
      return out;
    default:
      throw std::invalid_argument("ins_position_output: not an INS variant");
  }
}

MatX ins_position_C0(const Symmetry& sym, const EqfState& s,
                     const Vec3& pi_raw) {
  // rho-route first linearization point only: C0 = d delta d rho_E(y0).
  const int m = sym.dof();
  MatX C = MatX::Zero(3, m);
  (void)s;
  C.block<3, 3>(0, 0) = skew(pi_raw);
  C.block<3, 3>(0, 6) = -Mat3::Identity();
  return C;
}

OutputModel bnu_constraint_output(const Symmetry& sym, const EqfState& s,
                                  const Mat3& R_meas) {
  if (sym.variant() != Variant::D_TangentGroup)
    throw std::invalid_argument("bnu constraint is TG-only");
  OutputModel out;
  out.C = MatX::Zero(3, 18);
  const Est e = estimate(sym, s);
  const Mat3 Rt = e.R.transpose();
  out.C.block<3, 3>(0, 9) = Rt * skew(e.p);
  out.C.block<3, 3>(0, 15) = -Rt;
  out.Dt = Mat3::Identity();
  out.R = R_meas;
  out.residual = -Vec3(e.b.tail<3>());
  return out;
}

MatX NumericFilterModel::A0(const Symmetry& sym, const EqfState& s,
                            const VecX& u) const {
  return eqf::numeric_A(sym, s.origin, s.Xhat, u);
}

MatX NumericFilterModel::Bt(const Symmetry& sym, const EqfState& s,
                            const VecX& u) const {
  return eqf::numeric_B(sym, s.origin, s.Xhat, u);
}

}  // namespace eqnav::filters
