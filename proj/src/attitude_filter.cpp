#include "eqnav/filters/attitude_filter.hpp"

#include "eqnav/eqf/certify.hpp"
#include "eqnav/sym/variants.hpp"

namespace eqnav::filters {

using namespace eqnav::lie;
using sym::SymAtt;
using sym::Xi;

AttitudeMatrices attitude_matrices(const Symmetry& sym, const EqfState& s,
                                   const Vec3& omega0,
                                   const std::vector<DirectionSensor>& dirs) {
  const auto& att = dynamic_cast<const SymAtt&>(sym);
  const int n = att.n_calib();
  const int m = sym.dof();
  const int rows = 3 * static_cast<int>(dirs.size());
  AttitudeMatrices out;
  out.A0 = MatX::Zero(m, m);
  out.A0.block<3, 3>(0, 3) = -Mat3::Identity();
  out.A0.block<3, 3>(3, 3) = skew(omega0);
  for (int i = 0; i < n; ++i)
    out.A0.block<3, 3>(6 + 3 * i, 6 + 3 * i) = skew(omega0);

  out.C0 = MatX::Zero(rows, m);
  for (size_t k = 0; k < dirs.size(); ++k) {
    const Mat3 dsq = skew(dirs[k].d) * skew(dirs[k].d);
    out.C0.block<3, 3>(3 * k, 0) = dsq;
    if (dirs[k].calibrated_online)
      out.C0.block<3, 3>(3 * k, 6 + 3 * dirs[k].calib_index) = dsq;
  }

  out.Bt = MatX::Zero(m, m);
  out.Bt.block<3, 3>(0, 0) = s.Xhat.D.R.R;
  out.Bt.block<3, 3>(3, 3) = s.Xhat.D.R.R;
  for (int i = 0; i < n; ++i)
    out.Bt.block<3, 3>(6 + 3 * i, 6 + 3 * i) = s.Xhat.B[i].R;

  out.Dt = MatX::Zero(rows, rows);
  for (size_t k = 0; k < dirs.size(); ++k) {
    out.Dt.block<3, 3>(3 * k, 3 * k) =
        dirs[k].calibrated_online ? s.Xhat.B[dirs[k].calib_index].R
                                  : s.Xhat.D.R.R;
  }
  return out;
}

MatX attitude_phi_closed_form(const Vec3& omega0, double dt) {
  MatX Phi = MatX::Identity(9, 9);
  const Mat3 W = skew(omega0);
  const Mat3 W2 = W * W;
  const double n = omega0.norm();
  Mat3 Phi12, Phi22;
  if (n * dt < lie::kSmallAngle) {
    Phi12 = -dt * (Mat3::Identity() + 0.5 * dt * W + dt * dt / 6.0 * W2);
    Phi22 = Mat3::Identity() + dt * W + 0.5 * dt * dt * W2;
  } else {
    const double nd = n * dt;
    const double psi1 = (1.0 - std::cos(nd)) / (n * n);
    const double psi2 = (nd - std::sin(nd)) / (n * n * n);
    const double psi3 = std::sin(nd) / n;
    Phi12 = -(dt * Mat3::Identity() + psi1 * W + psi2 * W2);
    Phi22 = Mat3::Identity() + psi3 * W + psi1 * W2;
  }
  Phi.block<3, 3>(0, 3) = Phi12;
  Phi.block<3, 3>(3, 3) = Phi22;
  Phi.block<3, 3>(6, 6) = Phi22;
  return Phi;
}

OutputModel attitude_output(const Symmetry& sym, const EqfState& s,
                            const std::vector<DirectionSensor>& dirs,
                            const std::vector<Vec3>& y,
                            const std::vector<double>& sigma) {
  const bool direct = sym.variant() == sym::Variant::ATT_Direct;
  const int rows = 3 * static_cast<int>(dirs.size());
  OutputModel out;
  out.residual = VecX(rows);
  out.R = MatX::Zero(rows, rows);
  out.Dt = MatX::Identity(rows, rows);
  for (size_t k = 0; k < dirs.size(); ++k)
    out.R.block<3, 3>(3 * k, 3 * k) = sigma[k] * sigma[k] * Mat3::Identity();

  if (!direct) {
    AttitudeMatrices mats = attitude_matrices(sym, s, Vec3::Zero(), dirs);
    out.C = mats.C0;
    out.Dt = mats.Dt;
    for (size_t k = 0; k < dirs.size(); ++k) {
      const Mat3 rot = dirs[k].calibrated_online
                           ? s.Xhat.B[dirs[k].calib_index].R
                           : s.Xhat.D.R.R;
      out.residual.segment<3>(3 * k) = dirs[k].d.cross(Vec3(rot * y[k]));
    }
    return out;
  }

  // Direct symmetry: no output action. Residual yhat^ y per sensor; C from
  // the central-difference oracle of the same map.
  const Xi est = sym.phi(s.Xhat, s.origin);
  auto predict = [&](const Xi& xi) {
    VecX h(rows);
    for (size_t k = 0; k < dirs.size(); ++k) {
      Vec3 yk = xi.T.R.R.transpose() * dirs[k].d;
      if (dirs[k].calibrated_online)
        yk = xi.C[dirs[k].calib_index].R.transpose() * yk;
      h.segment<3>(3 * k) = yk;
    }
    return h;
  };
  const VecX yhat = predict(est);
  for (size_t k = 0; k < dirs.size(); ++k)
    out.residual.segment<3>(3 * k) =
        Vec3(yhat.segment<3>(3 * k)).cross(y[k]);
  out.C = eqf::numeric_C(
      sym, s.origin, s.Xhat,
      [&](const Xi& xi_true) {
        VecX h = predict(xi_true);
        VecX r(rows);
        for (size_t k = 0; k < dirs.size(); ++k)
          r.segment<3>(3 * k) =
              Vec3(yhat.segment<3>(3 * k)).cross(Vec3(h.segment<3>(3 * k)));
        return r;
      },
      rows);
  return out;
}

Vec3 gnss_direction(const Vec3& p1, const Vec3& p2) {
  const Vec3 d = p1 - p2;
  const double n = d.norm();
  if (n <= 1e-6) throw std::domain_error("gnss_direction: degenerate baseline");
  return d / n;
}

MatX AttitudeFilterModel::A0(const Symmetry& sym, const EqfState& s,
                             const VecX& u) const {
  if (sym.variant() == sym::Variant::ATT_Direct)
    return eqf::numeric_A(sym, s.origin, s.Xhat, u);
  const Vec3 omega0 = sym.psi(sym.inverse(s.Xhat), u);
  return attitude_matrices(sym, s, omega0, dirs_).A0;
}

MatX AttitudeFilterModel::Bt(const Symmetry& sym, const EqfState& s,
                             const VecX& u) const {
  if (sym.variant() == sym::Variant::ATT_Direct) {
    // gyro column from the oracle; walk channels map directly
    MatX B = MatX::Zero(sym.dof(), sym.dof());
    B.leftCols(3) = eqf::numeric_B(sym, s.origin, s.Xhat, u);
    B.block(3, 3, 3, 3) = lie::Mat3::Identity();
    for (int i = 6; i < sym.dof(); i += 3)
      B.block(i, i, 3, 3) = s.Xhat.B[(i - 6) / 3].R;
    return B;
  }
  const Vec3 omega0 = sym.psi(sym.inverse(s.Xhat), u);
  return attitude_matrices(sym, s, omega0, dirs_).Bt;
}

MatX AttitudeFilterModel::Phi(const MatX& A0, double dt) const {
  if (closed_phi_ && A0.rows() == 9) {
    const Vec3 omega0 = lie::unskew(A0.block<3, 3>(3, 3));
    return attitude_phi_closed_form(omega0, dt);
  }
  return eqf::FilterModel::Phi(A0, dt);
}

}  // namespace eqnav::filters
