#include "eqnav/msceqf/update.hpp"

#include <Eigen/QR>

#include "eqnav/eqf/eqf.hpp"

namespace eqnav::msceqf {

using namespace eqnav::lie;

namespace {

// d sigma^-1 / d z: anchor-point Jacobian of the parametrization chart.
MatX dparam(const AnchoredFeature& f) {
  switch (f.param) {
    case FeatureParam::Euclidean:
      return Mat3::Identity();
    case FeatureParam::InverseDepth: {
      const double z2 = f.z(2);
      MatX J(3, 3);
      J << 1.0 / z2, 0.0, -f.z(0) / (z2 * z2), 0.0, 1.0 / z2,
          -f.z(1) / (z2 * z2), 0.0, 0.0, -1.0 / (z2 * z2);
      return J;
    }
    case FeatureParam::Polar: {
      // p = exp_SOT3(z)^-1 c0; columns (rotation(3), scale)
      const Vec3 a = f.point();
      MatX J(3, 4);
      J.leftCols<3>() = skew(a) * jl_so3(Vec3(-f.z.head<3>()));
      J.col(3) = -a;
      return J;
    }
  }
  return {};
}

}  // namespace

FeatureJacobians feature_jacobians(const MsceqfState& s, const CameraModel& cam,
                                   const FeatureTrack& track,
                                   const AnchoredFeature& f) {
  const int n = s.dim();
  const int nz = static_cast<int>(f.z.size());
  const SE3& Ea = s.clones[f.anchor_clone];
  const Vec3 af = f.point();
  // measurements are normalized by the origin intrinsics, so the model is
  // L pi(.) and the noise sigma is per-pixel / fx0
  const Mat3 Lm = s.core.Xhat.L.matrix();
  const Vec3 y_w = Ea * af;  // feature in the E-group reference

  FeatureJacobians out;
  std::vector<int> rows;
  for (size_t j = 0; j < track.uv.size(); ++j) {
    const SE3& Ej = s.clones[track.clone_idx[j]];
    const Vec3 cf = Ej.inv() * y_w;
    if (cf.z() > 1e-6) rows.push_back(static_cast<int>(j));
  }
  if (rows.empty())
    throw std::runtime_error("feature_jacobians: no usable observation");

  out.Ct = MatX::Zero(2 * rows.size(), n);
  out.Cf = MatX::Zero(2 * rows.size(), nz);
  out.r = VecX(2 * rows.size());
  for (size_t k = 0; k < rows.size(); ++k) {
    const int j = rows[k];
    const SE3& Ej = s.clones[track.clone_idx[j]];
    const Vec3 cf = Ej.inv() * y_w;
    const Eigen::Matrix<double, 2, 3> dpi = dpi_z1(cf);
    const Eigen::Matrix<double, 2, 3> front = Lm.topLeftCorner<2, 2>() * dpi;
    // residual: measured uv (normalized) against prediction through the
    // intrinsic error; normalized-coordinate rows
    const Vec3 pred = s.core.Xhat.L * pi_z1(cf);
    out.r.segment<2>(2 * k) =
        Eigen::Vector2d(track.uv[j].x(), track.uv[j].y()) -
        Eigen::Vector2d(pred.x(), pred.y());
    const Mat3 Gj = Ej.inv().R.R;
    Eigen::Matrix<double, 3, 6> act;
    act.leftCols<3>() = skew(y_w);
    act.rightCols<3>() = -Mat3::Identity();
    const Eigen::Matrix<double, 2, 6> rowE =
        Eigen::Matrix<double, 2, 6>(front * (Gj * act).eval());
    out.Ct.block(2 * k, s.clone_offset(track.clone_idx[j]), 2, 6) += rowE;
    out.Ct.block(2 * k, s.clone_offset(f.anchor_clone), 2, 6) -= rowE;
    // intrinsic columns
    out.Ct.block(2 * k, 21, 2, 4) =
        xi_mat(Vec3(s.core.Xhat.L * pi_z1(cf))).topRows<2>();
    // feature columns
    out.Cf.block(2 * k, 0, 2, nz) =
        front * (Ej.inv() * Ea).R.R * dparam(f);
  }
  return out;
}

Reduced nullspace_marginalize(const MatX& Ct, const MatX& Cf, const VecX& r) {
  Eigen::ColPivHouseholderQR<MatX> qr(Cf);
  const int rank = static_cast<int>(qr.rank());
  if (rank < 3) throw std::runtime_error("nullspace_marginalize: rank-deficient Cf");
  const MatX Q = qr.householderQ();
  const MatX N = Q.rightCols(Cf.rows() - rank);  // left nullspace basis
  Reduced out;
  out.C = N.transpose() * Ct;
  out.r = N.transpose() * r;
  return out;
}

double chi2_95(int n) {
  const double z = 1.6448536269514722;  // N(0,1) 95% quantile
  const double t = 1.0 - 2.0 / (9.0 * n) + z * std::sqrt(2.0 / (9.0 * n));
  return n * t * t * t;
}

MsceqfUpdateReport msc_update(const SymVins& sym, MsceqfState& s,
                              const CameraModel& cam,
                              const std::vector<FeatureTrack>& tracks,
                              double sigma_norm, bool gate) {
  MsceqfUpdateReport rep;
  std::vector<Reduced> blocks;
  int total_rows = 0;
  for (const auto& track : tracks) {
    if (track.uv.size() < 2) {
      ++rep.failed;
      continue;
    }
    try {
      const Vec3 lin = triangulate_linear(track, s.clones);
      auto nl = triangulate_nonlinear(track, s.clones, lin,
                                      FeatureParam::InverseDepth);
      AnchoredFeature f = AnchoredFeature::from_point(
          nl.feature.point(), FeatureParam::Euclidean);
      f.anchor_clone = track.clone_idx[track.anchor];
      auto jac = feature_jacobians(s, cam, track, f);
      auto red = nullspace_marginalize(jac.Ct, jac.Cf, jac.r);
      if (gate) {
        const MatX S =
            red.C * s.core.Sigma * red.C.transpose() +
            sigma_norm * sigma_norm *
                MatX::Identity(red.r.size(), red.r.size());
        const double nis = red.r.dot(S.ldlt().solve(red.r));
        if (nis > chi2_95(static_cast<int>(red.r.size()))) {
          ++rep.gated;
          continue;
        }
      }
      total_rows += static_cast<int>(red.r.size());
      blocks.push_back(std::move(red));
      ++rep.used;
    } catch (const std::exception&) {
      ++rep.failed;
    }
  }
  if (blocks.empty()) return rep;

  eqf::OutputModel out;
  out.C = MatX::Zero(total_rows, s.dim());
  out.residual = VecX(total_rows);
  int at = 0;
  for (const auto& b : blocks) {
    out.C.middleRows(at, b.r.size()) = b.C;
    out.residual.segment(at, b.r.size()) = b.r;
    at += static_cast<int>(b.r.size());
  }
  out.Dt = MatX::Identity(total_rows, total_rows);
  out.R = sigma_norm * sigma_norm * MatX::Identity(total_rows, total_rows);

  // clone-aware update: the core symmetry handles the 25-dim part; clone
  // corrections are applied per clone through the same exponential
  const MatX Reff = out.R;
  const MatX S = out.C * s.core.Sigma * out.C.transpose() + Reff;
  Eigen::LDLT<MatX> ldlt(S);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("msc_update: singular innovation covariance");
  const MatX K = s.core.Sigma * out.C.transpose() *
                 ldlt.solve(MatX::Identity(S.rows(), S.cols()));
  const VecX delta = K * out.residual;
  s.core.Xhat = sym.compose(sym.exp(VecX(delta.head<25>())), s.core.Xhat);
  for (size_t i = 0; i < s.clones.size(); ++i) {
    const Vec6 dc = delta.segment<6>(s.clone_offset(static_cast<int>(i)));
    s.clones[i] = SE3::Exp(dc) * s.clones[i];
  }
  s.core.Sigma =
      (MatX::Identity(s.dim(), s.dim()) - K * out.C) * s.core.Sigma;
  // curvature correction on the core block
  MatX G = MatX::Identity(s.dim(), s.dim());
  G.topLeftCorner(25, 25) =
      eqf::matrix_exp(MatX(-0.5 * sym.ad(VecX(delta.head<25>()))));
  s.core.Sigma = G * s.core.Sigma * G.transpose();
  eqf::psd_repair(s.core.Sigma);
  return rep;
}

}  // namespace eqnav::msceqf
