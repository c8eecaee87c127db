#include "eqnav/msceqf/triangulation.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

namespace eqnav::msceqf {

using namespace eqnav::lie;

namespace {

Vec3 bearing(const Eigen::Vector2d& uv) { return Vec3(uv.x(), uv.y(), 1.0); }

// sigma^-1: anchor-frame point from coordinates.
Vec3 param_to_point(const AnchoredFeature& f) {
  switch (f.param) {
    case FeatureParam::Euclidean:
      return f.z;
    case FeatureParam::InverseDepth: {
      const double z2 = f.z(2);
      return Vec3(f.z(0) / z2, f.z(1) / z2, 1.0 / z2);
    }
    case FeatureParam::Polar: {
      const SOT3 Q = SOT3::Exp(f.z);
      return Q.inv() * f.polar_origin;
    }
  }
  return Vec3::Zero();
}

}  // namespace

Vec3 AnchoredFeature::point() const { return param_to_point(*this); }

AnchoredFeature AnchoredFeature::from_point(const Vec3& p, FeatureParam param,
                                            const Vec3& polar_origin) {
  AnchoredFeature f;
  f.param = param;
  f.polar_origin = polar_origin;
  switch (param) {
    case FeatureParam::Euclidean:
      f.z = p;
      break;
    case FeatureParam::InverseDepth:
      if (p.z() <= 0.0)
        throw std::domain_error("inverse depth needs positive anchor depth");
      f.z = Vec3(p.x() / p.z(), p.y() / p.z(), 1.0 / p.z());
      break;
    case FeatureParam::Polar: {
      if (polar_origin.norm() <= 1e-12 || p.norm() <= 1e-12)
        throw std::domain_error("polar chart undefined at zero");
      // z = (log(|c0|/|p|), -acos(c0.p)*axis(c0 x p))
      f.z = VecX(4);
      const Vec3 c0 = polar_origin;
      f.z(3) = std::log(c0.norm() / p.norm());
      const Vec3 cxp = c0.cross(p);
      const double cosang =
          std::clamp(c0.dot(p) / (c0.norm() * p.norm()), -1.0, 1.0);
      if (cxp.norm() < 1e-12) {
        f.z.head<3>().setZero();
      } else {
        f.z.head<3>() = -std::acos(cosang) * cxp.normalized();
      }
      break;
    }
  }
  return f;
}

Vec3 triangulate_linear(const FeatureTrack& track,
                        const std::vector<SE3>& clones) {
  const int n = static_cast<int>(track.uv.size());
  if (n < 2) throw std::domain_error("triangulate_linear: need >= 2 views");
  const SE3& Ea = clones[track.clone_idx[track.anchor]];
  MatX A(3 * n, 3);
  VecX b(3 * n);
  for (int j = 0; j < n; ++j) {
    const SE3 rel = Ea.inv() * clones[track.clone_idx[j]];
    const Vec3 bf = rel.R.R * bearing(track.uv[j]);  // ray in the anchor frame
    const Mat3 S = skew(bf);
    A.middleRows<3>(3 * j) = S;
    b.segment<3>(3 * j) = S * rel.t;
  }
  Eigen::JacobiSVD<MatX> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cond =
      svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
  if (!(cond < 1e8))
    throw std::domain_error("triangulate_linear: parallel-ray degeneracy");
  return svd.solve(b);
}

double reprojection_cost(const FeatureTrack& track,
                         const std::vector<SE3>& clones,
                         const AnchoredFeature& f) {
  const SE3& Ea = clones[track.clone_idx[track.anchor]];
  const Vec3 pa = f.point();
  double cost = 0.0;
  for (size_t j = 0; j < track.uv.size(); ++j) {
    const SE3 rel = clones[track.clone_idx[j]].inv() * Ea;
    const Vec3 cf = rel * pa;
    if (cf.z() <= 1e-9) return std::numeric_limits<double>::infinity();
    cost += (Eigen::Vector2d(cf.x() / cf.z(), cf.y() / cf.z()) - track.uv[j])
                .squaredNorm();
  }
  return cost;
}

namespace {

VecX residuals_of(const FeatureTrack& track, const std::vector<SE3>& clones,
                  const AnchoredFeature& f) {
  const SE3& Ea = clones[track.clone_idx[track.anchor]];
  const Vec3 pa = f.point();
  VecX r(2 * track.uv.size());
  for (size_t j = 0; j < track.uv.size(); ++j) {
    const SE3 rel = clones[track.clone_idx[j]].inv() * Ea;
    const Vec3 cf = rel * pa;
    const double z = (cf.z() > 1e-9) ? cf.z() : 1e-9;
    r.segment<2>(2 * j) =
        Eigen::Vector2d(cf.x() / z, cf.y() / z) - track.uv[j];
  }
  return r;
}

}  // namespace

NonlinearResult triangulate_nonlinear(const FeatureTrack& track,
                                      const std::vector<SE3>& clones,
                                      const Vec3& init, FeatureParam param) {
  NonlinearResult out;
  out.feature =
      AnchoredFeature::from_point(init, param, Vec3(init.normalized()));
  VecX z = out.feature.z;
  const int nz = static_cast<int>(z.size());
  double lambda = 1e-4;
  VecX r = residuals_of(track, clones, out.feature);
  double cost = r.squaredNorm();
  double grad_norm = 0.0;
  double last_decrease = std::numeric_limits<double>::infinity();
  const double h = 1e-7;
  for (out.iterations = 0; out.iterations < 20; ++out.iterations) {
    // central-difference Jacobian over the 3-4 chart coordinates
    MatX J(r.size(), nz);
    for (int k = 0; k < nz; ++k) {
      AnchoredFeature fp = out.feature;
      fp.z(k) += h;
      AnchoredFeature fm = out.feature;
      fm.z(k) -= h;
      J.col(k) = (residuals_of(track, clones, fp) -
                  residuals_of(track, clones, fm)) /
                 (2.0 * h);
    }
    const VecX g = J.transpose() * r;
    grad_norm = g.norm();
    if (grad_norm < 1e-10) break;
    bool accepted = false;
    for (int tries = 0; tries < 8; ++tries) {
      const MatX H =
          J.transpose() * J + lambda * MatX::Identity(nz, nz);
      const VecX step = H.ldlt().solve(-g);
      AnchoredFeature cand = out.feature;
      cand.z += step;
      const VecX rc = residuals_of(track, clones, cand);
      const double cc = rc.squaredNorm();
      if (cc < cost) {
        out.feature = cand;
        last_decrease = cost - cc;
        r = rc;
        cost = cc;
        lambda = std::max(lambda / 4.0, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 8.0;
    }
    if (!accepted) break;
  }
  out.cost = cost;
  out.converged = !(last_decrease < 1e-12 && grad_norm > 1e-6);
  return out;
}

AnchoredFeature triangulate_two_stage(const FeatureTrack& track,
                                      const std::vector<SE3>& clones) {
  const int n = static_cast<int>(track.uv.size());
  if (n < 2) throw std::domain_error("triangulate_two_stage: need >= 2 views");
  const SE3& Ea = clones[track.clone_idx[track.anchor]];
  const Vec3 xa = pi_s2(bearing(track.uv[track.anchor]));

  // stage 1: stacked scale system over (lambda_A, lambda_1..n) in the
  // anchor frame
  int rows = 0;
  for (int j = 0; j < n; ++j)
    if (j != track.anchor) rows += 3;
  MatX A = MatX::Zero(rows, 1 + n);
  VecX b = VecX::Zero(rows);
  int r = 0;
  for (int j = 0; j < n; ++j) {
    if (j == track.anchor) continue;
    const SE3 rel = Ea.inv() * clones[track.clone_idx[j]];
    A.block<3, 1>(r, 0) = xa;
    A.block<3, 1>(r, 1 + j) = -(rel.R.R * pi_s2(bearing(track.uv[j])));
    b.segment<3>(r) = rel.t;
    r += 3;
  }
  // drop the anchor's own unused column
  MatX Ared(rows, n);
  int c = 0;
  for (int j = 0; j <= n; ++j) {
    if (j == 1 + track.anchor) continue;
    Ared.col(c++) = A.col(j);
  }
  Eigen::JacobiSVD<MatX> svd(Ared, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cond =
      svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
  if (!(cond < 1e8))
    throw std::domain_error("triangulate_two_stage: degenerate rays");
  const VecX lambdas = svd.solve(b);
  const double lambda_a = lambdas(0);
  if (!(lambda_a > 0.0))
    throw std::domain_error("triangulate_two_stage: non-positive anchor depth");

  // stage 2: Wahba problem aligning the anchor bearing with the mean
  // direction of the per-view reconstructions
  Vec3 mean = Vec3::Zero();
  int li = 1;
  for (int j = 0; j < n; ++j) {
    if (j == track.anchor) continue;
    const SE3 rel = Ea.inv() * clones[track.clone_idx[j]];
    mean += rel * Vec3(lambdas(li) * pi_s2(bearing(track.uv[j])));
    ++li;
  }
  mean += lambda_a * xa;  // anchor's own reconstruction
  const Vec3 af_dir = pi_s2(mean);
  // minimal rotation: pin the rotation axis as a second Wahba pair
  // distinct weights keep the two-pair Wahba problem uniquely solvable;
  // parallel directions need no rotation at all
  Mat3 Rq = Mat3::Identity();
  const Vec3 axis = xa.cross(af_dir);
  if (axis.norm() > 1e-12) {
    const Vec3 ax = axis.normalized();
    Mat3 Bw = 2.0 * af_dir * xa.transpose() + ax * ax.transpose();
    Eigen::JacobiSVD<Mat3> wsvd(Bw, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 Dfix = Mat3::Identity();
    Dfix(2, 2) = (wsvd.matrixU() * wsvd.matrixV().transpose()).determinant();
    Rq = wsvd.matrixU() * Dfix * wsvd.matrixV().transpose();
  }

  AnchoredFeature f;
  f.param = FeatureParam::Polar;
  f.polar_origin = xa;
  f.anchor_clone = track.clone_idx[track.anchor];
  f.z = VecX(4);
  f.z.head<3>() = log_so3(Mat3(Rq.transpose()));
  f.z(3) = std::log(1.0 / lambda_a);
  return f;
}

}  // namespace eqnav::msceqf
