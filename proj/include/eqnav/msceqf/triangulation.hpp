#pragma once

#include "eqnav/msceqf/msceqf.hpp"

namespace eqnav::msceqf {

enum class FeatureParam { Euclidean, InverseDepth, Polar };

// One feature track: normalized-plane observations tagged by clone index.
struct FeatureTrack {
  long id = -1;
  std::vector<int> clone_idx;
  std::vector<Eigen::Vector2d> uv;  // normalized image coordinates
  int anchor = 0;                   // index into clone_idx
};

struct AnchoredFeature {
  FeatureParam param = FeatureParam::Euclidean;
  VecX z;           // 3 (euclidean/inverse depth) or 4 (polar) coordinates
  int anchor_clone = 0;
  Vec3 polar_origin = Vec3::Zero();  // c_ring for the polar chart

  Vec3 point() const;  // anchor-frame Euclidean point
  static AnchoredFeature from_point(const Vec3& p_anchor, FeatureParam param,
                                    const Vec3& polar_origin = Vec3::Zero());
};

// Stacked-skew linear least squares; anchor-frame feature. Throws on
// parallel-ray degeneracy (condition number above 1e8).
Vec3 triangulate_linear(const FeatureTrack& track,
                        const std::vector<SE3>& clones);

struct NonlinearResult {
  AnchoredFeature feature;
  double cost = 0.0;
  int iterations = 0;
  bool converged = true;
};

// Levenberg-Marquardt refinement of the reprojection cost in the chosen
// parametrization; at most 20 iterations, cost non-increasing per accepted
// step. Non-convergence returns the best iterate with converged = false.
NonlinearResult triangulate_nonlinear(const FeatureTrack& track,
                                      const std::vector<SE3>& clones,
                                      const Vec3& init_anchor_point,
                                      FeatureParam param);

// Scale system + Wahba rotation via SVD; returns polar coordinates about the
// unit anchor bearing. Throws on degeneracy or non-positive anchor scale.
AnchoredFeature triangulate_two_stage(const FeatureTrack& track,
                                      const std::vector<SE3>& clones);

double reprojection_cost(const FeatureTrack& track,
                         const std::vector<SE3>& clones,
                         const AnchoredFeature& f);

}  // namespace eqnav::msceqf
