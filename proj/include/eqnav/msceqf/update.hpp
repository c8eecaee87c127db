#pragma once

#include "eqnav/msceqf/triangulation.hpp"

namespace eqnav::msceqf {

// Measurement rows of one feature observation: C_t over the clone-augmented
// error and C^f over the feature-coordinate error.
struct FeatureJacobians {
  MatX Ct;   // 2n x (25 + 6k)
  MatX Cf;   // 2n x (3 or 4)
  VecX r;    // 2n stacked residuals (measured - predicted, normalized coords)
};

// Builds the stacked rows for one track given the anchored estimate.
// Observations with predicted depth <= 1e-6 are skipped; throws when nothing
// remains.
FeatureJacobians feature_jacobians(const MsceqfState& s, const CameraModel& cam,
                                   const FeatureTrack& track,
                                   const AnchoredFeature& f);

// Left-nullspace projection of Cf out of (Ct, r): returns reduced rows.
// Throws when Cf is rank-deficient below 3.
struct Reduced {
  MatX C;
  VecX r;
};
Reduced nullspace_marginalize(const MatX& Ct, const MatX& Cf, const VecX& r);

struct MsceqfUpdateReport {
  int used = 0;
  int gated = 0;
  int failed = 0;
};

// Triangulate, project and stack all mature tracks, chi-square gate at 95%,
// and apply one EqF update with pixel noise sigma (normalized coordinates).
MsceqfUpdateReport msc_update(const SymVins& sym, MsceqfState& s,
                              const CameraModel& cam,
                              const std::vector<FeatureTrack>& tracks,
                              double sigma_norm, bool gate = true);

// chi-square 95% quantile for n degrees of freedom (Wilson-Hilferty).
double chi2_95(int n);

}  // namespace eqnav::msceqf
