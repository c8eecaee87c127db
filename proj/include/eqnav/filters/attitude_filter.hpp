#pragma once

#include "eqnav/eqf/eqf.hpp"

namespace eqnav::filters {

using eqf::EqfState;
using eqf::OutputModel;
using sym::Symmetry;
using lie::Mat3;
using lie::MatX;
using lie::Vec3;
using lie::VecX;

// One direction sensor: known reference direction and whether an extrinsic
// calibration state is estimated for it (index into the state's list).
struct DirectionSensor {
  Vec3 d = Vec3::UnitZ();
  bool calibrated_online = false;
  int calib_index = -1;
};

struct AttitudeMatrices {
  MatX A0, C0, Bt, Dt;
};

// A0/C0/B/D of the tangent-group attitude EqF at identity origin.
// omega0 is the origin input psi(Xhat^-1, u).
AttitudeMatrices attitude_matrices(const Symmetry& sym, const EqfState& s,
                                   const Vec3& omega0,
                                   const std::vector<DirectionSensor>& dirs);

// Closed-form state transition for the 9-dim attitude filter (n_calib = 1);
// switches to the small-angle Taylor limit below |omega0| dt < 1e-4.
MatX attitude_phi_closed_form(const Vec3& omega0, double dt);

// Residual of stacked direction measurements through the output action.
OutputModel attitude_output(const Symmetry& sym, const EqfState& s,
                            const std::vector<DirectionSensor>& dirs,
                            const std::vector<Vec3>& y,
                            const std::vector<double>& sigma);

// Spatial direction from two receiver positions; throws on a degenerate
// baseline (< 1e-6 m).
Vec3 gnss_direction(const Vec3& p1, const Vec3& p2);

// Attitude EqF model: closed-form Phi when enabled and the state is 9-dim.
class AttitudeFilterModel final : public eqf::FilterModel {
 public:
  AttitudeFilterModel(std::vector<DirectionSensor> dirs, bool closed_phi)
      : dirs_(std::move(dirs)), closed_phi_(closed_phi) {}
  MatX A0(const Symmetry& sym, const EqfState& s, const VecX& u) const override;
  MatX Bt(const Symmetry& sym, const EqfState& s, const VecX& u) const override;
  MatX Phi(const MatX& A0, double dt) const override;

 private:
  std::vector<DirectionSensor> dirs_;
  bool closed_phi_;
};

}  // namespace eqnav::filters
