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

// 21-state multi-sensor EqF, error layout [nav(9) | bias(6) | lever(3) | mag(3)].
MatX ms21_state_matrix(const Symmetry& sym, const EqfState& s, const VecX& u);
MatX ms21_input_matrix(const Symmetry& sym, const EqfState& s, const VecX& u);

// Equivariant outputs; y is the raw measurement in each case.
OutputModel ms21_direction_output(const Symmetry& sym, const EqfState& s,
                                  const Vec3& m_world, const Vec3& y,
                                  const Mat3& R_meas);
OutputModel ms21_position_output(const Symmetry& sym, const EqfState& s,
                                 const Vec3& pi_raw, const Mat3& R_meas);
OutputModel ms21_velocity_output(const Symmetry& sym, const EqfState& s,
                                 const Vec3& nu_raw, const Vec3& omega,
                                 const Mat3& R_meas);

class Ms21FilterModel final : public eqf::FilterModel {
 public:
  MatX A0(const Symmetry& sym, const EqfState& s, const VecX& u) const override {
    return ms21_state_matrix(sym, s, u);
  }
  MatX Bt(const Symmetry& sym, const EqfState& s, const VecX& u) const override {
    return ms21_input_matrix(sym, s, u);
  }
};

}  // namespace eqnav::filters
