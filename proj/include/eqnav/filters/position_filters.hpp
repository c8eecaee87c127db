#pragma once

#include "eqnav/eqf/eqf.hpp"

namespace eqnav::filters {

using eqf::EqfState;
using eqf::OutputModel;
using sym::Symmetry;
using sym::Variant;
using sym::Xi;
using lie::Mat3;
using lie::MatX;
using lie::Vec3;
using lie::VecX;

// Analytic A0 for the six INS filters. Identity-origin forms except the TG,
// which uses the generic-origin matrix whenever xi0 differs from identity.
MatX ins_state_matrix(const Symmetry& sym, const EqfState& s, const VecX& u);

// Analytic B_t (input/noise map in error coordinates).
MatX ins_input_matrix(const Symmetry& sym, const EqfState& s, const VecX& u);

// Output matrix and residual for a raw global position measurement pi.
// C* for the SE2(3) carriers, C0 for the linear-position symmetries.
OutputModel ins_position_output(const Symmetry& sym, const EqfState& s,
                                const Vec3& pi_raw, const Mat3& R_meas);

// C0 route for the same output (first-linearization-point only), used by the
// order-comparison tests.
MatX ins_position_C0(const Symmetry& sym, const EqfState& s, const Vec3& pi_raw);

// TG-only pseudo-measurement b_nu = 0.
OutputModel bnu_constraint_output(const Symmetry& sym, const EqfState& s,
                                  const Mat3& R_meas);

// FilterModel backed by the analytic matrices above.
class InsFilterModel final : public eqf::FilterModel {
 public:
  MatX A0(const Symmetry& sym, const EqfState& s, const VecX& u) const override {
    return ins_state_matrix(sym, s, u);
  }
  MatX Bt(const Symmetry& sym, const EqfState& s, const VecX& u) const override {
    return ins_input_matrix(sym, s, u);
  }
};

// FilterModel backed by the central-difference oracles; exact to O(h^2) and
// variant-agnostic. Used where no certified analytic form is on file.
class NumericFilterModel final : public eqf::FilterModel {
 public:
  MatX A0(const Symmetry& sym, const EqfState& s, const VecX& u) const override;
  MatX Bt(const Symmetry& sym, const EqfState& s, const VecX& u) const override;
};

}  // namespace eqnav::filters
