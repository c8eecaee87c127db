#pragma once

#include "eqnav/msceqf/msceqf.hpp"

namespace eqnav::msceqf {

// VINS symmetry extended with one persistent SOT(3) feature slot; 29 dims,
// error layout [core(25) | feature(4: rot 3, scale 1)].
class SymVinsHybrid final : public sym::Symmetry {
 public:
  explicit SymVinsHybrid(const sym::WorldParams& world)
      : Symmetry(world), core_(world) {}
  sym::Variant variant() const override { return sym::Variant::VINS_MSCEqF; }
  int dof() const override { return 29; }
  int input_dim() const override { return 22; }

  XElem identity() const override;
  XElem compose(const XElem& a, const XElem& b) const override;
  XElem inverse(const XElem& a) const override;
  XElem exp(const VecX& eps) const override;
  VecX log(const XElem& a) const override;
  MatX Ad(const XElem& a) const override;
  MatX ad(const VecX& eps) const override;
  Xi phi(const XElem& X, const Xi& xi) const override;
  VecX lift(const Xi& xi, const VecX& u) const override;
  XElem group_from_state(const Xi& xi, const Xi& origin) const override;
  Xi state_retract(const Xi& xi, const VecX& d) const override;
  VecX state_delta(const Xi& from, const Xi& to) const override;
  VecX dynamics(const Xi& xi, const VecX& u) const override;

  const SymVins& core() const { return core_; }

 private:
  SymVins core_;
};

// 29x29 hybrid state matrix and 29x12 input matrix.
MatX hybrid_A(const SymVinsHybrid& sym, const EqfState& s, const VecX& u);
MatX hybrid_B(const SymVinsHybrid& sym, const EqfState& s, const VecX& u);

// Equivariant persistent-feature update rows: unit-sphere bearing output
// with rho(X, y) = Q^T y; C* block lands on the feature columns.
OutputModel persistent_feature_output(const SymVinsHybrid& sym,
                                      const EqfState& s, const Vec3& y,
                                      const Mat3& R_meas);

}  // namespace eqnav::msceqf
