#pragma once

#include "eqnav/sym/symmetry.hpp"

namespace eqnav::sym {

#define EQNAV_SYMMETRY_API                                                  \
  int dof() const override;                                                \
  int input_dim() const override;                                          \
  XElem identity() const override;                                         \
  XElem compose(const XElem& a, const XElem& b) const override;            \
  XElem inverse(const XElem& a) const override;                            \
  XElem exp(const VecX& eps) const override;                               \
  VecX log(const XElem& a) const override;                                 \
  MatX Ad(const XElem& a) const override;                                  \
  MatX ad(const VecX& eps) const override;                                 \
  Xi phi(const XElem& X, const Xi& xi) const override;                     \
  VecX lift(const Xi& xi, const VecX& u) const override;                   \
  XElem group_from_state(const Xi& xi, const Xi& origin) const override;   \
  Xi state_retract(const Xi& xi, const VecX& d) const override;            \
  VecX state_delta(const Xi& from, const Xi& to) const override;           \
  VecX dynamics(const Xi& xi, const VecX& u) const override;

// G_E = SO(3) x R^12; the MEKF symmetry. u = (w, a, tw, ta).
class SymE final : public Symmetry {
 public:
  using Symmetry::Symmetry;
  Variant variant() const override { return Variant::E_SO3xR12; }
  EQNAV_SYMMETRY_API
};

// G_F = SE2(3) x R^6; the Imperfect-IEKF symmetry. u = (w, a, tw, ta).
class SymF final : public Symmetry {
 public:
  using Symmetry::Symmetry;
  Variant variant() const override { return Variant::F_SE23xR6; }
  EQNAV_SYMMETRY_API
};

// G_C = SO(3) |x (R^6 + R^6); the two-frames symmetry. u = (w, a, tw, ta).
class SymC final : public Symmetry {
 public:
  using Symmetry::Symmetry;
  Variant variant() const override { return Variant::C_TwoFrames; }
  EQNAV_SYMMETRY_API
};

// G_D = SE2(3) |x se2(3); the tangent-group symmetry. State carries the
// virtual velocity bias; u = (w, a, nu, tw, ta, tnu).
class SymD final : public Symmetry {
 public:
  using Symmetry::Symmetry;
  Variant variant() const override { return Variant::D_TangentGroup; }
  EQNAV_SYMMETRY_API
  VecX psi(const XElem& X, const VecX& u) const override;
};

// G_A = HG(3) |x hg(3) x R^3; direct-position symmetry.
// u = (w, a, tw, ta, nu); error layout (R, v | b | p).
class SymA final : public Symmetry {
 public:
  using Symmetry::Symmetry;
  Variant variant() const override { return Variant::A_DirectPosition; }
  EQNAV_SYMMETRY_API
  VecX psi(const XElem& X, const VecX& u) const override;
};

// G_B = SE2(3) |x se(3); semi-direct bias symmetry. u = (w, a, tw, ta).
class SymB final : public Symmetry {
 public:
  using Symmetry::Symmetry;
  Variant variant() const override { return Variant::B_SemiDirectBias; }
  EQNAV_SYMMETRY_API
  VecX psi(const XElem& X, const VecX& u) const override;
};

// Tangent group of SO(3) with n direction-sensor calibrations; u = w.
class SymAtt final : public Symmetry {
 public:
  SymAtt(const WorldParams& world, int n_calib)
      : Symmetry(world), n_(n_calib) {}
  Variant variant() const override { return Variant::ATT_TangentSO3; }
  EQNAV_SYMMETRY_API
  VecX psi(const XElem& X, const VecX& u) const override;
  int n_calib() const { return n_; }

  // Componentwise exponential chart (log e_R, e_b, log e_C) of the error,
  // expressed on the group through phi at the identity origin.
  XElem err_exp(const VecX& eps) const override;
  VecX err_log(const XElem& a) const override;
  bool has_custom_error_chart() const override { return true; }

 private:
  int n_;
};

// Direct-product attitude symmetry yielding the Imperfect-IEKF comparison
// filter; same state space as SymAtt.
class SymAttDirect final : public Symmetry {
 public:
  SymAttDirect(const WorldParams& world, int n_calib)
      : Symmetry(world), n_(n_calib) {}
  Variant variant() const override { return Variant::ATT_Direct; }
  EQNAV_SYMMETRY_API
  int n_calib() const { return n_; }

 private:
  int n_;
};

// 21-state multi-sensor symmetry (SD core + lever arm + mag rotation).
// u = (w, a, tw, ta, zeta_lever, mu_mag); error layout
// [nav(9) | bias(6) | lever(3) | mag(3)].
class SymMs21 final : public Symmetry {
 public:
  using Symmetry::Symmetry;
  Variant variant() const override { return Variant::MS21_ArduPilot; }
  EQNAV_SYMMETRY_API
  VecX psi(const XElem& X, const VecX& u) const override;
};

// VINS core symmetry (SD core + camera extrinsic + intrinsic), 25 dims.
// u = (w, a, tw, ta, mu_extr, zeta_intr(4 used of 6)); error layout
// [nav(9) | bias(6) | extrinsic(6) | intrinsic(4)].
class SymVins final : public Symmetry {
 public:
  using Symmetry::Symmetry;
  Variant variant() const override { return Variant::VINS_MSCEqF; }
  EQNAV_SYMMETRY_API
};

#undef EQNAV_SYMMETRY_API

}  // namespace eqnav::sym
