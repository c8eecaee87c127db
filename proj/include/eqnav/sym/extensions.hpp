#pragma once

#include "eqnav/sym/variants.hpp"

namespace eqnav::sym {

// Extra-state rows that extend an INS symmetry; one entry per extra state,
// applied in declaration order after the INS block.
enum class ExtraKind {
  RotCalib,    // S in SO(3), direct factor, phi: A^T S X
  PoseCalib,   // S in SE(3), direct factor, phi: C^-1 S X
  LeverArm,    // t in R^3, semi-direct, phi: A^T (t - X)
  Direction,   // d in S^2, nav-conjugated factor, phi: R X^T R^T d
  LandmarkSot3 // p in R^3, direct SOT(3) factor, phi: PSE * Q^-1 (PS)^-1 * p
};

int extra_dim(ExtraKind k);

struct ExtraState {
  SO3 rot;                  // RotCalib carrier
  SE3 pose;                 // PoseCalib
  Vec3 vec = Vec3::Zero();  // LeverArm / LandmarkSot3 / Direction value
};

struct ExtraElem {
  SO3 rot;
  SE3 pose;
  SOT3 sot;
  Vec3 vec = Vec3::Zero();
};

// Composition of the semi-direct bias symmetry (the running choice in the
// multi-sensor chapter) with a list of extras. Not an EqF-runnable variant
// by itself; the 21-state and VINS symmetries are the instantiated products.
// Error layout: [nav(9) | bias(6) | extras in declaration order].
class ExtendedSymmetry {
 public:
  ExtendedSymmetry(const WorldParams& world, std::vector<ExtraKind> extras);

  int dof() const { return dof_; }
  int offset_of(int extra_idx) const { return offsets_[extra_idx]; }
  const std::vector<ExtraKind>& extras() const { return kinds_; }

  struct State {
    Xi core;  // T, b (6)
    std::vector<ExtraState> extras;
  };
  struct Elem {
    XElem core;  // D, delta (6)
    std::vector<ExtraElem> extras;
  };

  Elem identity() const;
  Elem compose(const Elem& a, const Elem& b) const;
  Elem inverse(const Elem& a) const;
  State phi(const Elem& X, const State& xi) const;

  // Lift of the composed system (rigid extras, zero landmark dynamics);
  // u = (w, a, tw, ta).
  VecX lift(const State& xi, const VecX& u) const;

  // Chart on the composed state space for finite-difference checks.
  State retract(const State& xi, const VecX& d) const;
  VecX delta(const State& a, const State& b) const;

  // Boxed-example outputs.
  Vec3 h_position_lever(const State& xi, const Vec3& pi_raw, int lever_idx) const;
  Vec3 rho_position_lever(const Elem& X, const Vec3& y, int lever_idx) const;
  Vec3 h_bearing(const State& xi, int pose_idx, int lm_idx) const;
  Vec3 rho_bearing(const Elem& X, const Vec3& y, int lm_idx) const;

  const WorldParams& world() const { return world_; }

 private:
  WorldParams world_;
  std::vector<ExtraKind> kinds_;
  std::vector<int> offsets_;
  int dof_;
  SymB base_;
};

}  // namespace eqnav::sym
