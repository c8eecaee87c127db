#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "eqnav/lie/gamma.hpp"
#include "eqnav/lie/maps.hpp"

namespace eqnav::sym {

using lie::In4;
using lie::Mat3;
using lie::MatX;
using lie::SE23;
using lie::SE3;
using lie::SO3;
using lie::SOT3;
using lie::Vec3;
using lie::Vec4;
using lie::Vec6;
using lie::Vec9;
using lie::VecX;

struct WorldParams {
  double g = 9.81;
  Vec3 e3 = Vec3(0.0, 0.0, 1.0);
  Vec3 gravity() const { return g * e3; }
};

// State point on the homogeneous space. Which fields are meaningful depends
// on the variant; unused ones stay at their identities.
struct Xi {
  SE23 T;                    // navigation states (R, v, p)
  VecX b = VecX::Zero(6);    // bias block (3 for ATT, 6, or 9 for TG)
  std::vector<SO3> C;        // ATT sensor calibrations / MS21 mag rotation
  Vec3 t = Vec3::Zero();     // MS21 lever arm
  SE3 S;                     // camera extrinsic
  In4 K;                     // camera intrinsic
  Vec3 pf = Vec3::Zero();    // persistent feature (hybrid VINS)
};

// Symmetry group element; per-variant component layout.
struct XElem {
  SE23 D;                    // E stores its SO(3) factor in D.R
  VecX delta = VecX::Zero(0);
  std::vector<SO3> B;        // ATT calibration factors / MS21 mag factor
  Vec3 gamma = Vec3::Zero(); // MS21 lever slot / DP position slot
  SE3 E;                     // VINS clone-producing factor / DP base
  In4 L;
  SOT3 Q;                    // hybrid VINS feature factor
};

enum class Variant {
  E_SO3xR12,
  F_SE23xR6,
  C_TwoFrames,
  D_TangentGroup,
  A_DirectPosition,
  B_SemiDirectBias,
  ATT_TangentSO3,
  ATT_Direct,
  MS21_ArduPilot,
  VINS_MSCEqF,
};

const char* variant_name(Variant v);

// Right symmetry of a kinematic system: group operations, the actions
// phi/psi, the lift, and the charts the EqF linearizes in.
class Symmetry {
 public:
  explicit Symmetry(const WorldParams& world) : world_(world) {}
  virtual ~Symmetry() = default;

  virtual Variant variant() const = 0;
  virtual int dof() const = 0;        // group dimension == error dimension
  virtual int input_dim() const = 0;  // length of the input vector u

  virtual XElem identity() const = 0;
  virtual XElem compose(const XElem& a, const XElem& b) const = 0;
  virtual XElem inverse(const XElem& a) const = 0;
  virtual XElem exp(const VecX& eps) const = 0;
  virtual VecX log(const XElem& a) const = 0;
  virtual MatX Ad(const XElem& a) const = 0;
  virtual MatX ad(const VecX& eps) const = 0;

  // Error chart on the group; normal coordinates by default. The attitude
  // filter overrides these with its chapter's component-wise exponential
  // chart, in which its closed-form matrices are exact.
  virtual XElem err_exp(const VecX& eps) const { return exp(eps); }
  virtual VecX err_log(const XElem& a) const { return log(a); }
  virtual bool has_custom_error_chart() const { return false; }

  virtual Xi phi(const XElem& X, const Xi& xi) const = 0;
  virtual VecX lift(const Xi& xi, const VecX& u) const = 0;

  // Input action; throws for variants whose system is handled without one.
  virtual VecX psi(const XElem& X, const VecX& u) const {
    (void)X;
    (void)u;
    throw std::logic_error(std::string(variant_name(variant())) +
                           ": unsupported input action");
  }

  // Transitivity witness Z with phi(Z, origin) = xi.
  virtual XElem group_from_state(const Xi& xi, const Xi& origin) const = 0;

  // Exponential chart on the state manifold, used by the finite-difference
  // oracles; same block layout as the error coordinates.
  virtual Xi state_retract(const Xi& xi, const VecX& d) const = 0;
  virtual VecX state_delta(const Xi& from, const Xi& to) const = 0;

  // System dynamics as a chart velocity at xi (the ODE right-hand side in
  // the state_retract chart).
  virtual VecX dynamics(const Xi& xi, const VecX& u) const = 0;

  const WorldParams& world() const { return world_; }

  // Normal coordinates of the equivariant error e = phi(Xhat^-1, xi).
  VecX error_coords(const Xi& xi, const XElem& Xhat, const Xi& origin) const;

 protected:
  WorldParams world_;
};

std::unique_ptr<Symmetry> make_symmetry(Variant v, const WorldParams& world,
                                        int n_att_calib = 1);

// Shared INS helpers -------------------------------------------------------

// Lambda_1 coordinates (W - B + N) + T^-1 (G - N) T for the SE2(3) carriers;
// nu/bnu slots are zero outside the TG variant.
Vec9 ins_lambda1(const SE23& T, const VecX& b, const Vec3& omega,
                 const Vec3& accel, const Vec3& nu, const Vec3& gravity);

}  // namespace eqnav::sym
