#pragma once

#include "eqnav/lie/groups.hpp"

namespace eqnav::lie {

enum class GroupKind { SO3, SOT3, SE3, HG3, SE23, G3, IN, IN4 };

int group_dim(GroupKind g);

// Gamma_m(u) = sum_k 1/(k+m)! (ad_u)^k on the coordinate space of the group.
// Closed forms where available (m in {0,1,2} for SO(3); m = 1 for
// SE(3)/SE2(3)/SOT(3)/G(3)); adaptive series otherwise. Total on finite input.
MatX gamma(GroupKind g, int m, const VecX& u);

// Adaptive truncation of the defining series, used as the oracle companion.
MatX gamma_series(const MatX& ad, int m, double tol = 1e-16);

// Dispatch helpers over the coordinate representation.
MatX group_exp_matrix(GroupKind g, const VecX& u);   // matrix form of exp(u^)
VecX group_log_matrix(GroupKind g, const MatX& X);   // coordinates of log(X)
MatX group_adjoint(GroupKind g, const MatX& X);      // Ad matrix of an element
MatX algebra_adjoint(GroupKind g, const VecX& u);    // ad matrix
MatX wedge(GroupKind g, const VecX& u);
VecX vee(GroupKind g, const MatX& U, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Semi-direct products G x| g with the base group acting by its Adjoint.
// Elements are (A, a) with a stored in coordinates; tangent (gamma, zeta).
// ---------------------------------------------------------------------------

// exp((gamma, zeta)) = (exp_G(gamma^), Gamma_1(gamma) zeta)
// log inverts the second slot with Gamma_1^{-1}; throws where Gamma_1 is
// singular (rotation angle at 2 pi multiples).
struct SdpCoords {
  VecX base;    // gamma
  VecX fiber;   // zeta
};

SdpCoords sdp_exp(GroupKind base, const VecX& gamma, const VecX& zeta);
SdpCoords sdp_log(GroupKind base, const MatX& A, const VecX& a);

}  // namespace eqnav::lie
