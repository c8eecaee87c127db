#pragma once

#include <map>

#include "eqnav/eqf/eqf.hpp"
#include "eqnav/sym/variants.hpp"

namespace eqnav::msceqf {

using eqf::EqfState;
using eqf::OutputModel;
using sym::SymVins;
using sym::Xi;
using sym::XElem;
using lie::In4;
using lie::Mat3;
using lie::MatX;
using lie::SE3;
using lie::SE23;
using lie::SO3;
using lie::SOT3;
using lie::Vec3;
using lie::Vec6;
using lie::Vec9;
using lie::VecX;

struct CameraModel {
  In4 K0;                       // origin intrinsics
  bool unit_sphere = false;     // projection on S^2 instead of the unit plane
};

// Filter state: the 25-dim VINS core plus a sliding window of E clones.
// Sigma is (25 + 6k) x (25 + 6k), clone order = acquisition order.
struct MsceqfState {
  EqfState core;
  std::vector<double> clone_times;
  std::vector<SE3> clones;
  int max_clones = 11;

  int dim() const { return 25 + 6 * static_cast<int>(clones.size()); }
  int clone_offset(int i) const { return 25 + 6 * i; }
};

// Analytic 25x25 state matrix and 25x12 input matrix.
MatX msceqf_A(const SymVins& sym, const EqfState& s, const VecX& u);
MatX msceqf_B(const SymVins& sym, const EqfState& s);

// Second-order state transition built from the A blocks.
MatX msceqf_Phi(const MatX& A, double dT);

// IMU propagation of the full clone-augmented state.
void msceqf_propagate(const SymVins& sym, MsceqfState& s, const VecX& u,
                      double dt, const MatX& Q12);

// Append the current E element as a clone; Sigma grows by exact duplication
// of the E rows/columns. Throws when the window is full.
void stochastic_clone(MsceqfState& s, double timestamp);

// Drop clone i (marginalization by deletion).
void prune_clone(MsceqfState& s, int index);

// Sigma = D P D^T transport of a homogeneous-space covariance
// P over (T(9), b(6), S(6), K(4)) into error coordinates.
MatX initial_covariance_transport(const MatX& P, const SymVins& sym,
                                  const XElem& Xhat, const Xi& xi0);
MatX initial_covariance_D(const SymVins& sym, const XElem& Xhat, const Xi& xi0);

// Equivariant zero-velocity update: y = (R_hat, 0, p_hat).
OutputModel zvu_output(const SymVins& sym, const MsceqfState& s,
                       const Mat3& R_att, const Mat3& R_vel, const Mat3& R_pos);

// Median track disparity below threshold (normalized coordinates).
bool zvu_detect(const std::vector<double>& disparities, double threshold);

}  // namespace eqnav::msceqf
