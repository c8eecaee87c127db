#pragma once

#include <functional>
#include <optional>

#include "eqnav/sym/symmetry.hpp"

namespace eqnav::eqf {

using sym::Symmetry;
using sym::Xi;
using sym::XElem;
using lie::MatX;
using lie::VecX;

struct EqfState {
  XElem Xhat;
  MatX Sigma;
  Xi origin;
  double time = 0.0;
};

EqfState make_initial(const Symmetry& sym, const Xi& origin, const MatX& Sigma0);

// Analytic linearized model of one filter; the engine owns the generic
// propagation/update algebra, the model owns the matrices.
class FilterModel {
 public:
  virtual ~FilterModel() = default;
  virtual MatX A0(const Symmetry& sym, const EqfState& s, const VecX& u) const = 0;
  virtual MatX Bt(const Symmetry& sym, const EqfState& s, const VecX& u) const = 0;
  // State transition; default dense matrix exponential.
  virtual MatX Phi(const MatX& A0, double dt) const;
};

struct OutputModel {
  MatX C;         // n x m
  VecX residual;  // r, already in output-chart coordinates
  MatX Dt;        // n x n output noise map
  MatX R;         // raw measurement covariance
};

// Xhat <- Xhat exp(Lambda dt); Sigma <- Phi Sigma Phi^T + B Q B^T dt.
void propagate(const Symmetry& sym, const FilterModel& model, EqfState& s,
               const VecX& u, double dt, const MatX& Q);

struct UpdateStats {
  VecX delta;       // correction in error coordinates
  double nis = 0.0; // r^T S^-1 r before any inflation
};

struct UpdateOptions {
  std::optional<double> gcu_alpha;  // in [0,1]; unset disables inflation
  // Cartan-Schouten curvature transport of Sigma after the update. Exact per
  // the discrete-time algorithm; a small-correction expansion that distorts
  // the covariance when |delta| is transient-large, so consistency studies
  // may switch it off.
  bool curvature_correction = true;
};

// EqF update; throws std::runtime_error when the innovation covariance is
// singular, leaving the state untouched.
UpdateStats update(const Symmetry& sym, EqfState& s, const OutputModel& out,
                   const UpdateOptions& opts = {});
UpdateStats update(const Symmetry& sym, EqfState& s, const OutputModel& out,
                   std::optional<double> gcu_alpha);

// Inflated innovation covariance S' = beta (C Sigma C^T + alpha r r^T) + R.
MatX gcu_inflate(const VecX& r, const MatX& C, const MatX& Sigma,
                 const MatX& R, double alpha);

// (Sigma + Sigma^T)/2 followed by an eigenvalue clamp at zero when the
// smallest eigenvalue drops below -1e-10.
void psd_repair(MatX& Sigma);

MatX matrix_exp(const MatX& A);

}  // namespace eqnav::eqf
