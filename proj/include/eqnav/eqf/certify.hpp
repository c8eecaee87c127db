#pragma once

#include "eqnav/eqf/eqf.hpp"

namespace eqnav::eqf {

// Central-difference oracles for the EqF matrices, built from the composite
// maps the linearizations approximate. Step h in [1e-7, 1e-4].

// A0 = D_eps Ad_Xhat Lambda(phi(Xhat, phi(exp(eps), xi0)), u) in normal
// coordinates (the generic-origin chain; coincides with the origin-input
// form for equivariant systems).
MatX numeric_A(const Symmetry& sym, const Xi& xi0, const XElem& Xhat,
               const VecX& u, double h = 1e-6);

// B_t = D_u Ad_Xhat Lambda(phi(Xhat, xi0), u).
MatX numeric_B(const Symmetry& sym, const Xi& xi0, const XElem& Xhat,
               const VecX& u, double h = 1e-6);

// C = D_eps residual(eps) for a caller-supplied residual map evaluated on
// the perturbed true state phi(Xhat, phi(exp(eps), xi0)).
using ResidualFn = std::function<VecX(const Xi& xi_true)>;
MatX numeric_C(const Symmetry& sym, const Xi& xi0, const XElem& Xhat,
               const ResidualFn& residual, int n_out, double h = 1e-6);

// Max entrywise deviation relative to 1 + |analytic|.
double max_deviation(const MatX& analytic, const MatX& numeric);

}  // namespace eqnav::eqf
