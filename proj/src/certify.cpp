#include "eqnav/eqf/certify.hpp"

namespace eqnav::eqf {

namespace {

// Jacobian of err-chart composed with the group exponential at zero; the
// identity for normal coordinates.
MatX chart_of_algebra(const Symmetry& sym, double h) {
  const int m = sym.dof();
  MatX J(m, m);
  VecX e = VecX::Zero(m);
  for (int i = 0; i < m; ++i) {
    e(i) = h;
    const VecX p = sym.err_log(sym.exp(e));
    e(i) = -h;
    const VecX q = sym.err_log(sym.exp(e));
    e(i) = 0.0;
    J.col(i) = (p - q) / (2.0 * h);
  }
  return J;
}

}  // namespace

MatX numeric_A(const Symmetry& sym, const Xi& xi0, const XElem& Xhat,
               const VecX& u, double h) {
  const int m = sym.dof();
  const MatX AdX = sym.Ad(Xhat);
  MatX A(m, m);
  VecX eps = VecX::Zero(m);
  for (int i = 0; i < m; ++i) {
    eps(i) = h;
    const VecX lp =
        AdX * sym.lift(sym.phi(Xhat, sym.phi(sym.err_exp(eps), xi0)), u);
    eps(i) = -h;
    const VecX lm =
        AdX * sym.lift(sym.phi(Xhat, sym.phi(sym.err_exp(eps), xi0)), u);
    eps(i) = 0.0;
    A.col(i) = (lp - lm) / (2.0 * h);
  }
  if (sym.has_custom_error_chart()) A = chart_of_algebra(sym, h) * A;
  return A;
}

MatX numeric_B(const Symmetry& sym, const Xi& xi0, const XElem& Xhat,
               const VecX& u, double h) {
  const int m = sym.dof();
  const int q = static_cast<int>(u.size());
  const MatX AdX = sym.Ad(Xhat);
  const Xi est = sym.phi(Xhat, xi0);
  MatX B(m, q);
  VecX up = u;
  for (int j = 0; j < q; ++j) {
    up(j) = u(j) + h;
    const VecX lp = AdX * sym.lift(est, up);
    up(j) = u(j) - h;
    const VecX lm = AdX * sym.lift(est, up);
    up(j) = u(j);
    B.col(j) = (lp - lm) / (2.0 * h);
  }
  if (sym.has_custom_error_chart()) B = chart_of_algebra(sym, h) * B;
  return B;
}

MatX numeric_C(const Symmetry& sym, const Xi& xi0, const XElem& Xhat,
               const ResidualFn& residual, int n_out, double h) {
  const int m = sym.dof();
  MatX C(n_out, m);
  VecX eps = VecX::Zero(m);
  for (int i = 0; i < m; ++i) {
    eps(i) = h;
    const VecX rp = residual(sym.phi(Xhat, sym.phi(sym.err_exp(eps), xi0)));
    eps(i) = -h;
    const VecX rm = residual(sym.phi(Xhat, sym.phi(sym.err_exp(eps), xi0)));
    eps(i) = 0.0;
    C.col(i) = (rp - rm) / (2.0 * h);
  }
  return C;
}

double max_deviation(const MatX& analytic, const MatX& numeric) {
  return (analytic - numeric).cwiseAbs().maxCoeff() / (1.0 + analytic.norm());
}

}  // namespace eqnav::eqf
