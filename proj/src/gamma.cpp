#include "eqnav/lie/gamma.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace eqnav::lie {

int group_dim(GroupKind g) {
  switch (g) {
    case GroupKind::SO3: return 3;
    case GroupKind::SOT3: return 4;
    case GroupKind::SE3:
    case GroupKind::HG3: return 6;
    case GroupKind::SE23: return 9;
    case GroupKind::G3: return 10;
    case GroupKind::IN: return 5;
    case GroupKind::IN4: return 4;
  }
  return 0;
}

MatX gamma_series(const MatX& ad, int m, double tol) {
  const int n = static_cast<int>(ad.rows());
  MatX S = MatX::Zero(n, n);
  MatX Ak = MatX::Identity(n, n);
  double f = 1.0;
  for (int k = 2; k <= m; ++k) f *= k;  // m!
  for (int k = 0; k < 200; ++k) {
    const MatX term = Ak / f;
    S += term;
    if (term.norm() < tol * (1.0 + S.norm()) && k > 2) break;
    Ak = Ak * ad;
    f *= (k + m + 1);
  }
  return S;
}

MatX gamma(GroupKind g, int m, const VecX& u) {
  switch (g) {
    case GroupKind::SO3: {
      const Vec3 w = u;
      if (m == 0) return gamma0_so3(w);
      if (m == 1) return gamma1_so3(w);
      if (m == 2) return gamma2_so3(w);
      break;
    }
    case GroupKind::SOT3:
      if (m == 1) return jl_sot3(u);
      if (m == 0) return group_adjoint(g, group_exp_matrix(g, u));
      break;
    case GroupKind::SE3:
    case GroupKind::HG3:
      if (m == 1) return jl_se3(u);
      if (m == 0) return group_adjoint(g, group_exp_matrix(g, u));
      break;
    case GroupKind::SE23:
      if (m == 1) return jl_se23(u);
      if (m == 0) return group_adjoint(g, group_exp_matrix(g, u));
      break;
    case GroupKind::G3:
      if (m == 1) return jl_gal3(u);
      if (m == 0) return group_adjoint(g, group_exp_matrix(g, u));
      break;
    case GroupKind::IN:
    case GroupKind::IN4:
      if (m == 0) return group_adjoint(g, group_exp_matrix(g, u));
      break;
  }
  return gamma_series(algebra_adjoint(g, u), m);
}

MatX group_exp_matrix(GroupKind g, const VecX& u) {
  switch (g) {
    case GroupKind::SO3: return exp_so3(u);
    case GroupKind::SOT3: return SOT3::Exp(u).matrix();
    case GroupKind::SE3:
    case GroupKind::HG3: return SE3::Exp(u).matrix();
    case GroupKind::SE23: return SE23::Exp(u).matrix();
    case GroupKind::G3: return Gal3::Exp(u).matrix();
    case GroupKind::IN: return In5::Exp(u).matrix();
    case GroupKind::IN4: return In4::Exp(u).matrix();
  }
  return {};
}

VecX group_log_matrix(GroupKind g, const MatX& X) {
  switch (g) {
    case GroupKind::SO3: return log_so3(X);
    case GroupKind::SOT3: {
      const double s = std::cbrt(X.determinant());
      return SOT3(SO3(Mat3(X / s)), s).log();
    }
    case GroupKind::SE3:
    case GroupKind::HG3: return SE3::from_matrix(X).log();
    case GroupKind::SE23: return SE23::from_matrix(X).log();
    case GroupKind::G3: return Gal3::from_matrix(X).log();
    case GroupKind::IN: return In5::from_matrix(X).log();
    case GroupKind::IN4: return In4::from_matrix(X).log();
  }
  return {};
}

MatX group_adjoint(GroupKind g, const MatX& X) {
  switch (g) {
    case GroupKind::SO3: return X;
    case GroupKind::SOT3: {
      const double s = std::cbrt(X.determinant());
      return SOT3(SO3(Mat3(X / s)), s).Ad();
    }
    case GroupKind::SE3:
    case GroupKind::HG3: return SE3::from_matrix(X).Ad();
    case GroupKind::SE23: return SE23::from_matrix(X).Ad();
    case GroupKind::G3: return Gal3::from_matrix(X).Ad();
    case GroupKind::IN: return In5::from_matrix(X).Ad();
    case GroupKind::IN4: return In4::from_matrix(X).Ad();
  }
  return {};
}

MatX algebra_adjoint(GroupKind g, const VecX& u) {
  switch (g) {
    case GroupKind::SO3: return skew(u);
    case GroupKind::SOT3: return ad_sot3(u);
    case GroupKind::SE3:
    case GroupKind::HG3: return ad_se3(u);
    case GroupKind::SE23: return ad_se23(u);
    case GroupKind::G3: return ad_gal3(u);
    case GroupKind::IN: return ad_in5(u);
    case GroupKind::IN4: return ad_in4(u);
  }
  return {};
}

MatX wedge(GroupKind g, const VecX& u) {
  switch (g) {
    case GroupKind::SO3: return skew(u);
    case GroupKind::SOT3: return wedge_sot3(u);
    case GroupKind::SE3:
    case GroupKind::HG3: return wedge_se3(u);
    case GroupKind::SE23: return wedge_se23(u);
    case GroupKind::G3: return wedge_gal3(u);
    case GroupKind::IN: return wedge_in5(u);
    case GroupKind::IN4: return wedge_in4(u);
  }
  return {};
}

VecX vee(GroupKind g, const MatX& U, double tol) {
  switch (g) {
    case GroupKind::SO3: return unskew_checked(U, tol);
    case GroupKind::SOT3: return vee_sot3(U, tol);
    case GroupKind::SE3:
    case GroupKind::HG3: return vee_se3(U, tol);
    case GroupKind::SE23: return vee_se23(U, tol);
    case GroupKind::G3: return vee_gal3(U, tol);
    case GroupKind::IN: return vee_in5(U, tol);
    case GroupKind::IN4: return vee_in4(U, tol);
  }
  return {};
}

SdpCoords sdp_exp(GroupKind base, const VecX& gamma_v, const VecX& zeta) {
  SdpCoords out;
  out.base = gamma_v;
  out.fiber = gamma(base, 1, gamma_v) * zeta;
  return out;
}

SdpCoords sdp_log(GroupKind base, const MatX& A, const VecX& a) {
  SdpCoords out;
  out.base = group_log_matrix(base, A);
  const MatX J = gamma(base, 1, out.base);
  Eigen::FullPivLU<MatX> lu(J);
  if (!lu.isInvertible())
    throw std::domain_error("sdp_log: left Jacobian singular (branch)");
  out.fiber = lu.solve(a);
  return out;
}

}  // namespace eqnav::lie
