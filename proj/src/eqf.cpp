#include "eqnav/eqf/eqf.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <Eigen/Eigenvalues>

namespace eqnav::eqf {

MatX matrix_exp(const MatX& A) { return A.exp(); }

MatX FilterModel::Phi(const MatX& A0, double dt) const {
  return matrix_exp(MatX(A0 * dt));
}

EqfState make_initial(const Symmetry& sym, const Xi& origin,
                      const MatX& Sigma0) {
  EqfState s;
  s.Xhat = sym.identity();
  s.Sigma = Sigma0;
  s.origin = origin;
  return s;
}

void psd_repair(MatX& Sigma) {
  Sigma = 0.5 * (Sigma + Sigma.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatX> es(Sigma);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    VecX ev = es.eigenvalues().cwiseMax(0.0);
    Sigma = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  }
}

void propagate(const Symmetry& sym, const FilterModel& model, EqfState& s,
               const VecX& u, double dt, const MatX& Q) {
  if (!(dt > 0.0)) throw std::invalid_argument("propagate: dt must be positive");
  const Xi est = sym.phi(s.Xhat, s.origin);
  const VecX lam = sym.lift(est, u);
  const MatX A = model.A0(sym, s, u);
  const MatX B = model.Bt(sym, s, u);
  const MatX Phi = model.Phi(A, dt);
  s.Xhat = sym.compose(s.Xhat, sym.exp(VecX(lam * dt)));
  s.Sigma = Phi * s.Sigma * Phi.transpose() + B * Q * B.transpose() * dt;
  s.Sigma = 0.5 * (s.Sigma + s.Sigma.transpose()).eval();
  s.time += dt;
  if (!s.Sigma.allFinite() || !lam.allFinite())
    throw std::runtime_error("propagate: non-finite covariance or lift");
}

MatX gcu_inflate(const VecX& r, const MatX& C, const MatX& Sigma,
                 const MatX& R, double alpha) {
  const MatX P = C * Sigma * C.transpose();
  const MatX S = P + R;
  const double n = r.dot(S.ldlt().solve(r));
  const double beta =
      (n < 1.0) ? (1.0 + std::sqrt(n)) * (1.0 + std::sqrt(n)) / (1.0 + n) : 2.0;
  return beta * (P + alpha * r * r.transpose()) + R;
}

UpdateStats update(const Symmetry& sym, EqfState& s, const OutputModel& out,
                   std::optional<double> gcu_alpha) {
  UpdateOptions opts;
  opts.gcu_alpha = gcu_alpha;
  return update(sym, s, out, opts);
}

UpdateStats update(const Symmetry& sym, EqfState& s, const OutputModel& out,
                   const UpdateOptions& opts) {
  const std::optional<double>& gcu_alpha = opts.gcu_alpha;
  const MatX Reff = out.Dt * out.R * out.Dt.transpose();
  const MatX P = out.C * s.Sigma * out.C.transpose();
  MatX S = P + Reff;
  Eigen::LDLT<MatX> ldlt(S);
  const auto singular = [&](const Eigen::LDLT<MatX>& f) {
    const double dmax = f.vectorD().maxCoeff();
    return f.info() != Eigen::Success || !(dmax > 0.0) ||
           f.vectorD().minCoeff() <= 1e-12 * dmax;
  };
  if (singular(ldlt))
    throw std::runtime_error("update: singular innovation covariance");
  UpdateStats stats;
  stats.nis = out.residual.dot(ldlt.solve(out.residual));
  if (gcu_alpha && *gcu_alpha >= 0.0) {
    S = gcu_inflate(out.residual, out.C, s.Sigma, Reff, *gcu_alpha);
    ldlt.compute(S);
    if (singular(ldlt))
      throw std::runtime_error("update: singular inflated covariance");
  }
  const MatX K =
      s.Sigma * out.C.transpose() * ldlt.solve(MatX::Identity(S.rows(), S.cols()));
  const VecX delta = K * out.residual;
  const XElem corr = sym.err_exp(delta);
  s.Xhat = sym.compose(corr, s.Xhat);
  s.Sigma =
      (MatX::Identity(s.Sigma.rows(), s.Sigma.cols()) - K * out.C) * s.Sigma;
  // curvature correction, Cartan-Schouten (0)-connection
  if (opts.curvature_correction) {
    const MatX G = matrix_exp(MatX(-0.5 * sym.ad(sym.log(corr))));
    s.Sigma = G * s.Sigma * G.transpose();
  }
  psd_repair(s.Sigma);
  if (!s.Sigma.allFinite() || !delta.allFinite())
    throw std::runtime_error("update: non-finite result");
  stats.delta = delta;
  return stats;
}

}  // namespace eqnav::eqf
