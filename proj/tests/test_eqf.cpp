#include <doctest.h>

#include <random>

#include "eqnav/eqf/certify.hpp"
#include "eqnav/filters/position_filters.hpp"
#include "eqnav/sym/variants.hpp"

using namespace eqnav;
using namespace eqnav::sym;
using namespace eqnav::eqf;
using filters::InsFilterModel;
using lie::Mat3;
using lie::MatX;
using lie::SO3;
using lie::Vec3;
using lie::VecX;

namespace {

std::mt19937_64 rng(99);

VecX randn(int n, double s = 1.0) {
  std::normal_distribution<double> d(0.0, s);
  VecX v(n);
  for (int i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

MatX rand_psd(int n, double scale = 1.0) {
  MatX M(n, n);
  std::normal_distribution<double> d(0.0, scale);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = d(rng);
  return M * M.transpose() + 1e-6 * MatX::Identity(n, n);
}

Xi tg_origin() {
  Xi o;
  o.b = VecX::Zero(9);
  return o;
}

}  // namespace

TEST_CASE("propagate: zero A gives Sigma + BQB dt") {
  WorldParams world;
  SymD sym(world);
  struct ZeroModel final : FilterModel {
    MatX A0(const Symmetry& s, const EqfState&, const VecX&) const override {
      return MatX::Zero(s.dof(), s.dof());
    }
    MatX Bt(const Symmetry& s, const EqfState&, const VecX& u) const override {
      return MatX::Identity(s.dof(), u.size());
    }
  } model;
  EqfState s = make_initial(sym, tg_origin(), MatX::Identity(18, 18));
  MatX Q = MatX::Identity(18, 18);
  propagate(sym, model, s, VecX::Zero(18), 0.005, Q);
  CHECK((s.Sigma - (MatX::Identity(18, 18) * 1.005)).norm() < 1e-12);
  CHECK(s.time == doctest::Approx(0.005));
  CHECK_THROWS_AS(propagate(sym, model, s, VecX::Zero(18), 0.0, Q),
                  std::invalid_argument);
}

TEST_CASE("scalar desk check: C=1, Sigma=1, R=1, r=0.5 -> K=0.5, Sigma'=0.5") {
  WorldParams world;
  SymE sym(world);
  Xi origin;
  origin.b = VecX::Zero(6);
  EqfState s = make_initial(sym, origin, MatX::Identity(15, 15));
  OutputModel out;
  out.C = MatX::Zero(1, 15);
  out.C(0, 6) = 1.0;  // position x
  out.residual = VecX::Constant(1, 0.5);
  out.Dt = MatX::Identity(1, 1);
  out.R = MatX::Identity(1, 1);
  auto stats = update(sym, s, out);
  CHECK(stats.delta(6) == doctest::Approx(0.25));  // K r = 0.5 * 0.5
  CHECK(s.Sigma(6, 6) == doctest::Approx(0.5));
  CHECK(s.Sigma(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("zero residual: state unchanged, Sigma <- (I - KC) Sigma") {
  WorldParams world;
  SymD sym(world);
  EqfState s = make_initial(sym, tg_origin(), rand_psd(18));
  const XElem before = s.Xhat;
  OutputModel out;
  out.C = MatX::Zero(3, 18);
  out.C.block<3, 3>(0, 6) = -Mat3::Identity();
  out.residual = VecX::Zero(3);
  out.Dt = MatX::Identity(3, 3);
  out.R = 0.04 * MatX::Identity(3, 3);
  update(sym, s, out);
  CHECK(sym.state_delta(sym.phi(before, tg_origin()), sym.phi(s.Xhat, tg_origin()))
            .norm() < 1e-14);
}

TEST_CASE("update with perfect state and noiseless output is a no-op on Xhat") {
  WorldParams world;
  SymD sym(world);
  EqfState s = make_initial(sym, tg_origin(), rand_psd(18));
  s.Xhat = sym.exp(randn(18, 0.4));
  const Xi est = sym.phi(s.Xhat, s.origin);
  auto out = filters::ins_position_output(sym, s, est.T.p, Mat3::Identity());
  CHECK(out.residual.norm() < 1e-12);
  const XElem before = s.Xhat;
  update(sym, s, out);
  CHECK(sym.state_delta(sym.phi(before, s.origin), sym.phi(s.Xhat, s.origin))
            .norm() < 1e-12);
}

TEST_CASE("singular innovation covariance rejects the update") {
  WorldParams world;
  SymD sym(world);
  EqfState s = make_initial(sym, tg_origin(), MatX::Zero(18, 18));
  OutputModel out;
  out.C = MatX::Zero(3, 18);
  out.residual = VecX::Zero(3);
  out.Dt = MatX::Zero(3, 3);
  out.R = MatX::Identity(3, 3);
  CHECK_THROWS_AS(update(sym, s, out), std::runtime_error);
}

TEST_CASE("Sigma stays symmetric PSD through random propagate/update chains") {
  WorldParams world;
  SymD sym(world);
  InsFilterModel model;
  EqfState s = make_initial(sym, tg_origin(), rand_psd(18, 0.5));
  MatX Q = 0.01 * MatX::Identity(18, 18);
  for (int k = 0; k < 50; ++k) {
    propagate(sym, model, s, randn(18, 0.5), 0.01, Q);
    if (k % 5 == 0) {
      auto out = filters::ins_position_output(sym, s, randn(3, 2.0),
                                              Mat3(Mat3::Identity() * 0.04));
      update(sym, s, out,
             (k % 10 == 0) ? std::optional<double>(1.0) : std::nullopt);
    }
    CHECK((s.Sigma - s.Sigma.transpose()).norm() < 1e-9);
    Eigen::SelfAdjointEigenSolver<MatX> es(s.Sigma);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
  }
}

TEST_CASE("curvature correction is a no-op at delta=0") {
  WorldParams world;
  SymD sym(world);
  MatX G = matrix_exp(MatX(-0.5 * sym.ad(VecX::Zero(18))));
  CHECK((G - MatX::Identity(18, 18)).norm() == 0.0);
}

TEST_CASE("GCU inflation") {
  SUBCASE("r = 0 leaves S untouched") {
    MatX C = MatX::Identity(2, 2), Sig = rand_psd(2), R = rand_psd(2);
    MatX S0 = C * Sig * C.transpose() + R;
    MatX S1 = gcu_inflate(VecX::Zero(2), C, Sig, R, 0.7);
    CHECK((S1 - S0).norm() < 1e-12);
  }
  SUBCASE("scalar desk check: C=1, Sigma=1, R=1, r=3, alpha=1") {
    MatX one = MatX::Identity(1, 1);
    VecX r = VecX::Constant(1, 3.0);
    MatX Sp = gcu_inflate(r, one, one, one, 1.0);
    CHECK(Sp(0, 0) == doctest::Approx(21.0));
    CHECK(r.dot(Sp.inverse() * r) == doctest::Approx(9.0 / 21.0));
  }
  SUBCASE("alpha = 1, n >= 1 bounds the inflated NIS by 1/2") {
    for (int i = 0; i < 200; ++i) {
      int n = 1 + static_cast<int>(rng() % 5);
      MatX C = MatX::Identity(n, n);
      MatX Sig = rand_psd(n), R = rand_psd(n);
      VecX r = randn(n, 3.0);
      MatX S = C * Sig * C.transpose() + R;
      double nis = r.dot(S.ldlt().solve(r));
      if (nis < 1.0) continue;
      MatX Sp = gcu_inflate(r, C, Sig, R, 1.0);
      CHECK(r.dot(Sp.ldlt().solve(r)) <= 0.5 + 1e-12);
    }
  }
}

TEST_CASE("numeric A stays within certification bounds across step sizes") {
  WorldParams world;
  SymD sym(world);
  EqfState s = make_initial(sym, tg_origin(), MatX::Identity(18, 18));
  s.Xhat = sym.exp(randn(18, 0.4));
  VecX u = randn(18, 0.8);
  MatX A = filters::ins_state_matrix(sym, s, u);
  for (double h : {1e-7, 1e-6, 1e-5, 1e-4}) {
    MatX An = numeric_A(sym, s.origin, s.Xhat, u, h);
    CHECK(max_deviation(A, An) < 1e-4);
  }
}

TEST_CASE("zero-velocity updates on a static TG run pull |v| below 1e-3") {
  WorldParams world;
  SymD sym(world);
  Xi origin;
  origin.b = VecX::Zero(9);
  EqfState s = make_initial(sym, origin, MatX());
  // start with a wrong velocity estimate
  Xi est0 = origin;
  est0.T.v = Vec3(0.5, -0.4, 0.3);
  s.Xhat = sym.group_from_state(est0, origin);
  s.Sigma = 0.25 * MatX::Identity(18, 18);
  filters::InsFilterModel model;
  MatX Q = 1e-6 * MatX::Identity(18, 18);
  VecX u = VecX::Zero(18);
  u.segment<3>(3) = -world.gravity();  // static specific force
  for (int k = 0; k < 10; ++k) {
    propagate(sym, model, s, u, 0.01, Q);
    // zero-velocity pseudo-measurement through the numeric output chart
    const Xi est = sym.phi(s.Xhat, s.origin);
    OutputModel out;
    out.residual = -est.T.v;
    out.C = numeric_C(
        sym, s.origin, s.Xhat,
        [&](const Xi& xt) { return VecX(Vec3(xt.T.v - est.T.v)); }, 3);
    out.Dt = MatX::Identity(3, 3);
    out.R = 1e-6 * MatX::Identity(3, 3);
    update(sym, s, out);
  }
  CHECK(sym.phi(s.Xhat, s.origin).T.v.norm() < 1e-3);
}
