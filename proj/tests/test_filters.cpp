#include <doctest.h>

#include <random>

#include "eqnav/eqf/certify.hpp"
#include "eqnav/filters/attitude_filter.hpp"
#include "eqnav/filters/ms21_filter.hpp"
#include "eqnav/filters/position_filters.hpp"
#include "eqnav/sym/variants.hpp"

using namespace eqnav;
using namespace eqnav::filters;
using namespace eqnav::sym;
using lie::Mat3;
using lie::MatX;
using lie::SE3;
using lie::SE23;
using lie::SO3;
using lie::Vec3;
using lie::VecX;

namespace {

std::mt19937_64 rng(7);

VecX randn(int n, double s = 1.0) {
  std::normal_distribution<double> d(0.0, s);
  VecX v(n);
  for (int i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

Vec3 randn3(double s = 1.0) { return randn(3, s); }

Xi identity_origin(Variant v) {
  Xi o;
  o.b = VecX::Zero(v == Variant::D_TangentGroup ? 9 : 6);
  if (v == Variant::ATT_TangentSO3 || v == Variant::ATT_Direct) {
    o.b = VecX::Zero(3);
    o.C = {SO3()};
  }
  if (v == Variant::MS21_ArduPilot) o.C = {SO3()};
  return o;
}

eqf::EqfState rand_filter_state(const Symmetry& sym, bool random_origin = false) {
  eqf::EqfState s;
  s.origin = identity_origin(sym.variant());
  if (random_origin) {
    s.origin.T = SE23(SO3::Exp(randn3(0.5)), randn3(1.0), randn3(1.0));
    s.origin.b = randn(s.origin.b.size(), 0.2);
  }
  s.Xhat = sym.exp(randn(sym.dof(), 0.5));
  s.Sigma = MatX::Identity(sym.dof(), sym.dof());
  return s;
}

const Variant kInsVariants[] = {Variant::E_SO3xR12,        Variant::F_SE23xR6,
                                Variant::C_TwoFrames,      Variant::D_TangentGroup,
                                Variant::A_DirectPosition, Variant::B_SemiDirectBias};

}  // namespace

TEST_CASE("INS A0 matrices match the numerical-differentiation oracle") {
  WorldParams world;
  for (Variant v : kInsVariants) {
    CAPTURE(variant_name(v));
    auto sym = make_symmetry(v, world);
    for (int i = 0; i < 20; ++i) {
      auto s = rand_filter_state(*sym);
      VecX u = randn(sym->input_dim(), 0.8);
      MatX A = ins_state_matrix(*sym, s, u);
      MatX An = eqf::numeric_A(*sym, s.origin, s.Xhat, u);
      CHECK(eqf::max_deviation(A, An) < 1e-5);
    }
  }
}

TEST_CASE("TG generic-origin A0 matches the oracle") {
  WorldParams world;
  SymD sym(world);
  for (int i = 0; i < 20; ++i) {
    auto s = rand_filter_state(sym, true);
    VecX u = randn(18, 0.8);
    MatX A = ins_state_matrix(sym, s, u);
    MatX An = eqf::numeric_A(sym, s.origin, s.Xhat, u);
    CHECK(eqf::max_deviation(A, An) < 1e-5);
  }
}

TEST_CASE("INS B matrices match the oracle") {
  WorldParams world;
  for (Variant v : kInsVariants) {
    CAPTURE(variant_name(v));
    auto sym = make_symmetry(v, world);
    for (int i = 0; i < 20; ++i) {
      auto s = rand_filter_state(*sym);
      VecX u = randn(sym->input_dim(), 0.8);
      MatX B = ins_input_matrix(*sym, s, u);
      MatX Bn = eqf::numeric_B(*sym, s.origin, s.Xhat, u);
      CHECK(eqf::max_deviation(B, Bn) < 1e-5);
    }
  }
}

TEST_CASE("position C matrices match the numerical residual differential") {
  WorldParams world;
  for (Variant v : kInsVariants) {
    CAPTURE(variant_name(v));
    auto sym = make_symmetry(v, world);
    for (int i = 0; i < 20; ++i) {
      auto s = rand_filter_state(*sym);
      // noiseless measurement from the perturbed true state
      auto residual_fn = [&](const Xi& xi_true) -> VecX {
        const Vec3 pi = xi_true.T.p;  // raw position measurement
        return ins_position_output(*sym, s, pi, Mat3::Identity()).residual;
      };
      // analytic C at the given raw measurement (true state = estimate here
      // pins the linearization point the C* formula evaluates at)
      const Xi est = sym->phi(s.Xhat, s.origin);
      MatX C = ins_position_output(*sym, s, est.T.p, Mat3::Identity()).C;
      MatX Cn = eqf::numeric_C(*sym, s.origin, s.Xhat, residual_fn, 3);
      CHECK(eqf::max_deviation(C, Cn) < 1e-5);
    }
  }
}

TEST_CASE("TG A0 spot values and structural exactness") {
  WorldParams world;
  SymD sym(world);
  MatX nav_block_ref;
  for (int i = 0; i < 50; ++i) {
    auto s = rand_filter_state(sym);
    VecX u = randn(18, 1.0);
    MatX A = ins_state_matrix(sym, s, u);
    // nav rows: [[0,0,0],[g^,0,0],[0,I,0]] with identity coupling to bias
    MatX nav(9, 18);
    nav << A.topRows(9);
    if (i == 0) nav_block_ref = nav;
    // bitwise equality across random filter states
    CHECK((nav.array() == nav_block_ref.array()).all());
  }
  // and the pattern itself
  MatX expect = MatX::Zero(9, 18);
  expect.block<3, 3>(3, 0) = lie::skew(world.gravity());
  expect.block<3, 3>(6, 3) = Mat3::Identity();
  expect.block(0, 9, 9, 9) = MatX::Identity(9, 9);
  CHECK((nav_block_ref - expect).norm() == 0.0);
}

TEST_CASE("MEKF A0 spot value at identity") {
  WorldParams world;
  SymE sym(world);
  eqf::EqfState s;
  s.origin = identity_origin(Variant::E_SO3xR12);
  s.Xhat = sym.identity();
  VecX u = VecX::Zero(12);
  u.segment<3>(3) = Vec3(0.5, -0.2, 9.81);
  MatX A = ins_state_matrix(sym, s, u);
  CHECK((A.block<3, 3>(0, 9) + Mat3::Identity()).norm() == 0.0);
  CHECK((A.block<3, 3>(3, 0) + lie::skew(Vec3(0.5, -0.2, 9.81))).norm() < 1e-14);
}

TEST_CASE("position C spot patterns") {
  WorldParams world;
  SymD tg(world);
  eqf::EqfState s;
  s.origin = identity_origin(Variant::D_TangentGroup);
  s.Xhat = tg.identity();
  s.Sigma = MatX::Identity(18, 18);
  auto out = ins_position_output(tg, s, Vec3::Zero(), Mat3::Identity());
  CHECK(out.C.block<3, 3>(0, 0).norm() == 0.0);  // y = p_hat = 0
  CHECK((out.C.block<3, 3>(0, 6) + Mat3::Identity()).norm() == 0.0);
  CHECK(out.C.rightCols(9).norm() == 0.0);

  SymE mekf(world);
  auto s2 = rand_filter_state(mekf);
  auto o1 = ins_position_output(mekf, s2, randn3(), Mat3::Identity());
  auto o2 = ins_position_output(mekf, s2, randn3(), Mat3::Identity());
  CHECK((o1.C - o2.C).norm() == 0.0);  // MEKF rows independent of y
}

TEST_CASE("bnu constraint output") {
  WorldParams world;
  SymD sym(world);
  for (int i = 0; i < 10; ++i) {
    auto s = rand_filter_state(sym);
    auto out = bnu_constraint_output(sym, s, Mat3::Identity());
    auto residual_fn = [&](const Xi& xi_true) -> VecX {
      // y = true b_nu, r = y - bnu_hat
      const Xi est = sym.phi(s.Xhat, s.origin);
      return VecX(Vec3(xi_true.b.tail<3>()) - Vec3(est.b.tail<3>()));
    };
    MatX Cn = eqf::numeric_C(sym, s.origin, s.Xhat, residual_fn, 3);
    CHECK(eqf::max_deviation(out.C, Cn) < 1e-5);
  }
}

TEST_CASE("attitude matrices vs oracle and spot values") {
  WorldParams world;
  SymAtt sym(world, 1);
  std::vector<DirectionSensor> dirs(2);
  dirs[0] = {Vec3(0.2, -0.4, 0.89).normalized(), true, 0};
  dirs[1] = {Vec3(0.9, 0.1, -0.42).normalized(), false, -1};

  SUBCASE("A0 via oracle") {
    for (int i = 0; i < 20; ++i) {
      auto s = rand_filter_state(sym);
      VecX u = randn(3, 1.0);
      const Vec3 omega0 = sym.psi(sym.inverse(s.Xhat), u);
      MatX A = attitude_matrices(sym, s, omega0, dirs).A0;
      MatX An = eqf::numeric_A(sym, s.origin, s.Xhat, u);
      CHECK(eqf::max_deviation(A, An) < 1e-6);
    }
  }
  SUBCASE("A0 zero-input pattern") {
    auto s = rand_filter_state(sym);
    MatX A = attitude_matrices(sym, s, Vec3::Zero(), dirs).A0;
    MatX expect = MatX::Zero(9, 9);
    expect.block<3, 3>(0, 3) = -Mat3::Identity();
    CHECK((A - expect).norm() == 0.0);
  }
  SUBCASE("B via oracle") {
    for (int i = 0; i < 20; ++i) {
      auto s = rand_filter_state(sym);
      VecX u = randn(3, 1.0);
      const Vec3 omega0 = sym.psi(sym.inverse(s.Xhat), u);
      MatX B = attitude_matrices(sym, s, omega0, dirs).Bt;
      MatX Bn = eqf::numeric_B(sym, s.origin, s.Xhat, u);
      // input maps only to the first block column
      CHECK(eqf::max_deviation(MatX(B.leftCols(3)), Bn) < 1e-6);
    }
  }
  SUBCASE("C0 via oracle, calibrated-only sensor has zero calib column") {
    for (int i = 0; i < 20; ++i) {
      auto s = rand_filter_state(sym);
      MatX C = attitude_matrices(sym, s, Vec3::Zero(), dirs).C0;
      CHECK(C.block(3, 6, 3, 3).norm() == 0.0);
      auto residual_fn = [&](const Xi& xi_true) -> VecX {
        VecX r(6);
        Vec3 y0 = xi_true.C[0].R.transpose() * xi_true.T.R.R.transpose() * dirs[0].d;
        Vec3 y1 = xi_true.T.R.R.transpose() * dirs[1].d;
        r.head<3>() = dirs[0].d.cross(Vec3(s.Xhat.B[0].R * y0));
        r.tail<3>() = dirs[1].d.cross(Vec3(s.Xhat.D.R.R * y1));
        return r;
      };
      MatX Cn = eqf::numeric_C(sym, s.origin, s.Xhat, residual_fn, 6);
      CHECK(eqf::max_deviation(C, Cn) < 1e-6);
    }
  }
}

TEST_CASE("attitude closed-form Phi") {
  SUBCASE("omega0 = 0 leading terms") {
    MatX Phi = attitude_phi_closed_form(Vec3::Zero(), 0.01);
    CHECK((Phi.block<3, 3>(0, 3) + 0.01 * Mat3::Identity()).norm() < 1e-15);
    CHECK((Phi.block<3, 3>(3, 3) - Mat3::Identity()).norm() < 1e-15);
  }
  SUBCASE("equals exp(A0 dt)") {
    WorldParams world;
    SymAtt sym(world, 1);
    std::vector<DirectionSensor> dirs(1);
    dirs[0] = {Vec3::UnitZ(), true, 0};
    for (int i = 0; i < 30; ++i) {
      Vec3 omega0 = randn3(2.0);
      auto s = rand_filter_state(sym);
      MatX A = attitude_matrices(sym, s, omega0, dirs).A0;
      MatX Phi = attitude_phi_closed_form(omega0, 0.005);
      CHECK((Phi - eqf::matrix_exp(MatX(A * 0.005))).norm() < 1e-9);
    }
  }
  SUBCASE("continuity across the small-angle threshold") {
    const double dt = 0.005;
    const double n_at = lie::kSmallAngle / dt;
    Vec3 axis = Vec3(1, 2, -1).normalized();
    MatX below = attitude_phi_closed_form(axis * (n_at * (1.0 - 1e-9)), dt);
    MatX above = attitude_phi_closed_form(axis * (n_at * (1.0 + 1e-9)), dt);
    CHECK((below - above).norm() < 1e-8);
  }
}

TEST_CASE("gnss_direction") {
  CHECK((gnss_direction(Vec3(0, 1, 0), Vec3::Zero()) - Vec3(0, 1, 0)).norm() == 0.0);
  for (int i = 0; i < 20; ++i) {
    Vec3 p1 = randn3(5.0), p2 = randn3(5.0);
    if ((p1 - p2).norm() < 1e-5) continue;
    Vec3 d = gnss_direction(p1, p2);
    CHECK(std::abs(d.norm() - 1.0) < 1e-14);
    CHECK((gnss_direction(p2, p1) + d).norm() < 1e-14);
  }
  CHECK_THROWS_AS(gnss_direction(Vec3::Zero(), Vec3::Zero()), std::domain_error);
}

TEST_CASE("MS21 A0 and B vs oracle") {
  WorldParams world;
  SymMs21 sym(world);
  for (int i = 0; i < 20; ++i) {
    auto s = rand_filter_state(sym);
    VecX u = randn(18, 0.8);
    MatX A = ms21_state_matrix(sym, s, u);
    MatX An = eqf::numeric_A(sym, s.origin, s.Xhat, u);
    CHECK(eqf::max_deviation(A, An) < 1e-4);
    MatX B = ms21_input_matrix(sym, s, u);
    MatX Bn = eqf::numeric_B(sym, s.origin, s.Xhat, u);
    CHECK(eqf::max_deviation(B, Bn) < 1e-4);
  }
}

TEST_CASE("MS21 A0 spot values at identity") {
  WorldParams world;
  SymMs21 sym(world);
  eqf::EqfState s;
  s.origin = identity_origin(Variant::MS21_ArduPilot);
  s.Xhat = sym.identity();
  MatX A = ms21_state_matrix(sym, s, VecX::Zero(18));
  // 3A = 0 at identity/zero input; the mag row keeps the I3 coupling to bw
  CHECK(A.block<3, 3>(15, 0).norm() == 0.0);
  CHECK(A.block<3, 3>(15, 15).norm() == 0.0);
  CHECK((A.block<3, 3>(18, 9) - Mat3::Identity()).norm() == 0.0);
  CHECK(A.block<3, 3>(18, 18).norm() == 0.0);
}

TEST_CASE("MS21 output matrices vs oracle") {
  WorldParams world;
  SymMs21 sym(world);
  const Vec3 m_world = Vec3(0.3, -0.1, 0.95).normalized();
  for (int i = 0; i < 20; ++i) {
    auto s = rand_filter_state(sym);
    const Xi est = sym.phi(s.Xhat, s.origin);

    SUBCASE("position") {
      const Vec3 pred = est.T.p + est.T.R.R * est.t;
      auto out = ms21_position_output(sym, s, pred, Mat3::Identity());
      auto residual_fn = [&](const Xi& xt) -> VecX {
        const Vec3 pi = xt.T.p + xt.T.R.R * xt.t;
        return ms21_position_output(sym, s, pi, Mat3::Identity()).residual;
      };
      MatX Cn = eqf::numeric_C(sym, s.origin, s.Xhat, residual_fn, 3);
      CHECK(eqf::max_deviation(out.C, Cn) < 1e-4);
      // innovation-relevant blocks
      CHECK((out.C.block<3, 3>(0, 6) + Mat3::Identity()).norm() == 0.0);
      CHECK((out.C.block<3, 3>(0, 15) - Mat3::Identity()).norm() == 0.0);
    }
    SUBCASE("velocity") {
      const Vec3 omega = randn3(1.0);
      const Vec3 pred = est.T.v + est.T.R.R * omega.cross(est.t);
      auto out = ms21_velocity_output(sym, s, pred, omega, Mat3::Identity());
      auto residual_fn = [&](const Xi& xt) -> VecX {
        const Vec3 nu = xt.T.v + xt.T.R.R * omega.cross(xt.t);
        return ms21_velocity_output(sym, s, nu, omega, Mat3::Identity()).residual;
      };
      MatX Cn = eqf::numeric_C(sym, s.origin, s.Xhat, residual_fn, 3);
      CHECK(eqf::max_deviation(out.C, Cn) < 1e-4);
    }
    SUBCASE("direction") {
      const Vec3 yhat = est.C[0].R.transpose() * est.T.R.R.transpose() * m_world;
      auto out = ms21_direction_output(sym, s, m_world, yhat, Mat3::Identity());
      auto residual_fn = [&](const Xi& xt) -> VecX {
        const Vec3 y = xt.C[0].R.transpose() * xt.T.R.R.transpose() * m_world;
        return ms21_direction_output(sym, s, m_world, y, Mat3::Identity()).residual;
      };
      MatX Cn = eqf::numeric_C(sym, s.origin, s.Xhat, residual_fn, 3);
      CHECK(eqf::max_deviation(out.C, Cn) < 1e-4);
    }
  }
}
