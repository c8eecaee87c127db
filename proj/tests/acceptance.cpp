// Acceptance suite: one pass/fail line per criterion. Exits nonzero on any
// failure. Heavy Monte-Carlo sections respect EQNAV_THREADS.

#include <chrono>
#include <cstdio>
#include <random>

#include "eqnav/bench/runner.hpp"
#include "eqnav/eqf/certify.hpp"
#include "eqnav/filters/attitude_filter.hpp"
#include "eqnav/filters/position_filters.hpp"
#include "eqnav/msceqf/update.hpp"

using namespace eqnav;
using namespace eqnav::bench;
using namespace eqnav::sym;
using lie::Mat3;
using lie::MatX;
using lie::SE3;
using lie::SE23;
using lie::SO3;
using lie::Vec3;
using lie::Vec6;
using lie::Vec9;
using lie::VecX;

namespace {

int g_failures = 0;

void report(int idx, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", idx,
              what.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

std::mt19937_64 rng(12345);

VecX randn(int n, double s = 1.0) {
  std::normal_distribution<double> d(0.0, s);
  VecX v(n);
  for (int i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// -------------------------------------------------------------- criterion 1

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = certify_all(1e-4, 20, 1);
  double worst = 0.0;
  bool pass = true;
  std::string worst_name;
  for (const auto& r : rows) {
    pass = pass && r.pass;
    if (r.max_dev > worst) {
      worst = r.max_dev;
      worst_name = r.matrix;
    }
  }
  const double el = seconds_since(t0);
  pass = pass && el < 120.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%zu matrices, worst %.2e (%s), %.1f s", rows.size(), worst,
                worst_name.c_str(), el);
  report(1, pass, "matrix certification vs central-difference oracle", buf);
}

// -------------------------------------------------------------- criterion 2

void criterion_2() {
  using namespace eqnav::lie;
  const auto t0 = std::chrono::steady_clock::now();
  const GroupKind groups[] = {GroupKind::SO3,  GroupKind::SOT3, GroupKind::SE3,
                              GroupKind::HG3,  GroupKind::SE23, GroupKind::G3,
                              GroupKind::IN,   GroupKind::IN4};
  double worst_rt = 0, worst_ad = 0, worst_jac = 0, worst_q = 0;
  std::mt19937_64 lrng(2);
  auto draw = [&](int n, double s) {
    std::normal_distribution<double> d(0.0, s);
    VecX v(n);
    for (int i = 0; i < n; ++i) v(i) = d(lrng);
    if (v.head(3).norm() > 2.8) v.head(3) *= 2.8 / v.head(3).norm();
    return v;
  };
  for (int i = 0; i < 1000; ++i) {
    const GroupKind g = groups[i % 8];
    const int n = group_dim(g);
    VecX u = draw(n, 0.6);
    // exp/log round trip
    const MatX X = group_exp_matrix(g, u);
    worst_rt = std::max(worst_rt,
                        (group_log_matrix(g, X) - u).norm() / (1 + u.norm()));
    // Ad_exp = exp(ad)
    VecX w = draw(n, 0.3);
    worst_ad = std::max(
        worst_ad, (group_adjoint(g, group_exp_matrix(g, w)) -
                   eqf::matrix_exp(algebra_adjoint(g, w)))
                      .norm());
    // Jl / Jr relation
    worst_jac = std::max(
        worst_jac, (group_adjoint(g, group_exp_matrix(g, u)) *
                        gamma(g, 1, VecX(-u)) -
                    gamma(g, 1, u))
                       .norm());
    // Q1/Q2/U1 closed forms vs series
    Vec3 wv = draw(3, 0.4).head<3>(), zv = draw(3, 0.4).head<3>();
    worst_q = std::max(worst_q, (q1_so3(wv, zv) - q1_series(wv, zv)).norm());
    worst_q = std::max(worst_q, (q2_so3(wv, zv) - q2_series(wv, zv)).norm());
    worst_q = std::max(worst_q, (u1_so3(wv) - u1_series(wv)).norm());
  }
  const double el = seconds_since(t0);
  const bool pass =
      worst_rt < 1e-9 && worst_ad < 1e-9 && worst_jac < 1e-10 && worst_q < 1e-10 && el < 10.0;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "roundtrip %.1e, Ad=exp(ad) %.1e, JL/JR %.1e, Q/U %.1e, %.1f s",
                worst_rt, worst_ad, worst_jac, worst_q, el);
  report(2, pass, "group-algebra suite (1000 randomized trials)", buf);
}

// -------------------------------------------------------------- criterion 3

void criterion_3() {
  WorldParams world;
  double worst_proj = 0, worst_equiv = 0;
  std::mt19937_64 lrng(3);
  auto draw = [&](int n, double s) {
    std::normal_distribution<double> d(0.0, s);
    VecX v(n);
    for (int i = 0; i < n; ++i) v(i) = d(lrng);
    return v;
  };
  const Variant all[] = {Variant::E_SO3xR12,       Variant::F_SE23xR6,
                         Variant::C_TwoFrames,     Variant::D_TangentGroup,
                         Variant::A_DirectPosition, Variant::B_SemiDirectBias,
                         Variant::ATT_TangentSO3};
  for (Variant v : all) {
    auto sym = make_symmetry(v, world);
    for (int i = 0; i < 100; ++i) {
      Xi xi;
      xi.T = SE23(SO3::Exp(Vec3(draw(3, 0.5))), Vec3(draw(3, 1.0)),
                  Vec3(draw(3, 1.0)));
      xi.b = draw(v == Variant::D_TangentGroup ? 9 : 6, 0.3);
      if (v == Variant::ATT_TangentSO3) {
        xi.b = draw(3, 0.3);
        xi.C = {SO3::Exp(Vec3(draw(3, 0.5)))};
      }
      VecX u = draw(sym->input_dim(), 0.8);
      const VecX lam = sym->lift(xi, u);
      const double h = 1e-6;
      const Xi xp = sym->phi(sym->exp(VecX(h * lam)), xi);
      const Xi xm = sym->phi(sym->exp(VecX(-h * lam)), xi);
      const VecX dphi =
          (sym->state_delta(xi, xp) - sym->state_delta(xi, xm)) / (2 * h);
      const VecX f = sym->dynamics(xi, u);
      worst_proj = std::max(worst_proj, (dphi - f).norm() / (1 + f.norm()));
      // equivariance where provided: D, A, ATT full; B on the chi-reduced pair
      if (v == Variant::D_TangentGroup || v == Variant::A_DirectPosition ||
          v == Variant::ATT_TangentSO3) {
        XElem X = sym->exp(draw(sym->dof(), 0.5));
        const VecX lhs = sym->Ad(sym->inverse(X)) * lam;
        const VecX rhs = sym->lift(sym->phi(X, xi), sym->psi(X, u));
        worst_equiv =
            std::max(worst_equiv, (lhs - rhs).norm() / (1 + lhs.norm()));
      }
      if (v == Variant::B_SemiDirectBias) {
        XElem X = sym->exp(draw(15, 0.5));
        const SE3 Binv = lie::chi(X.D).inv();
        MatX Adr = MatX::Zero(12, 12);
        Adr.topLeftCorner<6, 6>() = Binv.Ad();
        Adr.bottomRightCorner<6, 6>() = Binv.Ad();
        Adr.bottomLeftCorner<6, 6>() =
            lie::ad_se3(VecX(-(Binv.Ad() * X.delta))) * Binv.Ad();
        VecX pair(12);
        pair.head<6>() = lie::Pi(lam.head<9>());
        pair.tail<6>() = lam.tail<6>();
        const VecX lhs = Adr * pair;
        const VecX lam2 = sym->lift(sym->phi(X, xi), sym->psi(X, u));
        VecX rhs(12);
        rhs.head<6>() = lie::Pi(lam2.head<9>());
        rhs.tail<6>() = lam2.tail<6>();
        worst_equiv =
            std::max(worst_equiv, (lhs - rhs).norm() / (1 + lhs.norm()));
      }
    }
  }
  const bool pass = worst_proj < 1e-6 && worst_equiv < 1e-9;
  char buf[120];
  std::snprintf(buf, sizeof(buf), "projection %.1e, equivariance %.1e",
                worst_proj, worst_equiv);
  report(3, pass, "lift identities (100 trials per variant)", buf);
}

// -------------------------------------------------------------- criterion 4

void criterion_4() {
  WorldParams world;
  SymD sym(world);
  bool pass = true;
  MatX ref;
  for (int i = 0; i < 50; ++i) {
    eqf::EqfState s;
    s.origin.b = VecX::Zero(9);
    s.Xhat = sym.exp(randn(18, 0.6));
    const VecX u = randn(18, 1.0);
    const MatX nav = filters::ins_state_matrix(sym, s, u).topRows(9);
    if (i == 0)
      ref = nav;
    else
      pass = pass && (nav.array() == ref.array()).all();
  }
  report(4, pass, "TG navigation rows bitwise identical across 50 states",
         pass ? "state-estimate independent" : "rows varied");
}

// -------------------------------------------------------------- criterion 5

void criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  InsMcConfig cfg;
  cfg.runs = 100;
  cfg.traj.duration = 30.0;
  cfg.imu_rate = 200.0;
  cfg.pos_rate = 10.0;
  cfg.pos_sigma = 0.2;
  cfg.init_att_sigma_deg = 20.0;
  cfg.init_pos_sigma = 1.0;
  const auto res = run_ins_montecarlo(cfg);
  const double mekf_T = res.at(Variant::E_SO3xR12).anees_ta.transient;
  bool a = true;
  double tg_T = res.at(Variant::D_TangentGroup).anees_ta.transient;
  double tg_A = res.at(Variant::D_TangentGroup).anees_ta.asymptotic;
  double best_other = 1e9;
  for (const auto& [v, r] : res) {
    if (v != Variant::E_SO3xR12) a = a && (mekf_T > r.anees_ta.transient);
    if (v != Variant::D_TangentGroup)
      best_other = std::min(best_other, std::abs(r.anees_ta.asymptotic - 1.0));
  }
  // (b) on the asymptotic ANEES with the +-0.1 tie-break
  const bool b = std::abs(tg_A - 1.0) <= best_other + 0.1;
  const bool c = tg_T >= 0.8 && tg_T <= 2.0;
  const double el = seconds_since(t0);
  const bool pass = a && b && c && el < 600.0;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "MEKF T=%.2f worst:%s | TG |A-1|=%.3f vs best-other %.3f | TG "
                "T=%.2f in [0.8,2] | %.0f s",
                mekf_T, a ? "yes" : "no", std::abs(tg_A - 1.0), best_other,
                tg_T, el);
  report(5, pass, "Monte-Carlo consistency ordering (6 filters, 100 runs)", buf);
}

// -------------------------------------------------------------- criterion 6

void criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  AttMcConfig cfg;
  cfg.runs = 50;
  cfg.traj.duration = 20.0;
  cfg.init_att_sigma_deg = 10.0;
  cfg.calib_prior_deg = 25.0;
  cfg.mag_rate = 100.0;
  cfg.mag_sigma = 0.2;
  cfg.gnss_rate = 20.0;
  cfg.gnss_sigma = 0.1;
  cfg.traj.yaw_amplitude = 1.5;
  cfg.traj.yaw_frequency = 0.375;
  cfg.traj.pitch_amplitude = 0.625;
  cfg.traj.roll_amplitude = 0.5;
  const auto res = run_att_montecarlo(cfg);
  const auto& eq = res.at(Variant::ATT_TangentSO3);
  const auto& ik = res.at(Variant::ATT_Direct);
  const bool trans = eq.att_ta.transient <= ik.att_ta.transient;
  const bool asym =
      std::abs(eq.att_ta.asymptotic - ik.att_ta.asymptotic) <=
      0.1 * std::max(eq.att_ta.asymptotic, ik.att_ta.asymptotic);
  const double el = seconds_since(t0);
  const bool pass = trans && asym && el < 300.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "EqF T=%.3f vs IEKF T=%.3f deg; A %.3f vs %.3f; %.0f s",
                eq.att_ta.transient, ik.att_ta.transient, eq.att_ta.asymptotic,
                ik.att_ta.asymptotic, el);
  report(6, pass, "attitude transient ordering (50 runs)", buf);
}

// -------------------------------------------------------------- criterion 7

void criterion_7() {
  WorldParams world;
  bool pass = true;
  double r_star_pos = 0, r_zero_pos = 0, r_star_zvu = 0, r_zero_zvu = 0;
  // position output, variant D
  {
    SymD sym(world);
    eqf::EqfState s;
    s.origin.b = VecX::Zero(9);
    s.Xhat = sym.exp(randn(18, 0.4));
    const VecX dir = randn(18, 1.0).normalized();
    auto defect = [&](double scale, bool star) {
      const Xi xt = sym.phi(s.Xhat, sym.phi(sym.exp(VecX(scale * dir)), s.origin));
      const Vec3 pi_raw = xt.T.p;  // noiseless measurement
      const auto out = filters::ins_position_output(sym, s, pi_raw, Mat3::Identity());
      const MatX C = star ? out.C : filters::ins_position_C0(sym, s, pi_raw);
      return (out.residual - C * (scale * dir)).norm();
    };
    const double s0 = 0.08;
    r_star_pos = defect(s0, true) / defect(s0 / 2, true);
    r_zero_pos = defect(s0, false) / defect(s0 / 2, false);
    pass = pass && r_star_pos > 6.0 && r_star_pos < 10.0;
    pass = pass && r_zero_pos > 3.0 && r_zero_pos < 5.0;
  }
  // ZVU output on the VINS symmetry. In the log_SE2(3) chart the
  // equivariant residual delta(rho(Xhat^-1, y)) = log(exp(eps_T)) is exactly
  // linear, so its defect sits at machine precision (stronger than the
  // third-order bound); the non-equivariant route shows the second-order
  // ratio.
  double zvu_exact = 0;
  {
    SymVins sym(world);
    eqf::EqfState s;
    s.origin.b = VecX::Zero(6);
    s.origin.T = SE23(SO3::Exp(Vec3(randn(3, 0.3))), Vec3(randn(3, 0.5)),
                      Vec3(randn(3, 0.5)));
    s.Xhat = sym.exp(randn(25, 0.3));
    const VecX dir = randn(25, 1.0).normalized();
    auto equivariant_defect = [&](double scale) {
      const Xi xt = sym.phi(s.Xhat, sym.phi(sym.exp(VecX(scale * dir)), s.origin));
      const SE23 y(xt.T.R, xt.T.v, xt.T.p);
      const Vec9 r = (s.origin.T.inv() * y * s.Xhat.D.inv()).log();
      MatX C = MatX::Zero(9, 25);
      C.leftCols(9) = MatX::Identity(9, 9);
      return (VecX(r) - C * (scale * dir)).norm();
    };
    // non-equivariant residual delta(y) - delta(h(xi_hat)) with its numeric
    // first-order C
    const Xi est = sym.phi(s.Xhat, s.origin);
    auto r0 = [&](const VecX& eps) -> Vec9 {
      const Xi xt = sym.phi(s.Xhat, sym.phi(sym.exp(eps), s.origin));
      const SE23 y(xt.T.R, xt.T.v, xt.T.p);
      return Vec9((s.origin.T.inv() * y).log() -
                  (s.origin.T.inv() * est.T).log());
    };
    MatX C0 = MatX::Zero(9, 25);
    const double h = 1e-6;
    for (int i = 0; i < 25; ++i) {
      VecX e = VecX::Zero(25);
      e(i) = h;
      const Vec9 rp = r0(e);
      e(i) = -h;
      const Vec9 rm = r0(e);
      C0.col(i) = (rp - rm) / (2.0 * h);
    }
    auto zero_defect = [&](double scale) {
      return (VecX(r0(VecX(scale * dir))) - C0 * (scale * dir)).norm();
    };
    const double s0 = 0.08;
    zvu_exact = std::max(equivariant_defect(s0), equivariant_defect(s0 / 2));
    r_star_zvu = zvu_exact;
    r_zero_zvu = zero_defect(s0) / zero_defect(s0 / 2);
    pass = pass && zvu_exact < 1e-10;
    pass = pass && r_zero_zvu > 3.0 && r_zero_zvu < 5.0;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "pos: C* ratio %.2f, C0 %.2f | zvu: C* defect %.1e (exact), C0 ratio %.2f",
                r_star_pos, r_zero_pos, r_star_zvu, r_zero_zvu);
  report(7, pass, "C* third-order vs C0 second-order halving ratios", buf);
}

// -------------------------------------------------------------- criterion 8

void criterion_8() {
  const auto t0 = std::chrono::steady_clock::now();
  WorldParams world;
  bool pass = true;
  // noiseless triangulation over an 11-clone window of 50 landmarks
  {
    SymVins sym(world);
    msceqf::MsceqfState st;
    st.max_clones = 11;
    st.core = eqf::make_initial(sym, [] {
      Xi o;
      o.b = VecX::Zero(6);
      return o;
    }(), MatX::Identity(25, 25));
    sim::TrajectoryParams tp;
    tp.duration = 1.2;
    const SE3 S_cam(SO3(), Vec3(0.05, -0.02, 0.01));
    auto lms = sim::make_landmarks(50, Vec3(-4, -4, 2.5), Vec3(4, 4, 5.5), 9);
    auto frames = sim::synthesize_bearings(tp, world, 10.0, 0.0, 9, 0, lms,
                                           S_cam, 0.2);
    std::vector<SE3> clones;
    for (const auto& f : frames) {
      if ((int)clones.size() >= 11) break;
      const auto ts = sim::analytic_trajectory(tp, world, f.t);
      clones.push_back(SE3(SO3(ts.R), ts.p) * S_cam);
    }
    double worst_tri = 0, worst_inv = 0;
    int used = 0;
    for (int id = 0; id < 50; ++id) {
      msceqf::FeatureTrack tr;
      tr.id = id;
      for (size_t fi = 0; fi < clones.size(); ++fi) {
        for (size_t j = 0; j < frames[fi].ids.size(); ++j)
          if (frames[fi].ids[j] == id) {
            tr.clone_idx.push_back(static_cast<int>(fi));
            tr.uv.push_back(frames[fi].uv[j]);
          }
      }
      if (tr.uv.size() < 4) continue;
      ++used;
      const Vec3 pa_true = clones[tr.clone_idx[0]].inv() * lms[id];
      const Vec3 est = msceqf::triangulate_linear(tr, clones);
      worst_tri = std::max(worst_tri, (est - pa_true).norm());
      // nullspace residual invariance on the filter state
      msceqf::MsceqfState stt = st;
      stt.clones = clones;
      stt.clone_times.assign(clones.size(), 0.0);
      stt.core.Sigma = MatX::Identity(stt.dim(), stt.dim());
      msceqf::CameraModel cam;
      cam.K0 = lie::In4();
      auto f = msceqf::AnchoredFeature::from_point(pa_true,
                                                   msceqf::FeatureParam::Euclidean);
      f.anchor_clone = tr.clone_idx[0];
      auto jac = msceqf::feature_jacobians(stt, cam, tr, f);
      auto fp = f;
      fp.z += randn(3, 1e-6);
      auto jac2 = msceqf::feature_jacobians(stt, cam, tr, fp);
      auto red2 = msceqf::nullspace_marginalize(jac2.Ct, jac2.Cf, jac2.r);
      worst_inv = std::max(worst_inv, red2.r.norm());
      (void)jac;
    }
    pass = pass && used >= 30 && worst_tri < 1e-8 && worst_inv < 1e-9;
    std::printf("      [8a] %d tracks, triangulation %.2e, projected residual %.2e\n",
                used, worst_tri, worst_inv);
  }
  // full filter with 1 px noise: pose ANEES in [0.5, 2.0] over 25 runs
  VinsMcConfig cfg;
  cfg.runs = 25;
  cfg.traj.duration = 20.0;
  cfg.pixel_sigma = 1.0;
  const auto res = run_vins_montecarlo(cfg);
  const double m = mean(res.anees.value);
  pass = pass && m >= 0.5 && m <= 2.0;
  const double el = seconds_since(t0);
  pass = pass && el < 300.0;
  char buf[120];
  std::snprintf(buf, sizeof(buf), "pose ANEES mean %.3f, %.0f s", m, el);
  report(8, pass, "MSCEqF pipeline closure", buf);
}

// -------------------------------------------------------------- criterion 9

void criterion_9() {
  VinsMcConfig cfg;
  cfg.runs = 1;
  cfg.traj.duration = 10.0;
  const auto a = run_vins_single(cfg, 0);
  cfg.ref_yaw = 1.234;
  cfg.ref_translation = Vec3(5.0, -3.0, 2.0);
  const auto b = run_vins_single(cfg, 0);
  double dmax = 0.0;
  for (size_t k = 0; k < a.pose_eps.size(); ++k)
    dmax = std::max(dmax, (a.pose_eps[k] - b.pose_eps[k]).norm());
  char buf[80];
  std::snprintf(buf, sizeof(buf), "max pose-error difference %.2e", dmax);
  report(9, dmax <= 1e-9, "consistency under yaw+translation reference change",
         buf);
}

// ------------------------------------------------------------- criterion 10

void criterion_10() {
  bool pass = true;
  double worst = 0.0;
  std::mt19937_64 lrng(10);
  auto draw_psd = [&](int n) {
    std::normal_distribution<double> d(0.0, 1.0);
    MatX M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = d(lrng);
    return MatX(M * M.transpose() + 1e-6 * MatX::Identity(n, n));
  };
  int tested = 0;
  for (int i = 0; i < 1000; ++i) {
    const int n = 1 + static_cast<int>(lrng() % 5);
    const MatX C = MatX::Identity(n, n);
    const MatX Sig = draw_psd(n), R = draw_psd(n);
    std::normal_distribution<double> d(0.0, 2.0);
    VecX r(n);
    for (int k = 0; k < n; ++k) r(k) = d(lrng);
    const MatX S = C * Sig * C.transpose() + R;
    if (r.dot(S.ldlt().solve(r)) < 1.0) continue;
    ++tested;
    const MatX Sp = eqf::gcu_inflate(r, C, Sig, R, 1.0);
    worst = std::max(worst, r.dot(Sp.ldlt().solve(r)));
  }
  pass = pass && worst <= 0.5 + 1e-12 && tested > 400;
  // alpha = 0, r = 0 leaves S' = S
  const MatX Sig = draw_psd(3), R = draw_psd(3);
  const MatX S0 = Sig + R;
  const MatX S1 = eqf::gcu_inflate(VecX::Zero(3), MatX::Identity(3, 3), Sig, R, 0.0);
  pass = pass && (S1 - S0).norm() < 1e-12;
  char buf[100];
  std::snprintf(buf, sizeof(buf), "max inflated NIS %.4f over %d instances",
                worst, tested);
  report(10, pass, "GCU bound r'S'^-1 r <= 1/2 for alpha=1, n>=1", buf);
}

// ------------------------------------------------------------- criterion 11

void criterion_11() {
  WorldParams world;
  bool pass = true;
  double worst_att = 0.0;
  {
    SymAtt sym(world, 1);
    std::vector<filters::DirectionSensor> dirs(1);
    dirs[0] = {Vec3::UnitZ(), true, 0};
    for (int i = 0; i < 30; ++i) {
      eqf::EqfState s;
      s.origin.b = VecX::Zero(3);
      s.origin.C = {SO3()};
      s.Xhat = sym.exp(randn(9, 0.5));
      const Vec3 om0 = randn(3, 2.0);
      const MatX A = filters::attitude_matrices(sym, s, om0, dirs).A0;
      worst_att = std::max(
          worst_att, (filters::attitude_phi_closed_form(om0, 0.005) -
                      eqf::matrix_exp(MatX(A * 0.005)))
                         .norm());
    }
    pass = pass && worst_att <= 1e-9;
  }
  double ratio = 0.0;
  {
    SymVins sym(world);
    eqf::EqfState s;
    s.origin.b = VecX::Zero(6);
    s.origin.T = SE23(SO3::Exp(Vec3(randn(3, 0.3))), Vec3(randn(3, 0.5)),
                      Vec3(randn(3, 0.5)));
    s.Xhat = sym.exp(randn(25, 0.4));
    VecX u = VecX::Zero(22);
    u.head(12) = randn(12, 0.8);
    const MatX A = msceqf::msceqf_A(sym, s, u);
    auto defect = [&](double dT) {
      return (msceqf::msceqf_Phi(A, dT) - eqf::matrix_exp(MatX(A * dT))).norm();
    };
    ratio = defect(0.02) / defect(0.01);
    pass = pass && ratio > 6.0 && ratio < 10.0;
  }
  char buf[100];
  std::snprintf(buf, sizeof(buf), "attitude |Phi-exp| %.2e; msceqf ratio %.2f",
                worst_att, ratio);
  report(11, pass, "state-transition orders", buf);
}

// ------------------------------------------------------------- criterion 12

void criterion_12() {
  const double dev = static_yaw_drift(60.0, 0.35);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "max yaw deviation %.2e rad", dev);
  report(12, dev <= 1e-6, "static-scenario yaw constancy over 60 s", buf);
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_7();
  criterion_10();
  criterion_11();
  criterion_12();
  criterion_9();
  criterion_6();
  criterion_8();
  criterion_5();
  std::printf("%s: %d failure(s), %.0f s total\n",
              g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              g_failures, seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
