#include "eqnav/bench/runner.hpp"

#include <cstdlib>
#include <thread>

#include "eqnav/eqf/certify.hpp"
#include "eqnav/filters/attitude_filter.hpp"
#include "eqnav/filters/ms21_filter.hpp"
#include "eqnav/filters/position_filters.hpp"
#include "eqnav/msceqf/hybrid.hpp"

namespace eqnav::bench {

using namespace eqnav::lie;
using namespace eqnav::sym;
using eqnav::eqf::EqfState;
using eqnav::eqf::OutputModel;
using sim::Rng;

int worker_count() {
  if (const char* env = std::getenv("EQNAV_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 4;
}

namespace {

void parallel_runs(int runs, const std::function<void(int)>& body) {
  const int workers = std::min(worker_count(), runs);
  if (workers <= 1) {
    for (int r = 0; r < runs; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int r = next.fetch_add(1); r < runs; r = next.fetch_add(1)) body(r);
    });
  }
  for (auto& th : pool) th.join();
}

double geodesic_deg(const Mat3& Ra, const Mat3& Rb) {
  const double c = std::clamp((Ra.transpose() * Rb).trace() * 0.5 - 0.5, -1.0, 1.0);
  return std::acos(c) * 180.0 / M_PI;
}

// Variant input vector from an IMU sample.
VecX build_input(Variant v, const Vec3& w, const Vec3& a) {
  switch (v) {
    case Variant::D_TangentGroup: {
      VecX u = VecX::Zero(18);
      u.head<3>() = w;
      u.segment<3>(3) = a;
      return u;
    }
    case Variant::A_DirectPosition: {
      VecX u = VecX::Zero(15);
      u.head<3>() = w;
      u.segment<3>(3) = a;
      return u;
    }
    default: {
      VecX u = VecX::Zero(12);
      u.head<3>() = w;
      u.segment<3>(3) = a;
      return u;
    }
  }
}

MatX build_Q(Variant v, const InsMcConfig& cfg) {
  const double w2 = cfg.noise.sigma_w * cfg.noise.sigma_w;
  const double a2 = cfg.noise.sigma_a * cfg.noise.sigma_a;
  const double bw2 = cfg.noise.sigma_bw * cfg.noise.sigma_bw;
  const double ba2 = cfg.noise.sigma_ba * cfg.noise.sigma_ba;
  VecX d;
  switch (v) {
    case Variant::D_TangentGroup:
      d = VecX(18);
      d << w2, w2, w2, a2, a2, a2, 0, 0, 0, bw2, bw2, bw2, ba2, ba2, ba2,
          cfg.bnu_walk_sigma * cfg.bnu_walk_sigma,
          cfg.bnu_walk_sigma * cfg.bnu_walk_sigma,
          cfg.bnu_walk_sigma * cfg.bnu_walk_sigma;
      break;
    case Variant::A_DirectPosition:
      d = VecX(15);
      d << w2, w2, w2, a2, a2, a2, bw2, bw2, bw2, ba2, ba2, ba2, 0, 0, 0;
      break;
    default:
      d = VecX(12);
      d << w2, w2, w2, a2, a2, a2, bw2, bw2, bw2, ba2, ba2, ba2;
      break;
  }
  return MatX(d.asDiagonal());
}

// Physical initial covariance in the variant's retract layout.
MatX build_P0(Variant v, const InsMcConfig& cfg) {
  const double att = std::pow(cfg.init_att_sigma_deg * M_PI / 180.0, 2);
  const double vel = cfg.init_vel_sigma * cfg.init_vel_sigma;
  const double pos = cfg.init_pos_sigma * cfg.init_pos_sigma;
  const double bw = cfg.init_bw_sigma * cfg.init_bw_sigma;
  const double ba = cfg.init_ba_sigma * cfg.init_ba_sigma;
  const double bnu = cfg.bnu_prior_sigma * cfg.bnu_prior_sigma;
  VecX d;
  switch (v) {
    case Variant::D_TangentGroup:
      d = VecX(18);
      d << att, att, att, vel, vel, vel, pos, pos, pos, bw, bw, bw, ba, ba, ba,
          bnu, bnu, bnu;
      break;
    case Variant::A_DirectPosition:
      d = VecX(15);
      d << att, att, att, vel, vel, vel, bw, bw, bw, ba, ba, ba, pos, pos, pos;
      break;
    default:
      d = VecX(15);
      d << att, att, att, vel, vel, vel, pos, pos, pos, bw, bw, bw, ba, ba, ba;
      break;
  }
  return MatX(d.asDiagonal());
}

// Chart Jacobian from the physical retract chart at the current estimate to
// the error coordinates; used to transport P0 into Sigma0.
MatX chart_jacobian(const Symmetry& sym, const Xi& estimate, const XElem& Xhat,
                    const Xi& origin) {
  const int m = sym.dof();
  MatX J(m, m);
  const double h = 1e-6;
  VecX q = VecX::Zero(m);
  for (int i = 0; i < m; ++i) {
    q(i) = h;
    const VecX p = sym.error_coords(sym.state_retract(estimate, q), Xhat, origin);
    q(i) = -h;
    const VecX mm = sym.error_coords(sym.state_retract(estimate, q), Xhat, origin);
    q(i) = 0.0;
    J.col(i) = (p - mm) / (2.0 * h);
  }
  return J;
}

// Zero state of the variant (identity poses, zero biases).
Xi identity_state(Variant v) {
  Xi o;
  o.b = VecX::Zero(v == Variant::D_TangentGroup ? 9 : 6);
  if (v == Variant::ATT_TangentSO3 || v == Variant::ATT_Direct) {
    o.b = VecX::Zero(3);
    o.C = {SO3()};
  }
  if (v == Variant::MS21_ArduPilot) o.C = {SO3()};
  return o;
}

// Physical perturbation in the variant's retract layout from the shared
// per-run draws.
VecX layout_delta(Variant v, const Vec3& dth, const Vec3& dv, const Vec3& dp,
                  const Vec3& bw0, const Vec3& ba0) {
  VecX d;
  switch (v) {
    case Variant::D_TangentGroup:
      d = VecX::Zero(18);
      d << dth, dv, dp, bw0, ba0, Vec3::Zero();
      break;
    case Variant::A_DirectPosition:
      d = VecX::Zero(15);
      d << dth, dv, bw0, ba0, dp;
      break;
    default:
      d = VecX::Zero(15);
      d << dth, dv, dp, bw0, ba0;
      break;
  }
  return d;
}

Xi truth_state(Variant v, const sim::TrajectorySample& ts, const Vec3& bw,
               const Vec3& ba) {
  Xi xi;
  xi.T = SE23(SO3(ts.R), ts.v, ts.p);
  if (v == Variant::D_TangentGroup) {
    xi.b = VecX::Zero(9);
    xi.b.head<3>() = bw;
    xi.b.segment<3>(3) = ba;
  } else {
    xi.b = VecX(6);
    xi.b << bw, ba;
  }
  return xi;
}

struct InsRunOutput {
  std::vector<VecX> eps;
  std::vector<MatX> cov;
  std::vector<double> e_att, e_vel, e_pos, e_bw, e_ba;
};

InsRunOutput ins_single_run(const InsMcConfig& cfg, const Symmetry& sym,
                            uint64_t run) {
  const Variant v = sym.variant();
  Rng init_rng(cfg.seed, sim::mix64(run, 100, 0));
  const Vec3 dth = init_rng.normal3(cfg.init_att_sigma_deg * M_PI / 180.0);
  const Vec3 dv = init_rng.normal3(cfg.init_vel_sigma);
  const Vec3 dp = init_rng.normal3(cfg.init_pos_sigma);
  const Vec3 bw0 = init_rng.normal3(cfg.init_bw_sigma);
  const Vec3 ba0 = init_rng.normal3(cfg.init_ba_sigma);

  sim::NoiseSpec ns = cfg.noise;
  ns.seed = cfg.seed;
  const auto imu = sim::synthesize_imu(cfg.traj, cfg.world, ns, cfg.imu_rate,
                                       run, bw0, ba0);
  const auto pos = sim::synthesize_position(cfg.traj, cfg.world, cfg.pos_rate,
                                            cfg.pos_sigma, cfg.seed, run);

  const auto ts0 = sim::analytic_trajectory(cfg.traj, cfg.world, 0.0);
  const Xi truth0 = truth_state(v, ts0, bw0, ba0);
  const Xi est0 =
      sym.state_retract(truth0, VecX(-layout_delta(v, dth, dv, dp, bw0, ba0)));

  // identity origin: the printed matrices are identity-origin forms, so the
  // chart stays centered there and the filter starts at the witness of the
  // configured initial estimate
  const Xi origin = identity_state(v);
  EqfState s = eqf::make_initial(sym, origin, MatX());
  s.Xhat = sym.group_from_state(est0, origin);
  const MatX J = chart_jacobian(sym, est0, s.Xhat, origin);
  s.Sigma = J * build_P0(v, cfg) * J.transpose();
  const MatX Q = build_Q(v, cfg);
  filters::InsFilterModel model;

  const double dt = 1.0 / cfg.imu_rate;
  const Mat3 Rmeas = cfg.pos_sigma * cfg.pos_sigma * Mat3::Identity();
  InsRunOutput out;
  size_t meas_idx = 0;
  eqf::UpdateOptions opts;
  if (cfg.gcu_alpha >= 0.0) opts.gcu_alpha = cfg.gcu_alpha;
  opts.curvature_correction = cfg.curvature_correction;
  for (size_t k = 0; k + 1 < imu.samples.size(); ++k) {
    const VecX u = build_input(v, imu.samples[k].omega, imu.samples[k].accel);
    eqf::propagate(sym, model, s, u, dt, Q);
    const double t = imu.samples[k + 1].t;
    if (meas_idx < pos.size() && pos[meas_idx].t <= t + 1e-9) {
      auto outm = filters::ins_position_output(sym, s, pos[meas_idx].value, Rmeas);
      eqf::update(sym, s, outm, opts);
      if (v == Variant::D_TangentGroup && cfg.bnu_constraint) {
        auto outc = filters::bnu_constraint_output(
            sym, s,
            Mat3(cfg.bnu_constraint_sigma * cfg.bnu_constraint_sigma *
                 Mat3::Identity()));
        eqf::update(sym, s, outc, opts);
      }
      const auto ts = sim::analytic_trajectory(cfg.traj, cfg.world,
                                               std::min(t, cfg.traj.duration));
      const Xi truth = truth_state(v, ts, imu.true_bw[k + 1], imu.true_ba[k + 1]);
      const Xi est = sym.phi(s.Xhat, s.origin);
      out.eps.push_back(sym.error_coords(truth, s.Xhat, s.origin));
      out.cov.push_back(s.Sigma);
      out.e_att.push_back(geodesic_deg(truth.T.R.R, est.T.R.R));
      out.e_vel.push_back((truth.T.v - est.T.v).norm());
      out.e_pos.push_back((truth.T.p - est.T.p).norm());
      out.e_bw.push_back((truth.b.head<3>() - est.b.head<3>()).norm());
      out.e_ba.push_back(
          (truth.b.segment<3>(3) - est.b.segment<3>(3)).norm());
      ++meas_idx;
    }
  }
  return out;
}

}  // namespace

std::map<Variant, FilterMcResult> run_ins_montecarlo(const InsMcConfig& cfg) {
  std::map<Variant, FilterMcResult> results;
  for (Variant v : cfg.filters) {
    auto sym = make_symmetry(v, cfg.world);
    std::vector<InsRunOutput> runs(cfg.runs);
    parallel_runs(cfg.runs, [&](int r) {
      runs[r] = ins_single_run(cfg, *sym, static_cast<uint64_t>(r));
    });
    FilterMcResult res;
    const size_t m = runs[0].eps.size();
    const double dtm = 1.0 / cfg.pos_rate;
    for (size_t k = 0; k < m; ++k) res.t.push_back((k + 1) * dtm);
    std::vector<std::vector<VecX>> eps;
    std::vector<std::vector<MatX>> cov;
    std::vector<std::vector<double>> ea, ev, ep, ebw, eba;
    for (auto& run : runs) {
      eps.push_back(std::move(run.eps));
      cov.push_back(std::move(run.cov));
      ea.push_back(std::move(run.e_att));
      ev.push_back(std::move(run.e_vel));
      ep.push_back(std::move(run.e_pos));
      ebw.push_back(std::move(run.e_bw));
      eba.push_back(std::move(run.e_ba));
    }
    res.anees = anees(res.t, eps, cov);
    res.anees_ta = split_mean(res.anees.value);
    res.rmse_att = rmse_series(ea);
    res.rmse_vel = rmse_series(ev);
    res.rmse_pos = rmse_series(ep);
    res.rmse_bw = rmse_series(ebw);
    res.rmse_ba = rmse_series(eba);
    results.emplace(v, std::move(res));
  }
  return results;
}

SingleRun run_ins_single(const InsMcConfig& cfg, Variant v, uint64_t run) {
  auto sym = make_symmetry(v, cfg.world);
  // replicates the MC inner loop but records full states
  Rng init_rng(cfg.seed, sim::mix64(run, 100, 0));
  const Vec3 dth = init_rng.normal3(cfg.init_att_sigma_deg * M_PI / 180.0);
  const Vec3 dv = init_rng.normal3(cfg.init_vel_sigma);
  const Vec3 dp = init_rng.normal3(cfg.init_pos_sigma);
  const Vec3 bw0 = init_rng.normal3(cfg.init_bw_sigma);
  const Vec3 ba0 = init_rng.normal3(cfg.init_ba_sigma);
  sim::NoiseSpec ns = cfg.noise;
  ns.seed = cfg.seed;
  const auto imu =
      sim::synthesize_imu(cfg.traj, cfg.world, ns, cfg.imu_rate, run, bw0, ba0);
  const auto pos = sim::synthesize_position(cfg.traj, cfg.world, cfg.pos_rate,
                                            cfg.pos_sigma, cfg.seed, run);
  const auto ts0 = sim::analytic_trajectory(cfg.traj, cfg.world, 0.0);
  const Xi truth0 = truth_state(v, ts0, bw0, ba0);
  const Xi est0 = sym->state_retract(
      truth0, VecX(-layout_delta(v, dth, dv, dp, bw0, ba0)));
  const Xi origin = identity_state(v);
  EqfState s = eqf::make_initial(*sym, origin, MatX());
  s.Xhat = sym->group_from_state(est0, origin);
  const MatX J = chart_jacobian(*sym, est0, s.Xhat, origin);
  s.Sigma = J * build_P0(v, cfg) * J.transpose();
  const MatX Q = build_Q(v, cfg);
  filters::InsFilterModel model;
  const double dt = 1.0 / cfg.imu_rate;
  const Mat3 Rmeas = cfg.pos_sigma * cfg.pos_sigma * Mat3::Identity();
  SingleRun out;
  size_t meas_idx = 0;
  for (size_t k = 0; k + 1 < imu.samples.size(); ++k) {
    const VecX u = build_input(v, imu.samples[k].omega, imu.samples[k].accel);
    eqf::propagate(*sym, model, s, u, dt, Q);
    const double t = imu.samples[k + 1].t;
    if (meas_idx < pos.size() && pos[meas_idx].t <= t + 1e-9) {
      eqf::UpdateOptions opts2;
      opts2.curvature_correction = cfg.curvature_correction;
      auto outm = filters::ins_position_output(*sym, s, pos[meas_idx].value, Rmeas);
      eqf::update(*sym, s, outm, opts2);
      if (v == Variant::D_TangentGroup && cfg.bnu_constraint) {
        auto outc = filters::bnu_constraint_output(
            *sym, s,
            Mat3(cfg.bnu_constraint_sigma * cfg.bnu_constraint_sigma *
                 Mat3::Identity()));
        eqf::update(*sym, s, outc, opts2);
      }
      const auto ts = sim::analytic_trajectory(cfg.traj, cfg.world,
                                               std::min(t, cfg.traj.duration));
      out.t.push_back(t);
      out.truth.push_back(truth_state(v, ts, imu.true_bw[k + 1], imu.true_ba[k + 1]));
      out.estimate.push_back(sym->phi(s.Xhat, s.origin));
      out.sigma_diag.push_back(s.Sigma.diagonal());
      ++meas_idx;
    }
  }
  return out;
}

// ------------------------------------------------------------------ attitude

namespace {

struct AttRunOutput {
  std::vector<double> e_att, e_calib, e_bias;
};

AttRunOutput att_single_run(const AttMcConfig& cfg, const Symmetry& sym,
                            uint64_t run) {
  Rng init_rng(cfg.seed, sim::mix64(run, 200, 0));
  const Vec3 dth = init_rng.normal3(cfg.init_att_sigma_deg * M_PI / 180.0);
  sim::NoiseSpec ns;
  ns.sigma_w = cfg.sigma_w;
  ns.sigma_bw = cfg.sigma_bw;
  ns.sigma_a = 0.0;
  ns.sigma_ba = 0.0;
  ns.seed = cfg.seed;
  const Vec3 bw0 = init_rng.normal3(cfg.bias_prior / 2.0);
  const auto imu =
      sim::synthesize_imu(cfg.traj, cfg.world, ns, cfg.imu_rate, run, bw0, Vec3::Zero());
  const Vec3 d_mag = Vec3(0.4, -0.1, 0.91).normalized();
  // true sensor calibration drawn per run; the filter starts at identity
  const Mat3 S_true =
      exp_so3(Vec3(init_rng.normal3(cfg.calib_prior_deg * M_PI / 180.0)));
  const auto mag = sim::synthesize_direction(cfg.traj, cfg.world, cfg.mag_rate,
                                             cfg.mag_sigma, cfg.seed, run,
                                             d_mag, S_true);
  // two GNSS receivers along the body y-axis, baseline 1 m
  Rng gnss_rng(cfg.seed, sim::mix64(run, 201, 0));
  const double gdt = 1.0 / cfg.gnss_rate;
  std::vector<sim::SensorSample> gnss;
  std::vector<Vec3> gnss_dir;
  for (double t = gdt; t <= cfg.traj.duration + 1e-12; t += gdt) {
    const auto ts = sim::analytic_trajectory(cfg.traj, cfg.world,
                                             std::min(t, cfg.traj.duration));
    const Vec3 r1 = ts.p + ts.R * Vec3(0, 0.5, 0);
    const Vec3 r2 = ts.p - ts.R * Vec3(0, 0.5, 0);
    const Vec3 d2 = filters::gnss_direction(r1, r2);
    Vec3 y = ts.R.transpose() * d2 + gnss_rng.normal3(cfg.gnss_sigma);
    gnss.push_back({t, Vec3(y.normalized())});
    gnss_dir.push_back(d2);
  }

  Xi est0 = identity_state(sym.variant());
  est0.T.R = SO3(Mat3(sim::analytic_trajectory(cfg.traj, cfg.world, 0.0).R *
                      exp_so3(-dth)));
  const Xi origin = identity_state(sym.variant());
  EqfState s = eqf::make_initial(sym, origin, MatX());
  s.Xhat = sym.group_from_state(est0, origin);
  VecX p0(9);
  const double att = std::pow(cfg.init_att_sigma_deg * M_PI / 180.0, 2);
  const double cal = std::pow(cfg.calib_prior_deg * M_PI / 180.0, 2);
  p0 << att, att, att, cfg.bias_prior * cfg.bias_prior,
      cfg.bias_prior * cfg.bias_prior, cfg.bias_prior * cfg.bias_prior, cal,
      cal, cal;
  const MatX J = chart_jacobian(sym, est0, s.Xhat, origin);
  s.Sigma = J * MatX(p0.asDiagonal()) * J.transpose();

  // noise channels: gyro white, gyro-bias walk, calibration walk (none)
  MatX Q = MatX::Zero(9, 9);
  Q.diagonal().head<3>().setConstant(cfg.sigma_w * cfg.sigma_w);
  Q.diagonal().segment<3>(3).setConstant(cfg.sigma_bw * cfg.sigma_bw);
  std::vector<filters::DirectionSensor> dirs(2);
  dirs[0] = {d_mag, true, 0};
  dirs[1] = {Vec3::UnitY(), false, -1};
  filters::AttitudeFilterModel model(dirs, sym.variant() == Variant::ATT_TangentSO3);

  const double dt = 1.0 / cfg.imu_rate;
  size_t mi = 0, gi = 0;
  AttRunOutput out;
  for (size_t k = 0; k + 1 < imu.samples.size(); ++k) {
    eqf::propagate(sym, model, s, VecX(imu.samples[k].omega), dt, Q);
    const double t = imu.samples[k + 1].t;
    bool measured = false;
    eqf::UpdateOptions aopts;
    aopts.curvature_correction = false;
    if (mi < mag.size() && mag[mi].t <= t + 1e-9) {
      std::vector<filters::DirectionSensor> one = {dirs[0]};
      auto om = filters::attitude_output(sym, s, one, {mag[mi].value},
                                         {cfg.mag_sigma});
      eqf::update(sym, s, om, aopts);
      ++mi;
      measured = true;
    }
    if (gi < gnss.size() && gnss[gi].t <= t + 1e-9) {
      std::vector<filters::DirectionSensor> one = {
          {gnss_dir[gi], false, -1}};
      auto og = filters::attitude_output(sym, s, one, {gnss[gi].value},
                                         {cfg.gnss_sigma});
      eqf::update(sym, s, og, aopts);
      ++gi;
      measured = true;
    }
    if (measured && mi > 0 && (mi % static_cast<size_t>(cfg.mag_rate / 10) == 0)) {
      // record at ~10 Hz
      const auto ts = sim::analytic_trajectory(cfg.traj, cfg.world,
                                               std::min(t, cfg.traj.duration));
      const Xi est = sym.phi(s.Xhat, s.origin);
      out.e_att.push_back(geodesic_deg(ts.R, est.T.R.R));
      out.e_calib.push_back(geodesic_deg(S_true, est.C[0].R));
      out.e_bias.push_back((imu.true_bw[k + 1] - Vec3(est.b.head<3>())).norm());
    }
  }
  return out;
}

}  // namespace

std::map<Variant, AttMcResult> run_att_montecarlo(const AttMcConfig& cfg) {
  std::map<Variant, AttMcResult> results;
  for (Variant v : {Variant::ATT_TangentSO3, Variant::ATT_Direct}) {
    auto sym = make_symmetry(v, cfg.world, 1);
    std::vector<AttRunOutput> runs(cfg.runs);
    parallel_runs(cfg.runs, [&](int r) {
      runs[r] = att_single_run(cfg, *sym, static_cast<uint64_t>(r));
    });
    AttMcResult res;
    std::vector<std::vector<double>> ea, ec, eb;
    size_t m = runs[0].e_att.size();
    for (auto& run : runs) m = std::min(m, run.e_att.size());
    for (auto& run : runs) {
      run.e_att.resize(m);
      run.e_calib.resize(m);
      run.e_bias.resize(m);
      ea.push_back(std::move(run.e_att));
      ec.push_back(std::move(run.e_calib));
      eb.push_back(std::move(run.e_bias));
    }
    for (size_t k = 0; k < m; ++k) res.t.push_back(static_cast<double>(k));
    res.rmse_att_deg = rmse_series(ea);
    res.rmse_calib_deg = rmse_series(ec);
    res.rmse_bias = rmse_series(eb);
    res.att_ta = split_mean(res.rmse_att_deg);
    results.emplace(v, std::move(res));
  }
  return results;
}

// ---------------------------------------------------------------------- VINS

VinsRunResult run_vins_single(const VinsMcConfig& cfg, uint64_t run) {
  SymVins sym(cfg.world);
  const SE3 S_cam(SO3(), Vec3(0.05, -0.02, 0.01));
  const In4 K_true(cfg.fx, cfg.fx * 1.02, 320.0, 240.0);
  const double sigma_norm = cfg.pixel_sigma / cfg.fx;

  // reference change H = (R_yaw, 0, p_H): applied to truth and origin;
  // bearing and IMU streams are invariant and shared bitwise
  const SE23 H(SO3::Exp(Vec3(0, 0, cfg.ref_yaw)), Vec3::Zero(),
               cfg.ref_translation);
  const SE23 Hinv = H.inv();

  Rng init_rng(cfg.seed, sim::mix64(run, 300, 0));
  const Vec3 dth = init_rng.normal3(cfg.init_att_sigma_deg * M_PI / 180.0);
  const Vec3 dv = init_rng.normal3(cfg.init_vel_sigma);
  const Vec3 dp = init_rng.normal3(cfg.init_pos_sigma);
  const Vec3 bw0 = init_rng.normal3(cfg.init_bw_sigma);
  const Vec3 ba0 = init_rng.normal3(cfg.init_ba_sigma);

  sim::NoiseSpec ns = cfg.noise;
  ns.seed = cfg.seed;
  const auto imu =
      sim::synthesize_imu(cfg.traj, cfg.world, ns, cfg.imu_rate, run, bw0, ba0);
  const auto landmarks = sim::make_landmarks(
      cfg.n_landmarks, Vec3(-5, -5, 2.5), Vec3(5, 5, 5.5), cfg.seed + 17);
  const auto frames =
      sim::synthesize_bearings(cfg.traj, cfg.world, cfg.cam_rate, sigma_norm,
                               cfg.seed, run, landmarks, S_cam, 0.25);

  // origin: perturbed initial estimate, reference-changed
  const auto ts0 = sim::analytic_trajectory(cfg.traj, cfg.world, 0.0);
  Xi truth0;
  truth0.T = SE23(SO3(ts0.R), ts0.v, ts0.p);
  truth0.b = VecX(6);
  truth0.b << bw0, ba0;
  truth0.S = S_cam;
  truth0.K = K_true;
  VecX d25 = VecX::Zero(25);
  d25.head<3>() = dth;
  d25.segment<3>(3) = dv;
  d25.segment<3>(6) = dp;
  d25.segment<3>(9) = bw0;
  d25.segment<3>(12) = ba0;
  Xi origin = sym.state_retract(truth0, VecX(-d25));
  origin.T = Hinv * origin.T;

  msceqf::MsceqfState st;
  st.max_clones = cfg.max_clones;
  st.core = eqf::make_initial(sym, origin, MatX());
  // physical prior over (T, b, S, K)
  VecX p0(25);
  const double att = std::pow(cfg.init_att_sigma_deg * M_PI / 180.0, 2);
  p0 << att, att, att, cfg.init_vel_sigma * cfg.init_vel_sigma,
      cfg.init_vel_sigma * cfg.init_vel_sigma,
      cfg.init_vel_sigma * cfg.init_vel_sigma,
      cfg.init_pos_sigma * cfg.init_pos_sigma,
      cfg.init_pos_sigma * cfg.init_pos_sigma,
      cfg.init_pos_sigma * cfg.init_pos_sigma,
      cfg.init_bw_sigma * cfg.init_bw_sigma,
      cfg.init_bw_sigma * cfg.init_bw_sigma,
      cfg.init_bw_sigma * cfg.init_bw_sigma,
      cfg.init_ba_sigma * cfg.init_ba_sigma,
      cfg.init_ba_sigma * cfg.init_ba_sigma,
      cfg.init_ba_sigma * cfg.init_ba_sigma, 1e-8, 1e-8, 1e-8, 1e-8, 1e-8,
      1e-8, 1e-10, 1e-10, 1e-10, 1e-10;
  st.core.Sigma = msceqf::initial_covariance_transport(
      MatX(p0.asDiagonal()), sym, st.core.Xhat, origin);

  MatX Q12 = MatX::Zero(12, 12);
  Q12.diagonal() << ns.sigma_w * ns.sigma_w, ns.sigma_w * ns.sigma_w,
      ns.sigma_w * ns.sigma_w, ns.sigma_a * ns.sigma_a,
      ns.sigma_a * ns.sigma_a, ns.sigma_a * ns.sigma_a,
      ns.sigma_bw * ns.sigma_bw, ns.sigma_bw * ns.sigma_bw,
      ns.sigma_bw * ns.sigma_bw, ns.sigma_ba * ns.sigma_ba,
      ns.sigma_ba * ns.sigma_ba, ns.sigma_ba * ns.sigma_ba;

  msceqf::CameraModel cam;
  cam.K0 = K_true;  // known intrinsics as the origin; L estimated about it

  std::map<long, msceqf::FeatureTrack> active;
  std::vector<long> clone_ids;
  long next_clone_id = 0;

  VinsRunResult out;
  const double dt = 1.0 / cfg.imu_rate;
  size_t fi = 0;
  for (size_t k = 0; k + 1 < imu.samples.size(); ++k) {
    VecX u = VecX::Zero(12);
    u.head<3>() = imu.samples[k].omega;
    u.segment<3>(3) = imu.samples[k].accel;
    msceqf_propagate(sym, st, u, dt, Q12);
    const double t = imu.samples[k + 1].t;
    if (fi < frames.size() && frames[fi].t <= t + 1e-9) {
      const auto& frame = frames[fi];
      // window full: flush all usable tracks in one stacked update
      if (static_cast<int>(st.clones.size()) >= st.max_clones) {
        std::vector<msceqf::FeatureTrack> mature;
        for (auto& [id, tr] : active)
          if (tr.uv.size() >= 3) mature.push_back(tr);
        if (!mature.empty())
          msc_update(sym, st, cam, mature, sigma_norm, false);
        active.clear();
        while (st.clones.size() > 1) {
          prune_clone(st, 0);
          clone_ids.erase(clone_ids.begin());
        }
      }
      stochastic_clone(st, frame.t);
      clone_ids.push_back(next_clone_id++);
      const int cidx = static_cast<int>(st.clones.size()) - 1;
      for (size_t j = 0; j < frame.ids.size(); ++j) {
        auto& tr = active[frame.ids[j]];
        tr.id = frame.ids[j];
        tr.clone_idx.push_back(cidx);
        tr.uv.push_back(frame.uv[j]);
      }
      ++fi;

      // record pose error after the potential update
      const auto ts = sim::analytic_trajectory(cfg.traj, cfg.world,
                                               std::min(t, cfg.traj.duration));
      const SE23 Ttrue = Hinv * SE23(SO3(ts.R), ts.v, ts.p);
      const Xi est = sym.phi(st.core.Xhat, st.core.origin);
      const SE3 P0 = Theta(origin.T);
      const SE3 P = Theta(Ttrue);
      const SE3 Phat = Theta(est.T);
      const Vec6 eps = (P0.inv() * P * Phat.inv() * P0).log();
      out.t.push_back(t);
      out.pose_eps.push_back(eps);
      MatX pc(6, 6);
      const int idx[6] = {0, 1, 2, 6, 7, 8};
      for (int rr = 0; rr < 6; ++rr)
        for (int cc = 0; cc < 6; ++cc)
          pc(rr, cc) = st.core.Sigma(idx[rr], idx[cc]);
      out.pose_cov.push_back(pc);
      out.pos_err.push_back((P.t - Phat.t).norm());
      out.att_err.push_back(geodesic_deg(P.R.R, Phat.R.R));
    }
  }
  return out;
}

VinsMcResult run_vins_montecarlo(const VinsMcConfig& cfg) {
  std::vector<VinsRunResult> runs(cfg.runs);
  parallel_runs(cfg.runs, [&](int r) {
    runs[r] = run_vins_single(cfg, static_cast<uint64_t>(r));
  });
  VinsMcResult res;
  size_t m = runs[0].t.size();
  for (auto& r : runs) m = std::min(m, r.t.size());
  std::vector<double> times(runs[0].t.begin(), runs[0].t.begin() + m);
  std::vector<std::vector<VecX>> eps;
  std::vector<std::vector<MatX>> cov;
  std::vector<std::vector<double>> ep, ea;
  for (auto& r : runs) {
    r.pose_eps.resize(m);
    r.pose_cov.resize(m);
    r.pos_err.resize(m);
    r.att_err.resize(m);
    eps.push_back(std::move(r.pose_eps));
    cov.push_back(std::move(r.pose_cov));
    ep.push_back(std::move(r.pos_err));
    ea.push_back(std::move(r.att_err));
  }
  res.anees = anees(times, eps, cov);
  res.rmse_pos = rmse_series(ep);
  res.rmse_att = rmse_series(ea);
  return res;
}

// ----------------------------------------------------------------- scenarios

double static_yaw_drift(double duration_s, double init_yaw_err_rad) {
  WorldParams world;
  SymB sym(world);
  sim::TrajectoryParams tp;
  tp.kind = sim::TrajectoryParams::Kind::Static;
  tp.duration = duration_s;
  const double imu_rate = 100.0, pos_rate = 10.0;

  Xi est0;
  est0.T.R = SO3::Exp(Vec3(0, 0, init_yaw_err_rad));
  est0.b = VecX::Zero(6);
  const Xi origin = identity_state(Variant::B_SemiDirectBias);
  EqfState s = eqf::make_initial(sym, origin, MatX());
  s.Xhat = sym.group_from_state(est0, origin);
  VecX p0(15);
  p0 << 0.1, 0.1, 0.1, 0.01, 0.01, 0.01, 0.01, 0.01, 0.01, 1e-4, 1e-4, 1e-4,
      1e-4, 1e-4, 1e-4;
  const MatX J = chart_jacobian(sym, est0, s.Xhat, origin);
  s.Sigma = J * MatX(p0.asDiagonal()) * J.transpose();
  MatX Q = MatX::Zero(12, 12);
  Q.diagonal() << 1e-6, 1e-6, 1e-6, 1e-4, 1e-4, 1e-4, 1e-9, 1e-9, 1e-9, 1e-8,
      1e-8, 1e-8;
  filters::InsFilterModel model;
  const double dt = 1.0 / imu_rate;
  const int n = static_cast<int>(duration_s * imu_rate);
  const Mat3 Rm = 1e-4 * Mat3::Identity();
  auto yaw_of = [&](const Mat3& R) { return std::atan2(R(1, 0), R(0, 0)); };
  const double yaw0 = yaw_of(sym.phi(s.Xhat, origin).T.R.R);
  double max_dev = 0.0;
  int meas_every = static_cast<int>(imu_rate / pos_rate);
  for (int k = 0; k < n; ++k) {
    // noiseless static IMU: omega = 0, accel balances gravity
    VecX u = VecX::Zero(12);
    u.segment<3>(3) = -world.gravity();
    eqf::propagate(sym, model, s, u, dt, Q);
    if ((k + 1) % meas_every == 0) {
      auto out = filters::ins_position_output(sym, s, Vec3::Zero(), Rm);
      eqf::update(sym, s, out);
    }
    max_dev = std::max(max_dev,
                       std::abs(yaw_of(sym.phi(s.Xhat, origin).T.R.R) - yaw0));
  }
  return max_dev;
}

// ------------------------------------------------------------ certification

namespace {

VecX rng_vec(Rng& r, int n, double s) {
  VecX v(n);
  for (int i = 0; i < n; ++i) v(i) = r.normal() * s;
  return v;
}

Xi identity_origin_for(Variant v) {
  Xi o;
  o.b = VecX::Zero(v == Variant::D_TangentGroup ? 9 : 6);
  if (v == Variant::ATT_TangentSO3 || v == Variant::ATT_Direct) {
    o.b = VecX::Zero(3);
    o.C = {SO3()};
  }
  if (v == Variant::MS21_ArduPilot) o.C = {SO3()};
  return o;
}

}  // namespace

std::vector<CertifyRow> certify_all(double tol, int n_states, uint64_t seed) {
  std::vector<CertifyRow> rows;
  WorldParams world;
  auto push = [&](const std::string& name, double dev, double tolerance) {
    rows.push_back({name, dev, tolerance, dev <= tolerance});
  };

  // six INS filters: A0, B, position C
  const Variant ins[] = {Variant::E_SO3xR12,       Variant::F_SE23xR6,
                         Variant::C_TwoFrames,     Variant::D_TangentGroup,
                         Variant::A_DirectPosition, Variant::B_SemiDirectBias};
  for (Variant v : ins) {
    auto sym = make_symmetry(v, world);
    Rng rng(seed, sim::mix64(static_cast<uint64_t>(v), 400, 0));
    double devA = 0, devB = 0, devC = 0;
    for (int i = 0; i < n_states; ++i) {
      EqfState s;
      s.origin = identity_origin_for(v);
      s.Xhat = sym->exp(rng_vec(rng, sym->dof(), 0.5));
      s.Sigma = MatX::Identity(sym->dof(), sym->dof());
      const VecX u = rng_vec(rng, sym->input_dim(), 0.8);
      devA = std::max(devA, eqf::max_deviation(
                                filters::ins_state_matrix(*sym, s, u),
                                eqf::numeric_A(*sym, s.origin, s.Xhat, u)));
      devB = std::max(devB, eqf::max_deviation(
                                filters::ins_input_matrix(*sym, s, u),
                                eqf::numeric_B(*sym, s.origin, s.Xhat, u)));
      const Xi est = sym->phi(s.Xhat, s.origin);
      auto residual_fn = [&](const Xi& xt) -> VecX {
        return filters::ins_position_output(*sym, s, xt.T.p, Mat3::Identity())
            .residual;
      };
      devC = std::max(
          devC, eqf::max_deviation(
                    filters::ins_position_output(*sym, s, est.T.p,
                                                 Mat3::Identity())
                        .C,
                    eqf::numeric_C(*sym, s.origin, s.Xhat, residual_fn, 3)));
    }
    const std::string n = variant_name(v);
    push("A0_" + n, devA, tol);
    push("B_" + n, devB, tol);
    push("C_pos_" + n, devC, tol);
  }

  // TG generic origin
  {
    SymD sym(world);
    Rng rng(seed, 401);
    double dev = 0;
    for (int i = 0; i < n_states; ++i) {
      EqfState s;
      s.origin.T = SE23(SO3::Exp(Vec3(rng_vec(rng, 3, 0.4))),
                        Vec3(rng_vec(rng, 3, 1.0)), Vec3(rng_vec(rng, 3, 1.0)));
      s.origin.b = rng_vec(rng, 9, 0.2);
      s.Xhat = sym.exp(rng_vec(rng, 18, 0.5));
      const VecX u = rng_vec(rng, 18, 0.8);
      dev = std::max(dev, eqf::max_deviation(
                              filters::ins_state_matrix(sym, s, u),
                              eqf::numeric_A(sym, s.origin, s.Xhat, u)));
    }
    push("A0_tg_generic_origin", dev, tol);
  }

  // attitude filter
  {
    SymAtt sym(world, 1);
    Rng rng(seed, 402);
    std::vector<filters::DirectionSensor> dirs(2);
    dirs[0] = {Vec3(0.2, -0.4, 0.89).normalized(), true, 0};
    dirs[1] = {Vec3(0.9, 0.1, -0.42).normalized(), false, -1};
    double devA = 0, devB = 0, devC = 0, devPhi = 0;
    for (int i = 0; i < n_states; ++i) {
      EqfState s;
      s.origin = identity_origin_for(Variant::ATT_TangentSO3);
      s.Xhat = sym.exp(rng_vec(rng, 9, 0.5));
      const VecX u = rng_vec(rng, 3, 1.0);
      const Vec3 om0 = sym.psi(sym.inverse(s.Xhat), u);
      auto mats = filters::attitude_matrices(sym, s, om0, dirs);
      devA = std::max(devA, eqf::max_deviation(
                                mats.A0, eqf::numeric_A(sym, s.origin, s.Xhat, u)));
      devB = std::max(devB,
                      eqf::max_deviation(MatX(mats.Bt.leftCols(3)),
                                         eqf::numeric_B(sym, s.origin, s.Xhat, u)));
      auto residual_fn = [&](const Xi& xt) -> VecX {
        VecX r(6);
        Vec3 y0 = xt.C[0].R.transpose() * xt.T.R.R.transpose() * dirs[0].d;
        Vec3 y1 = xt.T.R.R.transpose() * dirs[1].d;
        r.head<3>() = dirs[0].d.cross(Vec3(s.Xhat.B[0].R * y0));
        r.tail<3>() = dirs[1].d.cross(Vec3(s.Xhat.D.R.R * y1));
        return r;
      };
      devC = std::max(devC, eqf::max_deviation(
                                mats.C0,
                                eqf::numeric_C(sym, s.origin, s.Xhat, residual_fn, 6)));
      const double dtk = 0.005;
      devPhi = std::max(
          devPhi, (filters::attitude_phi_closed_form(om0, dtk) -
                   eqf::matrix_exp(MatX(mats.A0 * dtk)))
                      .norm());
    }
    push("A0_att", devA, tol);
    push("B_att", devB, tol);
    push("C0_att", devC, tol);
    push("Phi_att_closed_form", devPhi, 1e-9);
  }

  // 21-state multi-sensor filter
  {
    SymMs21 sym(world);
    Rng rng(seed, 403);
    const Vec3 m_world = Vec3(0.3, -0.1, 0.95).normalized();
    double devA = 0, devB = 0, devCm = 0, devCp = 0, devCv = 0;
    for (int i = 0; i < n_states; ++i) {
      EqfState s;
      s.origin = identity_origin_for(Variant::MS21_ArduPilot);
      s.Xhat = sym.exp(rng_vec(rng, 21, 0.5));
      const VecX u = rng_vec(rng, 18, 0.8);
      devA = std::max(devA, eqf::max_deviation(
                                filters::ms21_state_matrix(sym, s, u),
                                eqf::numeric_A(sym, s.origin, s.Xhat, u)));
      devB = std::max(devB, eqf::max_deviation(
                                filters::ms21_input_matrix(sym, s, u),
                                eqf::numeric_B(sym, s.origin, s.Xhat, u)));
      const Xi est = sym.phi(s.Xhat, s.origin);
      {
        const Vec3 yhat = est.C[0].R.transpose() * est.T.R.R.transpose() * m_world;
        auto fn = [&](const Xi& xt) -> VecX {
          const Vec3 y = xt.C[0].R.transpose() * xt.T.R.R.transpose() * m_world;
          return filters::ms21_direction_output(sym, s, m_world, y,
                                                Mat3::Identity())
              .residual;
        };
        devCm = std::max(
            devCm, eqf::max_deviation(
                       filters::ms21_direction_output(sym, s, m_world, yhat,
                                                      Mat3::Identity())
                           .C,
                       eqf::numeric_C(sym, s.origin, s.Xhat, fn, 3)));
      }
      {
        const Vec3 pred = est.T.p + est.T.R.R * est.t;
        auto fn = [&](const Xi& xt) -> VecX {
          const Vec3 pi = xt.T.p + xt.T.R.R * xt.t;
          return filters::ms21_position_output(sym, s, pi, Mat3::Identity())
              .residual;
        };
        devCp = std::max(
            devCp,
            eqf::max_deviation(
                filters::ms21_position_output(sym, s, pred, Mat3::Identity()).C,
                eqf::numeric_C(sym, s.origin, s.Xhat, fn, 3)));
      }
      {
        const Vec3 omega = rng_vec(rng, 3, 1.0);
        const Vec3 pred = est.T.v + est.T.R.R * omega.cross(est.t);
        auto fn = [&](const Xi& xt) -> VecX {
          const Vec3 nu = xt.T.v + xt.T.R.R * omega.cross(xt.t);
          return filters::ms21_velocity_output(sym, s, nu, omega,
                                               Mat3::Identity())
              .residual;
        };
        devCv = std::max(
            devCv, eqf::max_deviation(
                       filters::ms21_velocity_output(sym, s, pred, omega,
                                                     Mat3::Identity())
                           .C,
                       eqf::numeric_C(sym, s.origin, s.Xhat, fn, 3)));
      }
    }
    push("A0_ms21", devA, tol);
    push("B_ms21", devB, tol);
    push("Cstar_ms21_mag", devCm, tol);
    push("Cstar_ms21_pos", devCp, tol);
    push("Cstar_ms21_vel", devCv, tol);
  }

  // MSCEqF core matrices
  {
    SymVins sym(world);
    Rng rng(seed, 404);
    double devA = 0, devB = 0, devD = 0;
    for (int i = 0; i < n_states; ++i) {
      EqfState s;
      s.origin.b = VecX::Zero(6);
      s.origin.T = SE23(SO3::Exp(Vec3(rng_vec(rng, 3, 0.4))),
                        Vec3(rng_vec(rng, 3, 0.8)), Vec3(rng_vec(rng, 3, 0.8)));
      s.origin.b = rng_vec(rng, 6, 0.2);
      s.origin.S = SE3(SO3::Exp(Vec3(rng_vec(rng, 3, 0.4))),
                       Vec3(rng_vec(rng, 3, 0.3)));
      s.origin.K = In4(450.0, 455.0, 320.0, 240.0);
      s.Xhat = sym.exp(rng_vec(rng, 25, 0.4));
      VecX u = VecX::Zero(22);
      u.head(12) = rng_vec(rng, 12, 0.8);
      devA = std::max(devA, eqf::max_deviation(
                                msceqf::msceqf_A(sym, s, u),
                                eqf::numeric_A(sym, s.origin, s.Xhat, u)));
      devB = std::max(
          devB, eqf::max_deviation(
                    msceqf::msceqf_B(sym, s),
                    MatX(eqf::numeric_B(sym, s.origin, s.Xhat, u).leftCols(12))));
      // initial covariance transport Jacobian vs the numeric Jacobian of the
      // body-perturbation chart P is expressed in
      auto body_retract = [](const Xi& xi, const VecX& q) {
        Xi o2 = xi;
        o2.T = xi.T * SE23::Exp(q.head<9>());
        o2.b = xi.b + q.segment<6>(9);
        o2.S = xi.S * SE3::Exp(q.segment<6>(15));
        o2.K = xi.K * In4::Exp(q.tail<4>());
        return o2;
      };
      MatX Jn(25, 25);
      const double h = 1e-6;
      const Xi act = sym.phi(s.Xhat, s.origin);
      VecX q = VecX::Zero(25);
      for (int c = 0; c < 25; ++c) {
        q(c) = h;
        const VecX pd = sym.error_coords(body_retract(act, q), s.Xhat, s.origin);
        q(c) = -h;
        const VecX md = sym.error_coords(body_retract(act, q), s.Xhat, s.origin);
        q(c) = 0.0;
        Jn.col(c) = (pd - md) / (2.0 * h);
      }
      devD = std::max(
          devD, eqf::max_deviation(
                    msceqf::initial_covariance_D(sym, s.Xhat, s.origin), Jn));
    }
    push("A_msceqf", devA, tol);
    push("B_msceqf", devB, tol);
    push("D_initial_covariance", devD, tol);
  }

  // hybrid 29-state matrices and persistent-feature C*
  {
    msceqf::SymVinsHybrid sym(world);
    Rng rng(seed, 405);
    double devA = 0, devB = 0, devC = 0;
    for (int i = 0; i < n_states; ++i) {
      EqfState s;
      s.origin.T = SE23(SO3::Exp(Vec3(rng_vec(rng, 3, 0.3))),
                        Vec3(rng_vec(rng, 3, 0.5)), Vec3(rng_vec(rng, 3, 0.5)));
      s.origin.b = rng_vec(rng, 6, 0.2);
      s.origin.S = SE3(SO3::Exp(Vec3(rng_vec(rng, 3, 0.3))),
                       Vec3(rng_vec(rng, 3, 0.2)));
      s.origin.K = In4(450.0, 455.0, 320.0, 240.0);
      s.origin.pf = Vec3(rng_vec(rng, 3, 1.0)) + Vec3(0, 0, 6.0);
      s.Xhat = sym.exp(rng_vec(rng, 29, 0.3));
      VecX u = VecX::Zero(22);
      u.head(12) = rng_vec(rng, 12, 0.8);
      devA = std::max(devA, eqf::max_deviation(
                                msceqf::hybrid_A(sym, s, u),
                                eqf::numeric_A(sym, s.origin, s.Xhat, u)));
      devB = std::max(
          devB, eqf::max_deviation(
                    msceqf::hybrid_B(sym, s, u),
                    MatX(eqf::numeric_B(sym, s.origin, s.Xhat, u).leftCols(12))));
      // persistent-feature bearing
      auto fn = [&](const Xi& xt) -> VecX {
        const SE3 PS = Theta(xt.T) * xt.S;
        const Vec3 y = pi_s2(PS.inv() * xt.pf);
        return msceqf::persistent_feature_output(sym, s, y, Mat3::Identity())
            .residual;
      };
      const Xi est = sym.phi(s.Xhat, s.origin);
      const SE3 PSh = Theta(est.T) * est.S;
      const Vec3 yhat = pi_s2(PSh.inv() * est.pf);
      devC = std::max(
          devC, eqf::max_deviation(
                    msceqf::persistent_feature_output(sym, s, yhat,
                                                      Mat3::Identity())
                        .C,
                    eqf::numeric_C(sym, s.origin, s.Xhat, fn, 3)));
    }
    push("A_hybrid", devA, tol);
    push("B_hybrid", devB, tol);
    push("Cstar_persistent_feature", devC, tol);
  }

  return rows;
}

std::vector<TriBenchRow> triangulate_bench(int n_scenes, uint64_t seed) {
  using namespace eqnav::msceqf;
  std::vector<double> err_lin, err_nl, err_ts;
  std::vector<double> nerr_lin, nerr_nl, nerr_ts;
  std::vector<double> cost_lin, cost_nl, cost_ts;
  Rng rng(seed, 500);
  for (int sc = 0; sc < n_scenes; ++sc) {
    std::vector<SE3> clones;
    const int k = 8;
    for (int j = 0; j < k; ++j) {
      clones.push_back(SE3(SO3::Exp(Vec3(rng_vec(rng, 3, 0.15))),
                           Vec3(rng_vec(rng, 3, 0.8))));
    }
    const Vec3 pf = Vec3(rng_vec(rng, 3, 1.5)) + Vec3(0, 0, 8.0);
    auto make_track = [&](double noise) {
      FeatureTrack tr;
      tr.id = sc;
      for (int j = 0; j < k; ++j) {
        const Vec3 cf = clones[j].inv() * pf;
        if (cf.z() < 0.1) continue;
        tr.clone_idx.push_back(j);
        tr.uv.push_back(Eigen::Vector2d(cf.x() / cf.z() + rng.normal() * noise,
                                        cf.y() / cf.z() + rng.normal() * noise));
      }
      return tr;
    };
    const FeatureTrack clean = make_track(0.0);
    if (clean.uv.size() < 3) continue;
    const Vec3 pa_true = clones[clean.clone_idx[0]].inv() * pf;
    {
      const Vec3 est = triangulate_linear(clean, clones);
      err_lin.push_back((est - pa_true).norm());
      auto nl = triangulate_nonlinear(clean, clones, est, FeatureParam::InverseDepth);
      err_nl.push_back((nl.feature.point() - pa_true).norm());
      auto ts = triangulate_two_stage(clean, clones);
      err_ts.push_back((ts.point() - pa_true).norm());
    }
    const FeatureTrack noisy = make_track(1.0 / 460.0);
    if (noisy.uv.size() < 3) continue;
    try {
      const Vec3 est = triangulate_linear(noisy, clones);
      nerr_lin.push_back((est - pa_true).norm());
      cost_lin.push_back(reprojection_cost(
          noisy, clones, AnchoredFeature::from_point(est, FeatureParam::Euclidean)));
      auto nl = triangulate_nonlinear(noisy, clones, est, FeatureParam::InverseDepth);
      nerr_nl.push_back((nl.feature.point() - pa_true).norm());
      cost_nl.push_back(nl.cost);
      auto ts = triangulate_two_stage(noisy, clones);
      nerr_ts.push_back((ts.point() - pa_true).norm());
      cost_ts.push_back(reprojection_cost(noisy, clones, ts));
    } catch (const std::exception&) {
    }
  }
  auto med = [](std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  };
  return {
      {"linear", med(err_lin), med(nerr_lin), mean(cost_lin)},
      {"nonlinear_invdepth", med(err_nl), med(nerr_nl), mean(cost_nl)},
      {"two_stage_polar", med(err_ts), med(nerr_ts), mean(cost_ts)},
  };
}

ZvuDemoResult zvu_demo(uint64_t seed) {
  using namespace eqnav::msceqf;
  ZvuDemoResult res;
  WorldParams world;
  SymVins sym(world);

  // disparity detection on synthetic streams
  {
    sim::TrajectoryParams still;
    still.kind = sim::TrajectoryParams::Kind::Static;
    still.duration = 2.0;
    sim::TrajectoryParams moving;
    moving.duration = 2.0;
    const SE3 S_cam(SO3(), Vec3(0.05, 0, 0));
    auto lms = sim::make_landmarks(30, Vec3(-4, -4, 3), Vec3(4, 4, 6), seed);
    auto compute_disp = [&](const sim::TrajectoryParams& tp) {
      auto frames = sim::synthesize_bearings(tp, world, 10.0, 0.2 / 460.0,
                                             seed, 0, lms, S_cam, 0.25);
      std::vector<double> disp;
      for (size_t f = 1; f < frames.size(); ++f) {
        for (size_t i = 0; i < frames[f].ids.size(); ++i) {
          for (size_t j = 0; j < frames[f - 1].ids.size(); ++j) {
            if (frames[f].ids[i] == frames[f - 1].ids[j])
              disp.push_back((frames[f].uv[i] - frames[f - 1].uv[j]).norm());
          }
        }
      }
      return disp;
    };
    const double thresh = 0.5 / 460.0 * 4.0;  // ~2 px in normalized units
    res.detected_static = zvu_detect(compute_disp(still), thresh);
    res.detected_moving = !zvu_detect(compute_disp(moving), thresh);
  }

  // static run: ZVU keeps |v_hat| near zero under accel bias
  {
    sim::TrajectoryParams tp;
    tp.kind = sim::TrajectoryParams::Kind::Static;
    tp.duration = 5.0;
    sim::NoiseSpec ns;
    ns.seed = seed;
    const Vec3 ba0(0.05, -0.03, 0.02);
    auto imu = sim::synthesize_imu(tp, world, ns, 200.0, 0, Vec3::Zero(), ba0);
    auto run_once = [&](bool with_zvu) {
      MsceqfState st;
      st.max_clones = 11;
      Xi origin;
      origin.b = VecX::Zero(6);
      st.core = eqf::make_initial(sym, origin, MatX());
      VecX p0 = VecX::Constant(25, 1e-4);
      p0.segment<3>(12).setConstant(0.01);
      st.core.Sigma = initial_covariance_transport(MatX(p0.asDiagonal()), sym,
                                                   st.core.Xhat, origin);
      MatX Q12 = MatX::Identity(12, 12) * 1e-6;
      Q12.diagonal().segment<3>(9).setConstant(1e-5);
      const double dt = 1.0 / 200.0;
      int zvu_count = 0;
      for (size_t k = 0; k + 1 < imu.samples.size(); ++k) {
        VecX u = VecX::Zero(12);
        u.head<3>() = imu.samples[k].omega;
        u.segment<3>(3) = imu.samples[k].accel;
        msceqf_propagate(sym, st, u, dt, Q12);
        if (with_zvu && (k % 20 == 19)) {
          auto out = zvu_output(sym, st, Mat3::Identity() * 1e-4,
                                Mat3::Identity() * 1e-4,
                                Mat3::Identity() * 1e-4);
          // full-state update through the core symmetry
          eqf::OutputModel om = out;
          const MatX S =
              om.C * st.core.Sigma * om.C.transpose() + om.R;
          const MatX K = st.core.Sigma * om.C.transpose() * S.inverse();
          const VecX delta = K * om.residual;
          st.core.Xhat = sym.compose(sym.exp(VecX(delta.head<25>())), st.core.Xhat);
          st.core.Sigma = (MatX::Identity(st.dim(), st.dim()) - K * om.C) *
                          st.core.Sigma;
          eqf::psd_repair(st.core.Sigma);
          ++zvu_count;
        }
      }
      return sym.phi(st.core.Xhat, st.core.origin).T.v.norm();
    };
    res.final_speed = run_once(true);
    res.drift_without = run_once(false);
  }
  return res;
}

}  // namespace eqnav::bench
