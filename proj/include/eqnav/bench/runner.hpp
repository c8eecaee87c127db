#pragma once

#include <map>

#include "eqnav/bench/metrics.hpp"
#include "eqnav/msceqf/update.hpp"
#include "eqnav/sim/sim.hpp"
#include "eqnav/sym/variants.hpp"

namespace eqnav::bench {

using sym::Variant;
using sym::WorldParams;
using lie::Vec3;

int worker_count();  // EQNAV_THREADS cap, hardware concurrency fallback

// ------------------------------------------------------ position-based INS

struct InsMcConfig {
  std::vector<Variant> filters = {
      Variant::E_SO3xR12,       Variant::F_SE23xR6,      Variant::C_TwoFrames,
      Variant::D_TangentGroup,  Variant::A_DirectPosition,
      Variant::B_SemiDirectBias};
  sim::TrajectoryParams traj;
  sim::NoiseSpec noise;
  WorldParams world;
  double imu_rate = 200.0;
  double pos_rate = 10.0;
  double pos_sigma = 0.2;
  double init_att_sigma_deg = 20.0;
  double init_pos_sigma = 1.0;
  double init_vel_sigma = 0.3;
  double init_bw_sigma = 0.01;
  double init_ba_sigma = 0.01;
  double bnu_prior_sigma = 0.05;
  double bnu_walk_sigma = 1e-3;
  // TG-only b_nu = 0 constraint pseudo-measurement (applied at pos_rate)
  bool bnu_constraint = false;
  double bnu_constraint_sigma = 1e-3;
  int runs = 100;
  uint64_t seed = 1;
  double gcu_alpha = -1.0;  // < 0 disables
  // consistency-study default: the curvature transport is a small-correction
  // expansion and is switched off for the Monte-Carlo ANEES comparisons
  bool curvature_correction = false;
};

struct FilterMcResult {
  AneesSeries anees;
  std::vector<double> t;
  std::vector<double> rmse_att, rmse_vel, rmse_pos, rmse_bw, rmse_ba;
  TransientAsymptotic anees_ta;
};

std::map<Variant, FilterMcResult> run_ins_montecarlo(const InsMcConfig& cfg);

// Single deterministic run; series for the CSV writers.
struct SingleRun {
  std::vector<double> t;
  std::vector<sym::Xi> truth;       // at measurement epochs
  std::vector<sym::Xi> estimate;
  std::vector<lie::VecX> sigma_diag;
};
SingleRun run_ins_single(const InsMcConfig& cfg, Variant v, uint64_t run_index);

// ---------------------------------------------------------------- attitude

struct AttMcConfig {
  sim::TrajectoryParams traj;
  WorldParams world;
  double imu_rate = 200.0;
  double mag_rate = 100.0, mag_sigma = 0.2;
  double gnss_rate = 20.0, gnss_sigma = 0.1;
  double sigma_w = 8.73e-4, sigma_bw = 1.75e-5;
  double init_att_sigma_deg = 10.0;
  double calib_prior_deg = 20.0;
  double bias_prior = 0.05;
  int runs = 50;
  uint64_t seed = 2;
};

struct AttMcResult {
  std::vector<double> t;
  std::vector<double> rmse_att_deg, rmse_calib_deg, rmse_bias;
  TransientAsymptotic att_ta;  // of rmse_att_deg
};

std::map<Variant, AttMcResult> run_att_montecarlo(const AttMcConfig& cfg);

// ------------------------------------------------------------------- VINS

struct VinsMcConfig {
  sim::TrajectoryParams traj;
  WorldParams world;
  double imu_rate = 200.0;
  double cam_rate = 10.0;
  double pixel_sigma = 1.0;   // px, mapped through fx
  double fx = 460.0;
  int n_landmarks = 50;
  int max_clones = 11;
  int runs = 25;
  uint64_t seed = 3;
  sim::NoiseSpec noise;
  double init_att_sigma_deg = 2.0;
  double init_pos_sigma = 0.05;
  double init_vel_sigma = 0.05;
  double init_bw_sigma = 5e-3;
  double init_ba_sigma = 5e-3;
  // reference change applied to truth and measurements (consistency check)
  double ref_yaw = 0.0;
  Vec3 ref_translation = Vec3::Zero();
};

struct VinsRunResult {
  std::vector<double> t;
  std::vector<lie::VecX> pose_eps;  // log_SE3(P0^-1 P Phat^-1 P0)
  std::vector<lie::MatX> pose_cov;
  std::vector<double> pos_err, att_err;
};

VinsRunResult run_vins_single(const VinsMcConfig& cfg, uint64_t run_index);

struct VinsMcResult {
  AneesSeries anees;
  std::vector<double> rmse_pos, rmse_att;
};
VinsMcResult run_vins_montecarlo(const VinsMcConfig& cfg);

// --------------------------------------------------------------- scenarios

// Variant-B filter on a static trajectory with noiseless position updates;
// returns the peak yaw deviation from the initial yaw estimate over the run.
double static_yaw_drift(double duration_s, double init_yaw_err_rad);

struct CertifyRow {
  std::string matrix;
  double max_dev;
  double tol;
  bool pass;
};
// Runs the numerical-differentiation certification over every analytic
// matrix; n_states random states per matrix.
std::vector<CertifyRow> certify_all(double tol, int n_states, uint64_t seed);

struct TriBenchRow {
  std::string method;
  double median_err_noiseless;
  double median_err_noisy;
  double mean_reproj_cost;
};
std::vector<TriBenchRow> triangulate_bench(int n_scenes, uint64_t seed);

struct ZvuDemoResult {
  bool detected_static;
  bool detected_moving;
  double final_speed;       // |v_hat| after ZVU updates on a static stream
  double drift_without;     // |v_hat| without ZVU
};
ZvuDemoResult zvu_demo(uint64_t seed);

}  // namespace eqnav::bench
