#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "eqnav/bench/config.hpp"
#include "eqnav/bench/csv.hpp"

namespace {

using namespace eqnav;
using namespace eqnav::bench;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCertify = 3;
constexpr int kExitNumeric = 4;

sym::Variant variant_from_name(const std::string& name) {
  for (sym::Variant v :
       {sym::Variant::E_SO3xR12, sym::Variant::F_SE23xR6,
        sym::Variant::C_TwoFrames, sym::Variant::D_TangentGroup,
        sym::Variant::A_DirectPosition, sym::Variant::B_SemiDirectBias}) {
    if (name == sym::variant_name(v)) return v;
  }
  throw std::runtime_error("unknown filter name: " + name +
                           " (expected mekf|iekf|tfg|tg|dp|sd)");
}

InsMcConfig ins_config(const bench::Config* cfg, int runs, uint64_t seed,
                       const std::vector<std::string>& filters) {
  InsMcConfig c;
  c.runs = runs;
  c.seed = seed;
  if (!filters.empty()) {
    c.filters.clear();
    for (const auto& f : filters) c.filters.push_back(variant_from_name(f));
  }
  if (!cfg) return c;
  bench::Config& k = *const_cast<bench::Config*>(cfg);
  c.traj.duration = k.number_or("trajectory", "duration", c.traj.duration);
  for (int i = 0; i < 3; ++i) {
    c.traj.amplitude(i) = k.number_or("trajectory", "amplitude_" + std::string(1, char('x' + i)), c.traj.amplitude(i));
    c.traj.frequency(i) = k.number_or("trajectory", "frequency_" + std::string(1, char('x' + i)), c.traj.frequency(i));
  }
  if (k.text_or("trajectory", "kind", "lissajous") == "static")
    c.traj.kind = sim::TrajectoryParams::Kind::Static;
  c.traj.yaw_amplitude = k.number_or("trajectory", "yaw_amplitude", c.traj.yaw_amplitude);
  c.imu_rate = k.number_or("imu", "rate", c.imu_rate);
  c.noise.sigma_w = k.number_or("imu", "sigma_w", c.noise.sigma_w);
  c.noise.sigma_a = k.number_or("imu", "sigma_a", c.noise.sigma_a);
  c.noise.sigma_bw = k.number_or("imu", "sigma_bw", c.noise.sigma_bw);
  c.noise.sigma_ba = k.number_or("imu", "sigma_ba", c.noise.sigma_ba);
  c.pos_rate = k.number_or("sensors", "position_rate", c.pos_rate);
  c.pos_sigma = k.number_or("sensors", "position_sigma", c.pos_sigma);
  c.init_att_sigma_deg = k.number_or("init", "attitude_sigma_deg", c.init_att_sigma_deg);
  c.init_pos_sigma = k.number_or("init", "position_sigma", c.init_pos_sigma);
  c.init_vel_sigma = k.number_or("init", "velocity_sigma", c.init_vel_sigma);
  c.init_bw_sigma = k.number_or("init", "gyro_bias_sigma", c.init_bw_sigma);
  c.init_ba_sigma = k.number_or("init", "accel_bias_sigma", c.init_ba_sigma);
  c.gcu_alpha = k.number_or("filters", "gcu_alpha", c.gcu_alpha);
  if (k.has("run", "runs")) c.runs = static_cast<int>(k.integer("run", "runs"));
  if (k.has("run", "seed")) c.seed = static_cast<uint64_t>(k.integer("run", "seed"));
  k.ensure_all_consumed();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equivariant inertial navigation benchmark"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir = ".", filter_arg;
  int runs = 0;
  uint64_t seed = 1;
  double tolerance = 1e-4;
  app.add_option("--config", config_path, "config file (key=value sections)");
  app.add_option("--runs", runs, "Monte-Carlo run count");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--filter", filter_arg, "comma-separated filter names");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--tolerance", tolerance, "certification tolerance");

  auto* sim_cmd = app.add_subcommand("simulate", "one run, write truth/estimate CSVs");
  auto* mc_cmd = app.add_subcommand("montecarlo", "Monte-Carlo consistency study");
  auto* cert_cmd = app.add_subcommand("certify", "numerical-differentiation certification");
  auto* tri_cmd = app.add_subcommand("triangulate-bench", "compare triangulation methods");
  auto* zvu_cmd = app.add_subcommand("zvu-demo", "static-scenario zero-velocity study");

  CLI11_PARSE(app, argc, argv);

  std::vector<std::string> filters;
  if (!filter_arg.empty()) {
    std::istringstream ss(filter_arg);
    std::string item;
    while (std::getline(ss, item, ',')) filters.push_back(item);
  }

  std::optional<bench::Config> cfg;
  if (!config_path.empty()) {
    try {
      cfg = bench::Config::parse_file(config_path);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    }
  }

  std::filesystem::create_directories(out_dir);
  auto out_path = [&](const std::string& f) { return out_dir + "/" + f; };

  try {
    if (*cert_cmd) {
      const auto rows = certify_all(tolerance, 20, seed);
      write_certify_csv(out_path("certify.csv"), rows);
      bool all_pass = true;
      for (const auto& r : rows) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.matrix
                  << "  max_dev=" << r.max_dev << "  tol=" << r.tol << "\n";
        all_pass = all_pass && r.pass;
      }
      return all_pass ? kExitOk : kExitCertify;
    }
    if (*sim_cmd) {
      InsMcConfig c;
      try {
        c = ins_config(cfg ? &*cfg : nullptr, runs > 0 ? runs : 1, seed, filters);
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
      }
      for (sym::Variant v : c.filters) {
        const auto run = run_ins_single(c, v, 0);
        const std::string name = sym::variant_name(v);
        write_truth_csv(out_path("truth.csv"), run);
        write_estimate_csv(out_path("est_" + name + ".csv"), run);
        std::cout << "wrote " << out_path("est_" + name + ".csv") << " ("
                  << run.t.size() << " epochs)\n";
      }
      return kExitOk;
    }
    if (*mc_cmd) {
      InsMcConfig c;
      try {
        c = ins_config(cfg ? &*cfg : nullptr, runs > 0 ? runs : 100, seed, filters);
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
      }
      const auto results = run_ins_montecarlo(c);
      for (const auto& [v, res] : results) {
        const std::string name = sym::variant_name(v);
        write_anees_csv(out_path("anees_" + name + ".csv"), res.anees);
        CsvWriter w(out_path("rmse_" + name + ".csv"),
                    {"t", "att_deg", "vel", "pos", "bw", "ba"});
        for (size_t k = 0; k < res.t.size(); ++k)
          w.row({res.t[k], res.rmse_att[k], res.rmse_vel[k], res.rmse_pos[k],
                 res.rmse_bw[k], res.rmse_ba[k]});
        std::cout << name << ": ANEES transient=" << res.anees_ta.transient
                  << " asymptotic=" << res.anees_ta.asymptotic << "\n";
      }
      return kExitOk;
    }
    if (*tri_cmd) {
      const auto rows = triangulate_bench(runs > 0 ? runs : 100, seed);
      CsvWriter w(out_path("triangulate_bench.csv"),
                  {"method", "median_err_noiseless", "median_err_noisy",
                   "mean_reproj_cost"});
      for (const auto& r : rows) {
        std::ostringstream line;
        line << r.method << "," << r.median_err_noiseless << ","
             << r.median_err_noisy << "," << r.mean_reproj_cost;
        w.raw_row(line.str());
        std::cout << r.method << ": noiseless=" << r.median_err_noiseless
                  << " noisy=" << r.median_err_noisy << "\n";
      }
      return kExitOk;
    }
    if (*zvu_cmd) {
      const auto res = zvu_demo(seed);
      std::cout << "static stream detected: " << res.detected_static
                << "\nmoving stream rejected: " << res.detected_moving
                << "\n|v| with ZVU: " << res.final_speed
                << "\n|v| without:  " << res.drift_without << "\n";
      CsvWriter w(out_path("zvu_demo.csv"),
                  {"detected_static", "detected_moving", "speed_with_zvu",
                   "speed_without"});
      w.row({res.detected_static ? 1.0 : 0.0, res.detected_moving ? 1.0 : 0.0,
             res.final_speed, res.drift_without});
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
