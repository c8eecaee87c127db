#include "eqnav/sim/sim.hpp"

namespace eqnav::sim {

using namespace eqnav::lie;

ImuStream synthesize_imu(const TrajectoryParams& tp,
                         const sym::WorldParams& world, const NoiseSpec& ns,
                         double rate_hz, uint64_t run, const Vec3& bw0,
                         const Vec3& ba0) {
  if (!(rate_hz > 0.0)) throw std::invalid_argument("imu rate must be positive");
  const double dt = 1.0 / rate_hz;
  const int n = static_cast<int>(std::floor(tp.duration * rate_hz)) + 1;
  ImuStream out;
  out.samples.reserve(n);
  Rng rng_w(ns.seed, mix64(run, 1, 0));
  Rng rng_a(ns.seed, mix64(run, 2, 0));
  Rng rng_bw(ns.seed, mix64(run, 3, 0));
  Rng rng_ba(ns.seed, mix64(run, 4, 0));
  Vec3 bw = bw0, ba = ba0;
  const double sw = ns.sigma_w / std::sqrt(dt);
  const double sa = ns.sigma_a / std::sqrt(dt);
  const double sbw = ns.sigma_bw * std::sqrt(dt);
  const double sba = ns.sigma_ba * std::sqrt(dt);
  for (int k = 0; k < n; ++k) {
    const double t = k * dt;
    const TrajectorySample ts = analytic_trajectory(tp, world, std::min(t, tp.duration));
    ImuSample m;
    m.t = t;
    m.omega = ts.omega_body + bw + rng_w.normal3(sw);
    m.accel = ts.accel_body + ba + rng_a.normal3(sa);
    out.samples.push_back(m);
    out.true_bw.push_back(bw);
    out.true_ba.push_back(ba);
    bw += rng_bw.normal3(sbw);
    ba += rng_ba.normal3(sba);
  }
  return out;
}

std::vector<SensorSample> synthesize_position(const TrajectoryParams& tp,
                                              const sym::WorldParams& world,
                                              double rate_hz, double sigma,
                                              uint64_t seed, uint64_t run,
                                              const Vec3& lever) {
  if (!(rate_hz > 0.0)) throw std::invalid_argument("sensor rate must be positive");
  Rng rng(seed, mix64(run, 10, 0));
  std::vector<SensorSample> out;
  const double dt = 1.0 / rate_hz;
  const int n = static_cast<int>(std::floor(tp.duration * rate_hz + 1e-9));
  for (int k = 1; k <= n; ++k) {
    const double t = std::min(k * dt, tp.duration);
    const auto ts = analytic_trajectory(tp, world, t);
    out.push_back({t, Vec3(ts.p + ts.R * lever + rng.normal3(sigma))});
  }
  return out;
}

std::vector<SensorSample> synthesize_velocity(const TrajectoryParams& tp,
                                              const sym::WorldParams& world,
                                              double rate_hz, double sigma,
                                              uint64_t seed, uint64_t run,
                                              const Vec3& lever) {
  if (!(rate_hz > 0.0)) throw std::invalid_argument("sensor rate must be positive");
  Rng rng(seed, mix64(run, 11, 0));
  std::vector<SensorSample> out;
  const double dt = 1.0 / rate_hz;
  const int n = static_cast<int>(std::floor(tp.duration * rate_hz + 1e-9));
  for (int k = 1; k <= n; ++k) {
    const double t = std::min(k * dt, tp.duration);
    const auto ts = analytic_trajectory(tp, world, t);
    out.push_back(
        {t, Vec3(ts.v + ts.R * ts.omega_body.cross(lever) + rng.normal3(sigma))});
  }
  return out;
}

std::vector<SensorSample> synthesize_direction(const TrajectoryParams& tp,
                                               const sym::WorldParams& world,
                                               double rate_hz, double sigma,
                                               uint64_t seed, uint64_t run,
                                               const Vec3& d_world,
                                               const Mat3& S_calib) {
  if (!(rate_hz > 0.0)) throw std::invalid_argument("sensor rate must be positive");
  Rng rng(seed, mix64(run, 12, 0));
  std::vector<SensorSample> out;
  const double dt = 1.0 / rate_hz;
  const int n = static_cast<int>(std::floor(tp.duration * rate_hz + 1e-9));
  for (int k = 1; k <= n; ++k) {
    const double t = std::min(k * dt, tp.duration);
    const auto ts = analytic_trajectory(tp, world, t);
    Vec3 y = S_calib.transpose() * ts.R.transpose() * d_world + rng.normal3(sigma);
    out.push_back({t, Vec3(y.normalized())});
  }
  return out;
}

std::vector<Vec3> make_landmarks(int count, const Vec3& lo, const Vec3& hi,
                                 uint64_t seed) {
  Rng rng(seed, 77);
  std::vector<Vec3> lm;
  lm.reserve(count);
  for (int i = 0; i < count; ++i) {
    Vec3 p;
    for (int k = 0; k < 3; ++k) p(k) = lo(k) + (hi(k) - lo(k)) * rng.uniform();
    lm.push_back(p);
  }
  return lm;
}

std::vector<BearingFrame> synthesize_bearings(
    const TrajectoryParams& tp, const sym::WorldParams& world, double rate_hz,
    double sigma_norm, uint64_t seed, uint64_t run,
    const std::vector<Vec3>& landmarks, const SE3& S_cam, double fov_cos) {
  if (!(rate_hz > 0.0)) throw std::invalid_argument("camera rate must be positive");
  Rng rng(seed, mix64(run, 13, 0));
  std::vector<BearingFrame> out;
  const double dt = 1.0 / rate_hz;
  const int n = static_cast<int>(std::floor(tp.duration * rate_hz + 1e-9));
  for (int k = 1; k <= n; ++k) {
    const double t = std::min(k * dt, tp.duration);
    const auto ts = analytic_trajectory(tp, world, t);
    const SE3 P(SO3(ts.R), ts.p);
    const SE3 PS = P * S_cam;
    BearingFrame f;
    f.t = t;
    for (size_t i = 0; i < landmarks.size(); ++i) {
      const Vec3 cf = PS.inv() * landmarks[i];
      if (cf.z() <= 0.05) continue;  // behind or at the camera
      if (cf.normalized().z() < fov_cos) continue;
      f.ids.push_back(static_cast<long>(i));
      f.uv.push_back(Eigen::Vector2d(cf.x() / cf.z() + rng.normal() * sigma_norm,
                                     cf.y() / cf.z() + rng.normal() * sigma_norm));
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace eqnav::sim
