#pragma once

#include <cstdint>
#include <optional>

#include "eqnav/sym/symmetry.hpp"

namespace eqnav::sim {

using lie::Mat3;
using lie::SE3;
using lie::SE23;
using lie::SO3;
using lie::Vec3;
using lie::VecX;

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so per-(run, sensor) substreams never reshuffle
// each other.
class Rng {
 public:
  Rng(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {}

  double uniform();               // [0, 1)
  double normal();                // N(0, 1)
  Vec3 normal3(double sigma = 1.0);

 private:
  uint64_t seed_, stream_;
  uint64_t counter_ = 0;
  std::optional<double> spare_;
};

uint64_t mix64(uint64_t a, uint64_t b, uint64_t c);

// ---------------------------------------------------------------------------

struct TrajectoryParams {
  enum class Kind { Lissajous, Static } kind = Kind::Lissajous;
  Vec3 amplitude = Vec3(2.0, 1.5, 0.8);
  Vec3 frequency = Vec3(0.2, 0.25, 0.3);  // Hz
  Vec3 phase = Vec3(0.0, M_PI / 3, M_PI / 5);
  double yaw_amplitude = 0.6;   // rad
  double yaw_frequency = 0.15;  // Hz
  double pitch_amplitude = 0.25;
  double roll_amplitude = 0.2;
  double duration = 30.0;       // s
};

struct TrajectorySample {
  Mat3 R;
  Vec3 v, p;
  Vec3 omega_body, accel_body;
};

// Closed-form kinematically consistent sample; throws outside [0, duration].
TrajectorySample analytic_trajectory(const TrajectoryParams& tp,
                                     const sym::WorldParams& world, double t);

// ---------------------------------------------------------------------------

struct NoiseSpec {
  double sigma_w = 8.73e-4;    // rad/sqrt(s) gyro white
  double sigma_bw = 1.75e-5;   // rad/(s sqrt(s)) gyro walk
  double sigma_a = 1.7e-2;     // m/s^2/sqrt(Hz) accel white
  double sigma_ba = 1.0e-2;    // m/(s^2 sqrt(s)) accel walk
  uint64_t seed = 0;
};

struct ImuSample {
  double t;
  Vec3 omega, accel;
};

struct ImuStream {
  std::vector<ImuSample> samples;
  std::vector<Vec3> true_bw, true_ba;  // bias trajectories at sample times
};

// omega_meas = omega + b_w + n, n ~ N(0, sigma_w^2/dt) discrete; biases are
// random walks with sigma sqrt(dt) increments from the given initial values.
ImuStream synthesize_imu(const TrajectoryParams& tp,
                         const sym::WorldParams& world, const NoiseSpec& ns,
                         double rate_hz, uint64_t run, const Vec3& bw0,
                         const Vec3& ba0);

struct SensorSample {
  double t;
  Vec3 value;
};

// Global position measurements pi = p + R t_lever + noise.
std::vector<SensorSample> synthesize_position(
    const TrajectoryParams& tp, const sym::WorldParams& world, double rate_hz,
    double sigma, uint64_t seed, uint64_t run, const Vec3& lever = Vec3::Zero());

// Global velocity measurements nu = v + R w^ t_lever + noise (needs the true
// body rate; noiseless rate used).
std::vector<SensorSample> synthesize_velocity(
    const TrajectoryParams& tp, const sym::WorldParams& world, double rate_hz,
    double sigma, uint64_t seed, uint64_t run, const Vec3& lever = Vec3::Zero());

// Body-frame directions y = S^T R^T d + noise, renormalized.
std::vector<SensorSample> synthesize_direction(
    const TrajectoryParams& tp, const sym::WorldParams& world, double rate_hz,
    double sigma, uint64_t seed, uint64_t run, const Vec3& d_world,
    const Mat3& S_calib);

// Uniform landmarks in an axis-aligned box.
std::vector<Vec3> make_landmarks(int count, const Vec3& lo, const Vec3& hi,
                                 uint64_t seed);

struct BearingFrame {
  double t;
  std::vector<long> ids;
  std::vector<Eigen::Vector2d> uv;  // normalized coordinates
};

// Bearing frames of fixed landmarks seen by a camera with extrinsic S,
// unit-plane projection, in-front + FOV-cone visibility.
std::vector<BearingFrame> synthesize_bearings(
    const TrajectoryParams& tp, const sym::WorldParams& world, double rate_hz,
    double sigma_norm, uint64_t seed, uint64_t run,
    const std::vector<Vec3>& landmarks, const SE3& S_cam,
    double fov_cos = 0.3);

}  // namespace eqnav::sim
