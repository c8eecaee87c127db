#include "eqnav/sim/sim.hpp"

namespace eqnav::sim {

using namespace eqnav::lie;

namespace {

struct Euler {
  double yaw, pitch, roll;
  double dyaw, dpitch, droll;
};

Euler euler_profile(const TrajectoryParams& tp, double t) {
  Euler e;
  const double wy = 2.0 * M_PI * tp.yaw_frequency;
  // pitch/roll share the yaw frequency with offsets; amplitudes configurable
  e.yaw = tp.yaw_amplitude * std::sin(wy * t);
  e.dyaw = tp.yaw_amplitude * wy * std::cos(wy * t);
  e.pitch = tp.pitch_amplitude * std::sin(wy * t + M_PI / 4);
  e.dpitch = tp.pitch_amplitude * wy * std::cos(wy * t + M_PI / 4);
  e.roll = tp.roll_amplitude * std::sin(wy * t + M_PI / 2);
  e.droll = tp.roll_amplitude * wy * std::cos(wy * t + M_PI / 2);
  return e;
}

}  // namespace

TrajectorySample analytic_trajectory(const TrajectoryParams& tp,
                                     const sym::WorldParams& world, double t) {
  if (t < 0.0 || t > tp.duration)
    throw std::domain_error("analytic_trajectory: t outside [0, duration]");
  TrajectorySample s;
  if (tp.kind == TrajectoryParams::Kind::Static) {
    s.R = Mat3::Identity();
    s.v = Vec3::Zero();
    s.p = Vec3::Zero();
    s.omega_body = Vec3::Zero();
    s.accel_body = -world.gravity();
    return s;
  }
  Vec3 p, v, a;
  for (int i = 0; i < 3; ++i) {
    const double w = 2.0 * M_PI * tp.frequency(i);
    p(i) = tp.amplitude(i) * std::sin(w * t + tp.phase(i));
    v(i) = tp.amplitude(i) * w * std::cos(w * t + tp.phase(i));
    a(i) = -tp.amplitude(i) * w * w * std::sin(w * t + tp.phase(i));
  }
  const Euler e = euler_profile(tp, t);
  const Mat3 Rz = exp_so3(Vec3(0, 0, e.yaw));
  const Mat3 Ry = exp_so3(Vec3(0, e.pitch, 0));
  const Mat3 Rx = exp_so3(Vec3(e.roll, 0, 0));
  s.R = Rz * Ry * Rx;
  // body rate of R = Rz Ry Rx: omega = Rx^T Ry^T e3' terms
  const Vec3 ez(0, 0, 1), ey(0, 1, 0), ex(1, 0, 0);
  s.omega_body = (Rx.transpose() * Ry.transpose() * ez) * e.dyaw +
                 (Rx.transpose() * ey) * e.dpitch + ex * e.droll;
  s.p = p;
  s.v = v;
  s.accel_body = s.R.transpose() * (a - world.gravity());
  return s;
}

}  // namespace eqnav::sim
