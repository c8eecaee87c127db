#include "eqnav/sim/sim.hpp"

namespace eqnav::sim {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

uint64_t mix64(uint64_t a, uint64_t b, uint64_t c) {
  return splitmix64(splitmix64(splitmix64(a) ^ b) ^ c);
}

double Rng::uniform() {
  const uint64_t v = mix64(seed_, stream_, counter_++);
  return (v >> 11) * (1.0 / 9007199254740992.0);
}

double Rng::normal() {
  if (spare_) {
    const double s = *spare_;
    spare_.reset();
    return s;
  }
  // Box-Muller; deterministic across platforms
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * M_PI * u2);
  return r * std::cos(2.0 * M_PI * u2);
}

Vec3 Rng::normal3(double sigma) {
  return Vec3(normal(), normal(), normal()) * sigma;
}

}  // namespace eqnav::sim
