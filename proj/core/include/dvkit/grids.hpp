#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dvkit/types.hpp"

namespace dvkit {

// `count` equally spaced points on the circle of radius r, starting at angle
// `phase` (in units of the spacing).
std::vector<cplx> circle_points(int count, double radius = 1.0, double phase = 0.0);

// Polar grid: radii k/radial for k = 0..radial (k = radial only when
// `closed`), `angular` angles per ring. The origin appears once.
std::vector<cplx> polar_grid(int radial, int angular, bool closed);

// About `count` points of the closed unit disk, boundary circle included.
std::vector<cplx> closed_disk_points(int count);

// Deterministic generator with a portable uniform draw (the standard
// distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  cplx on_circle() { return unit(2.0 * kPi * uniform()); }
  // Uniform in the disk of the given radius.
  cplx in_disk(double radius = 1.0);
  cplx gaussian_complex();

 private:
  std::mt19937_64 engine_;
};

}  // namespace dvkit
