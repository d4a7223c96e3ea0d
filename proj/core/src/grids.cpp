#include "dvkit/grids.hpp"

#include <algorithm>
#include <cmath>

namespace dvkit {

std::vector<cplx> circle_points(int count, double radius, double phase) {
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    out.push_back(radius * unit(2.0 * kPi * (k + phase) / count));
  }
  return out;
}

std::vector<cplx> polar_grid(int radial, int angular, bool closed) {
  std::vector<cplx> out{cplx{}};
  const int last = closed ? radial : radial - 1;
  for (int k = 1; k <= last; ++k) {
    const double r = static_cast<double>(k) / radial;
    // Stagger alternate rings by half a step.
    const auto ring = circle_points(angular, r, (k % 2) * 0.5);
    out.insert(out.end(), ring.begin(), ring.end());
  }
  return out;
}

std::vector<cplx> closed_disk_points(int count) {
  const int radial = std::max(2, static_cast<int>(std::lround(std::sqrt(count) / 2.0)));
  const int angular = std::max(4, (count + radial - 1) / radial);
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(radial * angular));
  for (int k = 1; k <= radial; ++k) {
    const auto ring = circle_points(angular, static_cast<double>(k) / radial, (k % 2) * 0.5);
    out.insert(out.end(), ring.begin(), ring.end());
  }
  return out;
}

cplx Rng::in_disk(double radius) {
  const double r = radius * std::sqrt(uniform());
  return r * on_circle();
}

cplx Rng::gaussian_complex() {
  // Box-Muller on the portable uniform draw.
  const double u1 = std::max(uniform(), 1e-300);
  const double u2 = uniform();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  return {mag * std::cos(2.0 * kPi * u2), mag * std::sin(2.0 * kPi * u2)};
}

}  // namespace dvkit
