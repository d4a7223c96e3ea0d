#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "dvkit/poly2.hpp"

namespace dvkit {

enum class ZeroLabel {
  StableOpen,                     // no zeros on the open bidisk
  StableClosed,                   // no zeros on the closed bidisk
  DVDefining,                     // zeros inside D^2 u T^2 u E^2
  SymmetricNonvanishingOffTorus,  // torus-symmetric, no zeros on closed bidisk minus T^2
  Indeterminate,
};

std::string_view to_string(ZeroLabel label) noexcept;
ZeroLabel zero_label_from_string(std::string_view s);

struct ClassifyOptions {
  int grid_n = 64;
  double tol = 1e-7;
  // Samples this close to T^2 (max metric) are skipped in the modulus sweep.
  double torus_margin = 0.02;
  std::uint64_t seed = 0x5eed;
};

// Affirmative labels are numerically certified at the recorded resolution;
// witnesses are only reported for Indeterminate.
struct ZeroClass {
  ZeroLabel label = ZeroLabel::Indeterminate;
  std::vector<Point2> witnesses;
  int grid_n = 0;
  double tol = 0.0;
  double torus_margin = 0.0;
  SymmetryKind symmetry = SymmetryKind::NotSymmetric;
  bool squarefree = true;
};

struct SingularityReport {
  std::vector<Point2> points;
  bool smooth_on_torus = true;
};

// Roots of the coefficient list c (c[k] multiplies x^k) from companion-matrix
// eigenvalues. Leading coefficients below `drop_tol` (absolute) are trimmed,
// which drops roots at infinity.
std::vector<cplx> polynomial_roots(std::vector<cplx> c, double drop_tol = 0.0);

// All roots in w of p(z, .), with repetition. Throws FiberDegenerate when the
// fiber vanishes identically.
std::vector<cplx> fiber_roots(const BivariatePolynomial& p, cplx z);
// Roots in z of p(., w).
std::vector<cplx> fiber_roots_in_z(const BivariatePolynomial& p, cplx w);

struct RootCluster {
  cplx center;
  int multiplicity = 1;
};
std::vector<RootCluster> cluster_roots(const std::vector<cplx>& roots, double radius = 1e-6);

// Trapezoidal value of (1/2 pi i) \oint_T p_w/p dw before rounding.
double root_count_integral(const BivariatePolynomial& p, cplx z, int quad_points);
// Number of roots of p(z, .) in the open disk; throws ZeroOnFiberCircle or
// QuadratureUnresolved.
int root_count_in_disk(const BivariatePolynomial& p, cplx z, int quad_points);
// Default node count max(256, 16(n+m)), doubled until two values agree.
int root_count_in_disk(const BivariatePolynomial& p, cplx z);

// Sylvester resultant of two coefficient lists divided by its Hadamard bound.
double normalized_resultant(const std::vector<cplx>& a, const std::vector<cplx>& b);

// False when Res_w(p, p_w) vanishes at five random z (a repeated factor).
bool is_squarefree(const BivariatePolynomial& p, std::uint64_t seed = 0x5eed);

ZeroClass classify_zero_set(const BivariatePolynomial& p, const ClassifyOptions& opts = {});

SingularityReport torus_singularities(const BivariatePolynomial& p, int grid_n = 64,
                                      double tol = 1e-7);

}  // namespace dvkit
