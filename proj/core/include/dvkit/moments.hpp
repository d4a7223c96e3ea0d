#pragma once

#include <utility>
#include <vector>

#include "dvkit/poly2.hpp"
#include "dvkit/types.hpp"

namespace dvkit {

// Moments mu(a, b) = \int_{T^2} z^a w^b d rho of the probability measure
// d rho = c^2 / |q|^2 dm, for |a| <= range.z and |b| <= range.w.
struct MomentTable {
  BivariatePolynomial q;
  double normalizer_c = 0.0;
  Degree range;
  // Nodes per torus direction of the accepted grid (outer count for the
  // adaptive rule).
  int grid_size = 0;
  std::vector<cplx> values;

  cplx operator()(int a, int b) const;
};

// Uniform torus grid, moments as 2D DFT coefficients of c^2/|q|^2.
// grid_size = 0 picks the smallest power of two >= max(256, 16(n+m)) and
// doubles (up to 4096) until consecutive grids agree to 1e-9; an explicit
// grid_size is checked once against 2 grid_size. Throws ZeroOnTorus or
// QuadratureUnresolved.
MomentTable compute_moments(const BivariatePolynomial& q, int grid_size = 0);

// Fiberwise adaptive trapezoid rule for sharply peaked densities (q with
// zeros close to T^2): each inner z-rule is refined independently, the outer
// w-rule is refined by reusing nodes. Throws ZeroOnTorus or
// QuadratureUnresolved.
MomentTable compute_moments_adaptive(const BivariatePolynomial& q);

// G(r, s) = <x_s, x_r>_rho = mu(s - r) for monomial exponents x_r = z^i w^j.
CMatrix gram_matrix(const MomentTable& mu, const std::vector<std::pair<int, int>>& monomials);

}  // namespace dvkit
