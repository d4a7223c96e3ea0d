#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "dvkit/grids.hpp"
#include "dvkit/poly2.hpp"

namespace dvkit::testing {

inline BivariatePolynomial random_poly(Rng& rng, Degree d) {
  BivariatePolynomial p(d);
  for (int i = 0; i <= d.z; ++i) {
    for (int j = 0; j <= d.w; ++j) p.coeff(i, j) = rng.gaussian_complex();
  }
  return p;
}

// Uniform in {0, ..., max}.
inline int random_int(Rng& rng, int max) {
  return std::min(max, static_cast<int>(rng.uniform() * (max + 1)));
}

// Random q with q = reflect(q): c_ij + conj(c_{n-i, m-j}).
inline BivariatePolynomial random_symmetric(Rng& rng, Degree d) {
  const BivariatePolynomial p = random_poly(rng, d);
  return p + reflect(p);
}

inline BivariatePolynomial z3_minus_w2() {
  return BivariatePolynomial::monomial(3, 0, 1.0, Degree{3, 2}) -
         BivariatePolynomial::monomial(0, 2, 1.0, Degree{3, 2});
}
inline BivariatePolynomial w3_minus_z2() { return swap_variables(z3_minus_w2()); }
inline BivariatePolynomial one_minus_z3w2() {
  return BivariatePolynomial::constant(1.0, {3, 2}) - BivariatePolynomial::monomial(3, 2);
}
// c - z - w
inline BivariatePolynomial linear(double c) {
  return BivariatePolynomial::from_rows({{c, -1.0}, {-1.0, 0.0}});
}
inline BivariatePolynomial zw_minus_one_squared() {
  return BivariatePolynomial::from_rows({{1.0, 0.0, 0.0}, {0.0, -2.0, 0.0}, {0.0, 0.0, 1.0}});
}

}  // namespace dvkit::testing
