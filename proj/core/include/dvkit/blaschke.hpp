#pragma once

#include <vector>

#include "dvkit/dvrep.hpp"
#include "dvkit/matrix_poly.hpp"
#include "dvkit/poly2.hpp"

namespace dvkit {

// prod_k (z - alpha_k) / (1 - conj(alpha_k) z) with |alpha_k| < 1.
struct BlaschkeProduct {
  std::vector<cplx> zeros;

  cplx operator()(cplx z) const;
  std::vector<cplx> numerator() const;
  std::vector<cplx> denominator() const;
};

// denominator(z) w^m - numerator(z), degree (k, m).
BivariatePolynomial blaschke_variety(const BlaschkeProduct& b, int m);

// Unitary (1+k) x (1+k) matrix [a, beta; gamma, delta] with
// b(z) = a + z beta (I - z delta)^{-1} gamma.
CMatrix blaschke_colligation(const BlaschkeProduct& b);

// Realization of Phi(z) = J + b(z) e_m e_1^t (J the upper shift), so that
// det(wI - Phi(z)) = w^m - b(z) and Phi(z) (1, w, ..., w^{m-1})^t = w (...) on
// the variety.
UnitaryRealization companion_realization(const BlaschkeProduct& b, int m);

// Q(z) = I_m, i.e. Q(z, w) = (1, w, ..., w^{m-1}).
MatrixPolynomial identity_qmatrix(int m);

}  // namespace dvkit
