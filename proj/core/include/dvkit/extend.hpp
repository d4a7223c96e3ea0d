#pragma once

#include <cstdint>
#include <optional>

#include "dvkit/dvrep.hpp"
#include "dvkit/matrix_poly.hpp"
#include "dvkit/poly2.hpp"

namespace dvkit {

// F(z, w) = e_1^t Q(z)^{-1} f(zI, Phi(z)) Q(z, w), with
// Q(z, w) = qmatrix(z) (1, w, ..., w^{m-1})^t.
struct ExtensionOperator {
  UnitaryRealization rep;
  MatrixPolynomial qmatrix;
  BivariatePolynomial f;
};

// Throws InvalidArgument when the block sizes disagree.
ExtensionOperator make_extension(const UnitaryRealization& rep, const MatrixPolynomial& qmatrix,
                                 const BivariatePolynomial& f);

// sum_{j,k} c_jk z^j Phi^k by Horner in Phi.
CMatrix eval_f_of_pair(const BivariatePolynomial& f, cplx z, const CMatrix& phi);

// Throws SingularMatrix when Q(z) is numerically singular.
cplx extend(const ExtensionOperator& op, cplx z, cplx w);

struct BoundReport {
  // sqrt(m) max ||Q(z)^{-1}|| ||Q(z)|| over boundary and interior grids.
  double C = 0.0;
  // max ||Q(z)^{-1}|| |Q(z, w)| over a bidisk grid.
  double per_point_bound = 0.0;
  // Largest interior condition number minus the boundary one (should be <= 0).
  double interior_excess = 0.0;
};

BoundReport extension_bound(const ExtensionOperator& op, int grid_n = 64);

// max |f| over V cap T^2 from unimodular fiber roots over grid_n angles,
// refined locally around the best angle.
double sup_norm_on_variety(const BivariatePolynomial& f, const BivariatePolynomial& p,
                           int grid_n = 256);

struct ExtensionReport {
  BoundReport bound;
  double sup_f_on_variety = 0.0;
  // max |f| at interior variety samples (must not exceed the boundary value).
  double sup_f_interior = 0.0;
  double sup_F_on_bidisk = 0.0;
  double on_variety_residual = 0.0;
  double ratio = 0.0;
  // Constant from the pipeline with z and w exchanged, when computed.
  std::optional<double> swapped_C;
  bool passed = false;
};

ExtensionReport verify_extension(const ExtensionOperator& op, const BivariatePolynomial& p,
                                 const VarietySample& sample, int grid_n = 64);

// Constant C' of the pipeline run on p(w, z); empty when that pipeline fails.
std::optional<double> swapped_constant(const BivariatePolynomial& p, double a = 1.0,
                                       double b = 1.0, std::uint64_t seed = 7);

}  // namespace dvkit
