#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dvkit/matrix_poly.hpp"
#include "dvkit/poly2.hpp"
#include "dvkit/soscert.hpp"

namespace dvkit {

// (1 - z conj Z) <P(x), P(y)> = (1 - w conj W) <Q(x), Q(y)> on the variety.
struct DvCertificate {
  // Symmetrized defining polynomial, degree (n, m).
  BivariatePolynomial p;
  double a = 1.0;
  double b = 1.0;
  VectorPolynomial P;  // n components, degree (n-1, m)
  VectorPolynomial Q;  // m components, degree (n, m-1)
  // Q(z, w) = qmatrix(z) (1, w, ..., w^{m-1})^t; m x m, degree n.
  MatrixPolynomial qmatrix;
  bool smooth_on_torus = true;

  // The same data as a DV-kind certificate for verify_certificate.
  SosCertificate as_sos() const;
};

// Symmetrizes p, certifies z^n p(1/z, w) with the symmetric construction and
// reverses the z-index. For inputs smooth on T^2, throws TheoremViolation if
// qmatrix(z) is singular somewhere on the closed disk.
DvCertificate dv_certificate(const BivariatePolynomial& p, double a = 1.0, double b = 1.0);

struct VarietySample {
  std::vector<Point2> points;
  std::vector<double> residuals;  // |p| at each point
};

// Default sample size max(3(m+n), m+n+10) + 10 for degree (n, m).
int default_sample_count(Degree d);

// Points of V in the bidisk from fibers over z on circles of radius
// 0.3, 0.5, 0.7, 0.85 (seeded angular jitter), Newton-polished in w.
// Throws InsufficientSpan if fewer than m + n points are found.
VarietySample sample_variety(const BivariatePolynomial& p, int target_count,
                             std::uint64_t seed = 7);

struct UnitaryRealization {
  int m = 0;
  int n = 0;
  CMatrix U;
  // Diagnostics from construction (zero for hand-built realizations).
  double gram_residual = 0.0;
  int rank = 0;

  CMatrix A() const { return U.topLeftCorner(m, m); }
  CMatrix B() const { return U.topRightCorner(m, n); }
  CMatrix C() const { return U.bottomLeftCorner(n, m); }
  CMatrix D() const { return U.bottomRightCorner(n, n); }
};

// Unitary U with U (Q; zP) = (wQ; P) at every sample point. Throws
// IsometryViolated, InsufficientSpan (fewer than m + n + 10 samples, or the
// last 10 samples raise the rank), or
// UnimodularDEigenvalue.
UnitaryRealization lurking_isometry(const DvCertificate& cert, const VarietySample& sample);

// A + z B (I - z D)^{-1} C. Throws SingularMatrix when I - zD is singular.
CMatrix phi_evaluate(const UnitaryRealization& rep, cplx z);

double spectral_radius(const CMatrix& m);

// det([A - wI, zB; C, zD - I]) as a polynomial of degree (n, m), by
// interpolation at roots of unity.
BivariatePolynomial det_representation(const UnitaryRealization& rep);

// max |a - lambda b| / scale(a) for the least-squares constant lambda.
double proportionality_residual(const BivariatePolynomial& a, const BivariatePolynomial& b);

struct RepresentationReport {
  double det_on_variety = 0.0;     // max |det(wI - Phi(z))| over samples
  double eigen_relation = 0.0;     // max |Phi Q - w Q| / max |Q|
  double det_coefficients = 0.0;   // proportionality residual vs p
  double unitarity = 0.0;          // max |U*U - I|
  double boundary_unitarity = 0.0; // max |Phi*Phi - I| over 128 angles
  double gram_residual = 0.0;
  double d_spectral_radius = 0.0;
  bool smooth_on_torus = true;
  // min sigma_min(Q(z)) / max |Q(z)| over the closed disk; empty when skipped.
  std::optional<double> qmatrix_min_sigma;
  bool passed = false;
};

RepresentationReport verify_representation(const BivariatePolynomial& p,
                                           const DvCertificate& cert,
                                           const UnitaryRealization& rep,
                                           const VarietySample& sample, int grid_n = 64);

}  // namespace dvkit
