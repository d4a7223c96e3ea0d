#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "dvkit/matrix_poly.hpp"
#include "dvkit/moments.hpp"
#include "dvkit/poly2.hpp"

namespace dvkit {

enum class CertificateKind { ColeWermer, Symmetric, DV };

std::string_view to_string(CertificateKind kind) noexcept;
CertificateKind certificate_kind_from_string(std::string_view s);

// The identity certified, for q of degree (n, m):
//   ColeWermer: |q|^2 - |q~|^2 = (1-|z|^2)|first|^2 + (1-|w|^2)|second|^2
//   Symmetric:  (an+bm)|q|^2 - 2Re[(a z q_z + b w q_w) conj q]
//                   = (1-|z|^2)|first|^2 + (1-|w|^2)|second|^2
//   DV:         (bm-an)|p|^2 + 2Re[(a z p_z - b w p_w) conj p] + (1-|z|^2)|first|^2
//                   = (1-|w|^2)|second|^2
// `first` has n components of degree (n-1, m), `second` has m components of
// degree (n, m-1).
struct SosCertificate {
  CertificateKind kind = CertificateKind::ColeWermer;
  double a = 0.0;
  double b = 0.0;
  Degree degree;
  VectorPolynomial vec_first;
  VectorPolynomial vec_second;
  // first = matrix_first(w) (1, z, ..., z^{n-1})^t
  std::optional<MatrixPolynomial> matrix_first;
  // second = matrix_second(z) (1, w, ..., w^{m-1})^t
  std::optional<MatrixPolynomial> matrix_second;
  // "moments" or "dilation"
  std::string route = "moments";
};

// Orthonormal bases (under the moment inner product) of
//   {deg <= (n-1, m)} minus the w-shifted block {w z^i w^j : i <= n-1, j <= m-1}
//   {deg <= (n, m-1)} minus {deg <= (n-1, m-1)}.
// Throws SubspaceDegenerate when the complements are not of dimension n and m.
std::pair<VectorPolynomial, VectorPolynomial> subspace_kernel_pair(const BivariatePolynomial& q,
                                                                   const MomentTable& mu);

// Cole-Wermer certificate. Uses torus moments when q has no zeros on T^2 and
// falls back to dilation q(rz, rw), r -> 1, with extrapolation of the kernel
// matrices otherwise.
SosCertificate sos_certificate(const BivariatePolynomial& q, int grid_size = 0);

// Fills matrix_first / matrix_second from the vectors.
void attach_matrix_forms(SosCertificate& cert);

struct GwReport {
  // Minimum singular value of A(w) over w in the closed disk; empty when n = 0.
  std::optional<double> min_sigma_first;
  // Minimum singular value of z^n conj(B(1/conj z)); empty when m = 0.
  std::optional<double> min_sigma_second;
  double threshold = 1e-6;
  int grid_n = 0;
  bool passed = false;
};

GwReport gw_invertibility(const SosCertificate& cert, int grid_n = 64, double threshold = 1e-6);

// Certificate for T^2-symmetric q built from a q~_z + b q~_w. Throws
// NotSymmetric, InvalidArgument for bad weights, ReflectedCombinationVanishes
// when that combination has zeros in the closed bidisk off T^2.
SosCertificate sym_sos_certificate(const BivariatePolynomial& q, double a = 1.0, double b = 1.0);

struct VerificationReport {
  int grid_n = 0;
  // Residuals are divided by scale(q)^2.
  double grid_residual = 0.0;
  double random_residual = 0.0;
  double polarized_residual = 0.0;
  double max_residual = 0.0;
  double threshold = 1e-7;
  bool passed = false;
};

// Residual of the certificate identity H(x, y) (polarized form; the diagonal
// x = y gives the displayed identity).
cplx certificate_identity(const BivariatePolynomial& q, const SosCertificate& cert, Point2 x,
                          Point2 y);

VerificationReport verify_certificate(const BivariatePolynomial& q, const SosCertificate& cert,
                                      int grid_n = 64, double threshold = 1e-7,
                                      std::uint64_t seed = 0x5eed);

}  // namespace dvkit
