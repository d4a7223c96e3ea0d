#include "dvkit/soscert.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dvkit/classify.hpp"
#include "dvkit/error.hpp"
#include "dvkit/grids.hpp"
#include "dvkit/parallel.hpp"

namespace dvkit {

std::string_view to_string(CertificateKind kind) noexcept {
  switch (kind) {
    case CertificateKind::ColeWermer: return "ColeWermer";
    case CertificateKind::Symmetric: return "Symmetric";
    case CertificateKind::DV: return "DV";
  }
  return "ColeWermer";
}

CertificateKind certificate_kind_from_string(std::string_view s) {
  for (auto k : {CertificateKind::ColeWermer, CertificateKind::Symmetric, CertificateKind::DV}) {
    if (to_string(k) == s) return k;
  }
  throw Error(ErrorCode::Parse, "unknown certificate kind '" + std::string(s) + "'");
}

namespace {

using Monomials = std::vector<std::pair<int, int>>;

// Orthonormal basis of span(rest) minus span(sub), as polynomials at `degree`.
VectorPolynomial orthogonal_complement(const MomentTable& mu, const Monomials& sub,
                                       const Monomials& rest, Degree degree) {
  if (rest.empty()) return {};
  Monomials all = sub;
  all.insert(all.end(), rest.begin(), rest.end());
  const CMatrix g = gram_matrix(mu, all);
  const auto k = static_cast<Eigen::Index>(sub.size());
  const auto r = static_cast<Eigen::Index>(rest.size());

  CMatrix coef(k + r, r);
  CMatrix schur;
  if (k > 0) {
    const CMatrix x = g.topLeftCorner(k, k).ldlt().solve(g.topRightCorner(k, r));
    schur = g.bottomRightCorner(r, r) - g.topRightCorner(k, r).adjoint() * x;
    coef.topRows(k) = -x;
  } else {
    schur = g;
  }
  coef.bottomRows(r).setIdentity();

  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (schur + schur.adjoint()));
  const double floor = 1e-12 * g.trace().real();
  if (es.eigenvalues().minCoeff() <= floor) {
    throw Error(ErrorCode::SubspaceDegenerate,
                "complement has dimension below " + std::to_string(r));
  }
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().array().rsqrt();
  const CMatrix basis = coef * es.eigenvectors() * inv_sqrt.cast<cplx>().asDiagonal();

  VectorPolynomial out;
  for (Eigen::Index col = 0; col < r; ++col) {
    BivariatePolynomial comp(degree);
    for (Eigen::Index row = 0; row < k + r; ++row) {
      const auto [i, j] = all[static_cast<std::size_t>(row)];
      comp.coeff(i, j) += basis(row, col);
    }
    out.push_back(std::move(comp));
  }
  return out;
}

Degree first_degree(Degree d) { return {std::max(d.z - 1, 0), d.w}; }
Degree second_degree(Degree d) { return {d.z, std::max(d.w - 1, 0)}; }

}  // namespace

std::pair<VectorPolynomial, VectorPolynomial> subspace_kernel_pair(const BivariatePolynomial& q,
                                                                   const MomentTable& mu) {
  const auto [n, m] = q.degree();
  Monomials sub1, rest1, sub2, rest2;
  for (int i = 0; i < n; ++i) {
    rest1.emplace_back(i, 0);
    for (int j = 1; j <= m; ++j) sub1.emplace_back(i, j);
  }
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) sub2.emplace_back(i, j);
    rest2.emplace_back(n, j);
  }
  return {orthogonal_complement(mu, sub1, rest1, first_degree(q.degree())),
          orthogonal_complement(mu, sub2, rest2, second_degree(q.degree()))};
}

void attach_matrix_forms(SosCertificate& cert) {
  const auto [n, m] = cert.degree;
  cert.matrix_first.reset();
  cert.matrix_second.reset();
  if (n > 0) cert.matrix_first = matrix_form_in_w(cert.vec_first, n);
  if (m > 0) cert.matrix_second = matrix_form_in_z(cert.vec_second, m);
}

namespace {

VectorPolynomial scaled(VectorPolynomial v, cplx s) {
  for (auto& c : v) c *= s;
  return v;
}

SosCertificate from_moments(const BivariatePolynomial& q, const MomentTable& mu) {
  auto [e, f] = subspace_kernel_pair(q, mu);
  SosCertificate cert;
  cert.degree = q.degree();
  cert.vec_first = scaled(std::move(e), mu.normalizer_c);
  cert.vec_second = scaled(std::move(f), mu.normalizer_c);
  cert.route = "moments";
  return cert;
}

// Value at s = 0 of the interpolating polynomial through (xs[k], ys[k]).
CMatrix neville_at_zero(const std::vector<double>& xs, std::vector<CMatrix> ys) {
  const std::size_t n = xs.size();
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i + k < n; ++i) {
      ys[i] = (-xs[i + k] * ys[i] + xs[i] * ys[i + 1]) / (xs[i] - xs[i + k]);
    }
  }
  return ys[0];
}

// The kernels of q(rz, rw) converge like sqrt(1 - r^2), so they are
// extrapolated as polynomials in that variable.
SosCertificate dilation_certificate(const BivariatePolynomial& q) {
  static constexpr std::array<double, 8> kRadii{0.9,  0.95,  0.98,  0.99,
                                                0.995, 0.998, 0.999, 0.9995};
  const Degree d = q.degree();
  std::vector<double> s;
  std::vector<CMatrix> k1, k2;
  for (const double r : kRadii) {
    const BivariatePolynomial qr = dilate(q, r);
    const SosCertificate c = from_moments(qr, compute_moments_adaptive(qr));
    s.push_back(std::sqrt(1.0 - r * r));
    k1.push_back(kernel_matrix(c.vec_first, first_degree(d)));
    k2.push_back(kernel_matrix(c.vec_second, second_degree(d)));
  }
  SosCertificate cert;
  cert.degree = d;
  cert.route = "dilation";
  if (d.z > 0) {
    cert.vec_first = factor_kernel_matrix(neville_at_zero(s, k1), first_degree(d), d.z);
  }
  if (d.w > 0) {
    cert.vec_second = factor_kernel_matrix(neville_at_zero(s, k2), second_degree(d), d.w);
  }
  return cert;
}

}  // namespace

SosCertificate sos_certificate(const BivariatePolynomial& q, int grid_size) {
  if (q.is_zero()) throw Error(ErrorCode::InvalidArgument, "certificate for the zero polynomial");
  SosCertificate cert;
  try {
    cert = from_moments(q, compute_moments(q, grid_size));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ZeroOnTorus && e.code() != ErrorCode::QuadratureUnresolved) throw;
    cert = dilation_certificate(q);
  }
  cert.kind = CertificateKind::ColeWermer;
  attach_matrix_forms(cert);
  return cert;
}

namespace {

double min_singular_value(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().minCoeff();
}

double min_sigma_over_disk(const MatrixPolynomial& mp, const std::vector<cplx>& pts) {
  std::vector<double> mins(pts.size());
  parallel_for(pts.size(), [&](std::size_t k) { mins[k] = min_singular_value(mp(pts[k])); });
  return *std::min_element(mins.begin(), mins.end());
}

}  // namespace

GwReport gw_invertibility(const SosCertificate& cert, int grid_n, double threshold) {
  GwReport report;
  report.grid_n = grid_n;
  report.threshold = threshold;
  const auto pts = polar_grid(std::max(4, grid_n / 4), grid_n, true);
  if (cert.matrix_first) report.min_sigma_first = min_sigma_over_disk(*cert.matrix_first, pts);
  if (cert.matrix_second) {
    report.min_sigma_second = min_sigma_over_disk(cert.matrix_second->reflected(), pts);
  }
  const bool first_ok = cert.degree.z == 0 || (report.min_sigma_first && *report.min_sigma_first > threshold);
  const bool second_ok = cert.degree.w == 0 || (report.min_sigma_second && *report.min_sigma_second > threshold);
  report.passed = first_ok && second_ok;
  return report;
}

namespace {

// Zeros of g in the closed bidisk away from T^2, by fiber roots over a
// closed polar grid.
bool has_zero_off_torus(const BivariatePolynomial& g) {
  if (g.is_zero()) return true;
  if (g.true_degree().w == 0) {
    // Depends on z only (or is constant); look at z-roots instead.
    for (const cplx r : polynomial_roots(g.fiber_in_z(0.0), 1e-12 * g.scale())) {
      if (std::abs(r) <= 1.0 + 1e-9) return true;
    }
    return false;
  }
  for (const cplx z : polar_grid(8, 32, true)) {
    std::vector<cplx> roots;
    try {
      roots = fiber_roots(g, z);
    } catch (const Error&) {
      return true;
    }
    const bool on_circle = std::abs(std::abs(z) - 1.0) < 1e-12;
    for (const cplx r : roots) {
      const double mod = std::abs(r);
      if (on_circle ? mod < 1.0 - 1e-9 : mod <= 1.0 + 1e-9) return true;
    }
  }
  return false;
}

}  // namespace

SosCertificate sym_sos_certificate(const BivariatePolynomial& q, double a, double b) {
  if (a < 0.0 || b < 0.0 || (a == 0.0 && b == 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "weights must be non-negative and not both zero");
  }
  if (symmetry_analysis(q).kind != SymmetryKind::T2Symmetric) {
    throw Error(ErrorCode::NotSymmetric, "q must be T^2-symmetric (symmetrize first)");
  }
  const Degree d = q.degree();
  const auto [qz_ref, qw_ref] = reflected_derivatives(q);
  const BivariatePolynomial g =
      cplx(a) * qz_ref.with_degree(d) + cplx(b) * qw_ref.with_degree(d);
  if (has_zero_off_torus(g)) {
    throw Error(ErrorCode::ReflectedCombinationVanishes,
                "a q~_z + b q~_w has zeros in the closed bidisk");
  }
  SosCertificate cert = sos_certificate(g);
  const double norm = 1.0 / std::sqrt(a * d.z + b * d.w);
  cert.vec_first = scaled(std::move(cert.vec_first), norm);
  cert.vec_second = scaled(std::move(cert.vec_second), norm);
  cert.kind = CertificateKind::Symmetric;
  cert.a = a;
  cert.b = b;
  attach_matrix_forms(cert);
  return cert;
}

namespace {

// Precomputed pieces of the polarized identity.
class IdentityEvaluator {
 public:
  IdentityEvaluator(const BivariatePolynomial& q, const SosCertificate& cert)
      : q_(q), cert_(cert) {
    const auto [n, m] = q.degree();
    switch (cert.kind) {
      case CertificateKind::ColeWermer:
        aux_ = reflect(q);
        break;
      case CertificateKind::Symmetric:
        aux_ = cplx(cert.a) * times_z(partial_z(q)).with_degree(q.degree()) +
               cplx(cert.b) * times_w(partial_w(q)).with_degree(q.degree());
        weight_ = cert.a * n + cert.b * m;
        break;
      case CertificateKind::DV:
        aux_ = cplx(cert.a) * times_z(partial_z(q)).with_degree(q.degree()) -
               cplx(cert.b) * times_w(partial_w(q)).with_degree(q.degree());
        weight_ = cert.b * m - cert.a * n;
        break;
    }
  }

  cplx operator()(Point2 x, Point2 y) const {
    const cplx qx = q_(x.z, x.w);
    const cplx qy = q_(y.z, y.w);
    const cplx fx = aux_(x.z, x.w);
    const cplx fy = aux_(y.z, y.w);
    const cplx kz = (1.0 - x.z * std::conj(y.z)) * kernel(cert_.vec_first, x, y);
    const cplx kw = (1.0 - x.w * std::conj(y.w)) * kernel(cert_.vec_second, x, y);
    switch (cert_.kind) {
      case CertificateKind::ColeWermer:
        return qx * std::conj(qy) - fx * std::conj(fy) - kz - kw;
      case CertificateKind::Symmetric:
        return weight_ * qx * std::conj(qy) - fx * std::conj(qy) - qx * std::conj(fy) - kz - kw;
      case CertificateKind::DV:
        return weight_ * qx * std::conj(qy) + fx * std::conj(qy) + qx * std::conj(fy) + kz - kw;
    }
    return {};
  }

 private:
  const BivariatePolynomial& q_;
  const SosCertificate& cert_;
  BivariatePolynomial aux_;
  double weight_ = 0.0;
};

}  // namespace

cplx certificate_identity(const BivariatePolynomial& q, const SosCertificate& cert, Point2 x,
                          Point2 y) {
  return IdentityEvaluator(q, cert)(x, y);
}

VerificationReport verify_certificate(const BivariatePolynomial& q, const SosCertificate& cert,
                                      int grid_n, double threshold, std::uint64_t seed) {
  if (cert.degree != q.degree()) {
    throw Error(ErrorCode::DegreeMismatch, "certificate degree differs from the polynomial's");
  }
  const IdentityEvaluator h(q, cert);
  const double norm = 1.0 / (q.scale() * q.scale());
  VerificationReport report;
  report.grid_n = grid_n;
  report.threshold = threshold;

  const auto pts = closed_disk_points(grid_n);
  std::vector<double> rows(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    double worst = 0.0;
    for (const cplx w : pts) {
      const Point2 x{pts[i], w};
      worst = std::max(worst, std::abs(h(x, x)));
    }
    rows[i] = worst;
  });
  report.grid_residual = *std::max_element(rows.begin(), rows.end()) * norm;

  Rng rng(seed);
  for (int k = 0; k < 500; ++k) {
    const Point2 x{rng.in_disk(), rng.in_disk()};
    report.random_residual = std::max(report.random_residual, std::abs(h(x, x)) * norm);
  }
  for (int k = 0; k < 100; ++k) {
    const Point2 x{rng.in_disk(), rng.in_disk()};
    const Point2 y{rng.in_disk(), rng.in_disk()};
    report.polarized_residual = std::max(report.polarized_residual, std::abs(h(x, y)) * norm);
  }
  report.max_residual =
      std::max({report.grid_residual, report.random_residual, report.polarized_residual});
  report.passed = report.max_residual <= threshold;
  return report;
}

}  // namespace dvkit
