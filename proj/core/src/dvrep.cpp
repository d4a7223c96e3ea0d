#include "dvkit/dvrep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "dvkit/classify.hpp"
#include "dvkit/error.hpp"
#include "dvkit/grids.hpp"
#include "dvkit/parallel.hpp"

namespace dvkit {

namespace {

// z^d v(1/z, w) componentwise, for components of z-degree <= d.
VectorPolynomial reverse_z(const VectorPolynomial& v, int d) {
  VectorPolynomial out;
  for (const auto& comp : v) {
    const BivariatePolynomial c = comp.with_degree({d, comp.degree().w});
    BivariatePolynomial r(c.degree());
    for (int i = 0; i <= d; ++i) {
      for (int j = 0; j < c.cols(); ++j) r.coeff(d - i, j) = c.coeff(i, j);
    }
    out.push_back(std::move(r));
  }
  return out;
}

double sigma_min(const CMatrix& m) {
  return Eigen::JacobiSVD<CMatrix>(m).singularValues().minCoeff();
}

double sigma_max(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : Eigen::JacobiSVD<CMatrix>(m).singularValues().maxCoeff();
}

// min sigma_min(Q(z)) / max sigma_max(Q(z)) over the points.
double relative_min_sigma(const MatrixPolynomial& q, const std::vector<cplx>& pts) {
  std::vector<double> lo(pts.size()), hi(pts.size());
  parallel_for(pts.size(), [&](std::size_t k) {
    const CMatrix v = q(pts[k]);
    lo[k] = sigma_min(v);
    hi[k] = sigma_max(v);
  });
  const double top = *std::max_element(hi.begin(), hi.end());
  return top > 0.0 ? *std::min_element(lo.begin(), lo.end()) / top : 0.0;
}

}  // namespace

SosCertificate DvCertificate::as_sos() const {
  SosCertificate cert;
  cert.kind = CertificateKind::DV;
  cert.a = a;
  cert.b = b;
  cert.degree = p.degree();
  cert.vec_first = P;
  cert.vec_second = Q;
  attach_matrix_forms(cert);
  return cert;
}

DvCertificate dv_certificate(const BivariatePolynomial& p, double a, double b) {
  const auto [n, m] = p.degree();
  if (n < 1 || m < 1) {
    throw Error(ErrorCode::InvalidArgument, "a distinguished variety needs degree >= 1 in both variables");
  }
  DvCertificate cert;
  cert.p = symmetrize(p);
  cert.a = a;
  cert.b = b;
  const SosCertificate sym = sym_sos_certificate(swap_transform(cert.p), a, b);
  cert.P = reverse_z(sym.vec_first, n - 1);
  cert.Q = reverse_z(sym.vec_second, n);
  cert.qmatrix = matrix_form_in_z(cert.Q, m);
  cert.smooth_on_torus = torus_singularities(cert.p).smooth_on_torus;
  if (cert.smooth_on_torus) {
    const double ratio = relative_min_sigma(cert.qmatrix, closed_disk_points(64));
    if (ratio <= 1e-8) {
      throw Error(ErrorCode::TheoremViolation,
                  "Q(z) is singular on the closed disk for a smooth-on-torus input");
    }
  }
  return cert;
}

int default_sample_count(Degree d) {
  const int s = d.z + d.w;
  return std::max(3 * s, s + 10) + 10;
}

VarietySample sample_variety(const BivariatePolynomial& p, int target_count, std::uint64_t seed) {
  const auto [n, m] = p.degree();
  const BivariatePolynomial pw = partial_w(p);
  const double scale = p.scale();
  Rng rng(seed);
  const int per_ring = std::max(4, (target_count + 4 * std::max(m, 1) - 1) / (4 * std::max(m, 1)) + 1);

  VarietySample out;
  for (const double radius : {0.3, 0.5, 0.7, 0.85}) {
    for (int k = 0; k < per_ring; ++k) {
      if (static_cast<int>(out.points.size()) >= target_count) break;
      const cplx z = radius * unit(2.0 * kPi * (k + 0.5 * rng.uniform()) / per_ring);
      std::vector<cplx> roots;
      try {
        roots = fiber_roots(p, z);
      } catch (const Error&) {
        continue;
      }
      for (cplx w : roots) {
        for (int it = 0; it < 20 && std::abs(p(z, w)) > 1e-14 * scale; ++it) {
          const cplx d = pw(z, w);
          if (d == 0.0) break;
          w -= p(z, w) / d;
        }
        const double res = std::abs(p(z, w));
        if (std::abs(w) < 1.0 && res <= 1e-10 * scale &&
            static_cast<int>(out.points.size()) < target_count) {
          out.points.push_back({z, w});
          out.residuals.push_back(res);
        }
      }
    }
  }
  if (static_cast<int>(out.points.size()) < n + m) {
    throw Error(ErrorCode::InsufficientSpan,
                "found " + std::to_string(out.points.size()) + " variety points, need " +
                    std::to_string(n + m));
  }
  return out;
}

namespace {

int numerical_rank(const Eigen::VectorXd& sv) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > 1e-8 * sv(0)) ++r;
  }
  return r;
}

}  // namespace

UnitaryRealization lurking_isometry(const DvCertificate& cert, const VarietySample& sample) {
  const int n = static_cast<int>(cert.P.size());
  const int m = static_cast<int>(cert.Q.size());
  const int size = m + n;
  const auto count = static_cast<Eigen::Index>(sample.points.size());
  CMatrix x(size, count), y(size, count);
  for (Eigen::Index k = 0; k < count; ++k) {
    const Point2 pt = sample.points[static_cast<std::size_t>(k)];
    const CVector qv = evaluate(cert.Q, pt.z, pt.w);
    const CVector pv = evaluate(cert.P, pt.z, pt.w);
    x.col(k) << qv, pt.z * pv;
    y.col(k) << pt.w * qv, pv;
  }

  const CMatrix gx = x.adjoint() * x;
  const double gram = (gx - y.adjoint() * y).cwiseAbs().maxCoeff() / std::max(1.0, gx.cwiseAbs().maxCoeff());
  if (gram > 1e-8) {
    throw Error(ErrorCode::IsometryViolated,
                "Gram matrices differ by " + std::to_string(gram) + " at the variety samples");
  }

  Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeThinV);
  const int rank = numerical_rank(svd.singularValues());
  // Saturation: the last 10 points must not raise the rank.
  if (count < size + 10) {
    throw Error(ErrorCode::InsufficientSpan, "need at least m + n + 10 variety samples");
  }
  const Eigen::JacobiSVD<CMatrix> head(x.leftCols(count - 10));
  if (numerical_rank(head.singularValues()) != rank) {
    throw Error(ErrorCode::InsufficientSpan, "sample span not saturated; add more points");
  }

  const CMatrix ux = svd.matrixU().leftCols(rank);
  const CMatrix yr = y * svd.matrixV().leftCols(rank) *
                     svd.singularValues().head(rank).cwiseInverse().cast<cplx>().asDiagonal();
  CMatrix u = yr * ux.adjoint();
  if (rank < size) {
    // Map the orthogonal complement of range(X) onto that of range(Y).
    const CMatrix qy = Eigen::HouseholderQR<CMatrix>(yr).householderQ();
    u += qy.rightCols(size - rank) * svd.matrixU().rightCols(size - rank).adjoint();
  }
  // Nearest unitary.
  Eigen::JacobiSVD<CMatrix> polar(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  u = polar.matrixU() * polar.matrixV().adjoint();

  UnitaryRealization rep;
  rep.m = m;
  rep.n = n;
  rep.U = u;
  rep.gram_residual = gram;
  rep.rank = rank;
  if (n > 0 && spectral_radius(rep.D()) >= 1.0 - 1e-8) {
    throw Error(ErrorCode::UnimodularDEigenvalue, "D has an eigenvalue on the unit circle");
  }
  return rep;
}

CMatrix phi_evaluate(const UnitaryRealization& rep, cplx z) {
  if (rep.n == 0) return rep.A();
  const CMatrix lhs = CMatrix::Identity(rep.n, rep.n) - z * rep.D();
  const Eigen::FullPivLU<CMatrix> lu(lhs);
  if (!lu.isInvertible()) throw Error(ErrorCode::SingularMatrix, "I - zD is singular");
  return rep.A() + z * rep.B() * lu.solve(rep.C());
}

double spectral_radius(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::ComplexEigenSolver<CMatrix>(m, false).eigenvalues().cwiseAbs().maxCoeff();
}

BivariatePolynomial det_representation(const UnitaryRealization& rep) {
  const int n = rep.n;
  const int m = rep.m;
  const auto zs = circle_points(n + 1);
  const auto ws = circle_points(m + 1);
  CMatrix block(m + n, m + n);
  CMatrix values(n + 1, m + 1);
  for (int k = 0; k <= n; ++k) {
    for (int l = 0; l <= m; ++l) {
      const cplx z = zs[static_cast<std::size_t>(k)];
      const cplx w = ws[static_cast<std::size_t>(l)];
      block.topLeftCorner(m, m) = rep.A() - w * CMatrix::Identity(m, m);
      block.topRightCorner(m, n) = z * rep.B();
      block.bottomLeftCorner(n, m) = rep.C();
      block.bottomRightCorner(n, n) = z * rep.D() - CMatrix::Identity(n, n);
      values(k, l) = block.size() == 0 ? cplx(1.0) : block.determinant();
    }
  }
  // Inverse DFT on the (n+1) x (m+1) roots-of-unity grid.
  BivariatePolynomial out({n, m});
  const double norm = 1.0 / ((n + 1.0) * (m + 1.0));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= m; ++j) {
      cplx acc{};
      for (int k = 0; k <= n; ++k) {
        for (int l = 0; l <= m; ++l) {
          acc += values(k, l) * std::conj(zs[static_cast<std::size_t>((i * k) % (n + 1))]) *
                 std::conj(ws[static_cast<std::size_t>((j * l) % (m + 1))]);
        }
      }
      out.coeff(i, j) = acc * norm;
    }
  }
  return out;
}

double proportionality_residual(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  const Degree d{std::max(a.degree().z, b.degree().z), std::max(a.degree().w, b.degree().w)};
  const BivariatePolynomial ap = a.with_degree(d);
  const BivariatePolynomial bp = b.with_degree(d);
  cplx ab{};
  double bb = 0.0;
  for (std::size_t k = 0; k < ap.data().size(); ++k) {
    ab += std::conj(bp.data()[k]) * ap.data()[k];
    bb += std::norm(bp.data()[k]);
  }
  if (bb == 0.0 || a.scale() == 0.0) return 1.0;
  return max_coeff_distance(ap, (ab / bb) * bp) / a.scale();
}

RepresentationReport verify_representation(const BivariatePolynomial& p,
                                           const DvCertificate& cert,
                                           const UnitaryRealization& rep,
                                           const VarietySample& sample, int grid_n) {
  RepresentationReport r;
  const int size = rep.m + rep.n;
  r.unitarity = (rep.U.adjoint() * rep.U - CMatrix::Identity(size, size)).cwiseAbs().maxCoeff();
  r.d_spectral_radius = spectral_radius(rep.D());
  r.gram_residual = rep.gram_residual;
  r.smooth_on_torus = cert.smooth_on_torus;

  const CMatrix eye = CMatrix::Identity(rep.m, rep.m);
  double q_norm = 0.0;
  for (const Point2 pt : sample.points) {
    const CMatrix phi = phi_evaluate(rep, pt.z);
    r.det_on_variety = std::max(r.det_on_variety, std::abs((pt.w * eye - phi).determinant()));
    const CVector qv = evaluate(cert.Q, pt.z, pt.w);
    q_norm = std::max(q_norm, qv.norm());
    r.eigen_relation = std::max(r.eigen_relation, (phi * qv - pt.w * qv).norm());
  }
  r.eigen_relation /= std::max(q_norm, 1e-300);

  r.det_coefficients = proportionality_residual(p, det_representation(rep));

  for (const cplx z : circle_points(128)) {
    try {
      const CMatrix phi = phi_evaluate(rep, z);
      r.boundary_unitarity =
          std::max(r.boundary_unitarity, (phi.adjoint() * phi - eye).cwiseAbs().maxCoeff());
    } catch (const Error&) {
      r.boundary_unitarity = std::numeric_limits<double>::infinity();
    }
  }

  if (cert.smooth_on_torus) {
    r.qmatrix_min_sigma = relative_min_sigma(cert.qmatrix, closed_disk_points(grid_n));
  }

  r.passed = r.det_on_variety <= 1e-7 && r.eigen_relation <= 1e-7 && r.det_coefficients <= 1e-6 &&
             r.unitarity <= 1e-10 && r.boundary_unitarity <= 1e-8 && r.gram_residual <= 1e-8 &&
             r.d_spectral_radius < 1.0 &&
             (!r.qmatrix_min_sigma || *r.qmatrix_min_sigma > 1e-8);
  return r;
}

}  // namespace dvkit
