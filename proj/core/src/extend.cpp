#include "dvkit/extend.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "dvkit/classify.hpp"
#include "dvkit/error.hpp"
#include "dvkit/grids.hpp"
#include "dvkit/parallel.hpp"

namespace dvkit {

ExtensionOperator make_extension(const UnitaryRealization& rep, const MatrixPolynomial& qmatrix,
                                 const BivariatePolynomial& f) {
  if (qmatrix.rows() != rep.m || qmatrix.cols() != rep.m) {
    throw Error(ErrorCode::InvalidArgument, "Q(z) must be m x m with m from the realization");
  }
  return {rep, qmatrix, f};
}

CMatrix eval_f_of_pair(const BivariatePolynomial& f, cplx z, const CMatrix& phi) {
  const auto g = f.fiber_in_w(z);
  const auto size = phi.rows();
  CMatrix acc = CMatrix::Zero(size, size);
  for (auto k = static_cast<std::ptrdiff_t>(g.size()) - 1; k >= 0; --k) {
    acc = acc * phi;
    acc.diagonal().array() += g[static_cast<std::size_t>(k)];
  }
  return acc;
}

namespace {

CVector w_powers(int m, cplx w) {
  CVector v(m);
  cplx p = 1.0;
  for (int k = 0; k < m; ++k) {
    v(k) = p;
    p *= w;
  }
  return v;
}

// First row of Q(z)^{-1} f(zI, Phi(z)) Q(z); F(z, w) is its product with
// (1, w, ..., w^{m-1}).
CVector extension_row(const ExtensionOperator& op, cplx z) {
  const CMatrix q = op.qmatrix(z);
  const Eigen::FullPivLU<CMatrix> lu(q);
  if (!lu.isInvertible()) throw Error(ErrorCode::SingularMatrix, "Q(z) is singular");
  const CMatrix inner = eval_f_of_pair(op.f, z, phi_evaluate(op.rep, z)) * q;
  return lu.solve(inner).row(0).transpose();
}

double condition(const CMatrix& m) {
  const Eigen::VectorXd s = Eigen::JacobiSVD<CMatrix>(m).singularValues();
  return s(0) / s(s.size() - 1);
}

double max_condition(const MatrixPolynomial& q, const std::vector<cplx>& pts) {
  std::vector<double> c(pts.size());
  parallel_for(pts.size(), [&](std::size_t k) { c[k] = condition(q(pts[k])); });
  return *std::max_element(c.begin(), c.end());
}

}  // namespace

cplx extend(const ExtensionOperator& op, cplx z, cplx w) {
  return extension_row(op, z).cwiseProduct(w_powers(op.rep.m, w)).sum();
}

BoundReport extension_bound(const ExtensionOperator& op, int grid_n) {
  const int m = op.rep.m;
  BoundReport r;
  const double boundary = max_condition(op.qmatrix, circle_points(grid_n));
  const double interior = max_condition(op.qmatrix, polar_grid(std::max(4, grid_n / 4), grid_n, false));
  r.C = std::sqrt(static_cast<double>(m)) * std::max(boundary, interior);
  r.interior_excess = interior - boundary;

  const auto pts = closed_disk_points(grid_n);
  std::vector<double> best(pts.size());
  parallel_for(pts.size(), [&](std::size_t k) {
    const CMatrix q = op.qmatrix(pts[k]);
    const Eigen::VectorXd s = Eigen::JacobiSVD<CMatrix>(q).singularValues();
    const double inv_norm = 1.0 / s(s.size() - 1);
    double top = 0.0;
    for (const cplx w : pts) top = std::max(top, (q * w_powers(m, w)).norm());
    best[k] = inv_norm * top;
  });
  r.per_point_bound = *std::max_element(best.begin(), best.end());
  return r;
}

namespace {

double torus_value(const BivariatePolynomial& f, const BivariatePolynomial& p, double theta) {
  const cplx z = unit(theta);
  std::vector<cplx> roots;
  try {
    roots = fiber_roots(p, z);
  } catch (const Error&) {
    return 0.0;
  }
  double best = 0.0;
  for (const cplx w : roots) {
    if (std::abs(std::abs(w) - 1.0) <= 1e-4) best = std::max(best, std::abs(f(z, w)));
  }
  return best;
}

}  // namespace

double sup_norm_on_variety(const BivariatePolynomial& f, const BivariatePolynomial& p, int grid_n) {
  const double step = 2.0 * kPi / grid_n;
  double best = 0.0;
  int best_k = 0;
  for (int k = 0; k < grid_n; ++k) {
    const double v = torus_value(f, p, k * step);
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  // Ternary search in the neighbouring cells.
  double lo = (best_k - 1) * step;
  double hi = (best_k + 1) * step;
  for (int it = 0; it < 80; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (torus_value(f, p, m1) < torus_value(f, p, m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  return std::max(best, torus_value(f, p, 0.5 * (lo + hi)));
}

ExtensionReport verify_extension(const ExtensionOperator& op, const BivariatePolynomial& p,
                                 const VarietySample& sample, int grid_n) {
  ExtensionReport r;
  r.bound = extension_bound(op, grid_n);
  r.sup_f_on_variety = sup_norm_on_variety(op.f, p, std::max(256, 4 * grid_n));
  const int m = op.rep.m;

  for (const Point2 pt : sample.points) {
    const cplx fv = op.f(pt.z, pt.w);
    r.sup_f_interior = std::max(r.sup_f_interior, std::abs(fv));
    r.on_variety_residual = std::max(r.on_variety_residual, std::abs(extend(op, pt.z, pt.w) - fv));
  }

  const auto pts = closed_disk_points(grid_n);
  std::vector<double> rows(pts.size());
  parallel_for(pts.size(), [&](std::size_t k) {
    const CVector row = extension_row(op, pts[k]);
    double top = 0.0;
    for (const cplx w : pts) top = std::max(top, std::abs(row.cwiseProduct(w_powers(m, w)).sum()));
    rows[k] = top;
  });
  r.sup_F_on_bidisk = *std::max_element(rows.begin(), rows.end());
  r.ratio = r.sup_f_on_variety > 0.0 ? r.sup_F_on_bidisk / r.sup_f_on_variety : 0.0;

  const double sup_v = r.sup_f_on_variety;
  r.passed = r.on_variety_residual <= 1e-7 * (1.0 + sup_v) &&
             r.sup_F_on_bidisk <= r.bound.C * sup_v + 1e-6 &&
             r.sup_f_interior <= sup_v + 1e-7 * (1.0 + sup_v);
  return r;
}

std::optional<double> swapped_constant(const BivariatePolynomial& p, double a, double b,
                                       std::uint64_t seed) {
  try {
    const BivariatePolynomial s = swap_variables(p);
    const DvCertificate cert = dv_certificate(s, a, b);
    const VarietySample sample = sample_variety(cert.p, default_sample_count(s.degree()), seed);
    const UnitaryRealization rep = lurking_isometry(cert, sample);
    const ExtensionOperator op =
        make_extension(rep, cert.qmatrix, BivariatePolynomial::constant(0.0, s.degree()));
    return extension_bound(op, 64).C;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace dvkit
