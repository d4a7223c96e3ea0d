#include "dvkit/classify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "dvkit/error.hpp"
#include "dvkit/grids.hpp"
#include "dvkit/parallel.hpp"

namespace dvkit {

std::string_view to_string(ZeroLabel label) noexcept {
  switch (label) {
    case ZeroLabel::StableOpen: return "StableOpen";
    case ZeroLabel::StableClosed: return "StableClosed";
    case ZeroLabel::DVDefining: return "DVDefining";
    case ZeroLabel::SymmetricNonvanishingOffTorus: return "SymmetricNonvanishingOffTorus";
    case ZeroLabel::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

ZeroLabel zero_label_from_string(std::string_view s) {
  for (auto l : {ZeroLabel::StableOpen, ZeroLabel::StableClosed, ZeroLabel::DVDefining,
                 ZeroLabel::SymmetricNonvanishingOffTorus, ZeroLabel::Indeterminate}) {
    if (to_string(l) == s) return l;
  }
  throw Error(ErrorCode::Parse, "unknown label '" + std::string(s) + "'");
}

std::vector<cplx> polynomial_roots(std::vector<cplx> c, double drop_tol) {
  while (!c.empty() && std::abs(c.back()) <= drop_tol) c.pop_back();
  if (c.size() <= 1) return {};
  const int d = static_cast<int>(c.size()) - 1;
  if (d == 1) return {-c[0] / c[1]};

  CMatrix companion = CMatrix::Zero(d, d);
  for (int k = 1; k < d; ++k) companion(k, k - 1) = 1.0;
  for (int k = 0; k < d; ++k) companion(k, d - 1) = -c[static_cast<std::size_t>(k)] / c.back();
  Eigen::ComplexEigenSolver<CMatrix> es(companion, false);
  std::vector<cplx> roots(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) roots[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
  return roots;
}

namespace {

constexpr double kDropRel = 1e-12;
constexpr double kRootTol = 1e-5;

bool all_negligible(const std::vector<cplx>& c, double tol) {
  return std::all_of(c.begin(), c.end(), [tol](cplx x) { return std::abs(x) <= tol; });
}

}  // namespace

std::vector<cplx> fiber_roots(const BivariatePolynomial& p, cplx z) {
  const double drop = kDropRel * p.scale();
  auto coeffs = p.fiber_in_w(z);
  if (all_negligible(coeffs, drop)) {
    throw Error(ErrorCode::FiberDegenerate, "fiber vanishes identically");
  }
  return polynomial_roots(std::move(coeffs), drop);
}

std::vector<cplx> fiber_roots_in_z(const BivariatePolynomial& p, cplx w) {
  const double drop = kDropRel * p.scale();
  auto coeffs = p.fiber_in_z(w);
  if (all_negligible(coeffs, drop)) {
    throw Error(ErrorCode::FiberDegenerate, "fiber vanishes identically");
  }
  return polynomial_roots(std::move(coeffs), drop);
}

std::vector<RootCluster> cluster_roots(const std::vector<cplx>& roots, double radius) {
  std::vector<RootCluster> clusters;
  std::vector<cplx> sums;
  for (const cplx r : roots) {
    bool placed = false;
    for (std::size_t k = 0; k < clusters.size(); ++k) {
      if (std::abs(r - clusters[k].center) <= radius) {
        ++clusters[k].multiplicity;
        sums[k] += r;
        clusters[k].center = sums[k] / static_cast<double>(clusters[k].multiplicity);
        placed = true;
        break;
      }
    }
    if (!placed) {
      clusters.push_back({r, 1});
      sums.push_back(r);
    }
  }
  return clusters;
}

double root_count_integral(const BivariatePolynomial& p, cplx z, int quad_points) {
  const BivariatePolynomial pw = partial_w(p);
  const double threshold = 1e-10 * p.scale();
  cplx acc{};
  for (const cplx w : circle_points(quad_points)) {
    const cplx v = p(z, w);
    if (std::abs(v) <= threshold) {
      throw Error(ErrorCode::ZeroOnFiberCircle, "p(z, w) ~ 0 at |w| = 1");
    }
    acc += w * pw(z, w) / v;
  }
  return (acc / static_cast<double>(quad_points)).real();
}

int root_count_in_disk(const BivariatePolynomial& p, cplx z, int quad_points) {
  const double value = root_count_integral(p, z, quad_points);
  const double rounded = std::round(value);
  if (std::abs(value - rounded) > 0.25) {
    throw Error(ErrorCode::QuadratureUnresolved,
                "root count " + std::to_string(value) + " is not near an integer; increase quad_points");
  }
  return static_cast<int>(rounded);
}

int root_count_in_disk(const BivariatePolynomial& p, cplx z) {
  const Degree d = p.degree();
  int nodes = std::max(256, 16 * (d.z + d.w));
  double prev = root_count_integral(p, z, nodes);
  for (int round = 0; round < 8; ++round) {
    nodes *= 2;
    const double next = root_count_integral(p, z, nodes);
    if (std::abs(next - prev) < 1e-6) return root_count_in_disk(p, z, nodes);
    prev = next;
  }
  throw Error(ErrorCode::QuadratureUnresolved, "root count did not settle under refinement");
}

double normalized_resultant(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  const int da = static_cast<int>(a.size()) - 1;
  const int db = static_cast<int>(b.size()) - 1;
  if (da < 0 || db < 0) return 0.0;
  if (da == 0 || db == 0) return 1.0;
  const int size = da + db;
  CMatrix s = CMatrix::Zero(size, size);
  // Rows hold shifted copies of the coefficients, highest power first.
  for (int r = 0; r < db; ++r) {
    for (int k = 0; k <= da; ++k) s(r, r + k) = a[static_cast<std::size_t>(da - k)];
  }
  for (int r = 0; r < da; ++r) {
    for (int k = 0; k <= db; ++k) s(db + r, r + k) = b[static_cast<std::size_t>(db - k)];
  }
  double bound = 1.0;
  for (int r = 0; r < size; ++r) bound *= s.row(r).norm();
  if (bound == 0.0) return 0.0;
  return std::abs(Eigen::PartialPivLU<CMatrix>(s).determinant()) / bound;
}

namespace {

std::vector<cplx> trimmed(std::vector<cplx> c, double tol) {
  while (!c.empty() && std::abs(c.back()) <= tol) c.pop_back();
  return c;
}

std::vector<cplx> derivative(const std::vector<cplx>& c) {
  std::vector<cplx> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
  return d;
}

}  // namespace

bool is_squarefree(const BivariatePolynomial& p, std::uint64_t seed) {
  const Degree d = p.degree();
  if (d.z == 0 && d.w == 0) return true;
  const bool in_w = d.w > 0;
  const double drop = kDropRel * p.scale();
  Rng rng(seed);
  for (int trial = 0; trial < 5; ++trial) {
    const cplx base = rng.in_disk(0.9);
    auto fiber = trimmed(in_w ? p.fiber_in_w(base) : p.fiber_in_z(base), drop);
    if (fiber.size() <= 1) return true;
    if (normalized_resultant(fiber, derivative(fiber)) > 1e-10) return true;
  }
  return false;
}

namespace {

enum class Direction { RootsInW, RootsInZ };

// Zeros found while sweeping fibers over `bases` whose (|base|, |root|)
// pair is flagged by `forbidden`. Results are gathered per base point and
// concatenated in index order.
std::vector<Point2> scan_fibers(const BivariatePolynomial& p, const std::vector<cplx>& bases,
                                Direction dir,
                                const std::function<bool(double, double)>& forbidden) {
  std::vector<std::vector<Point2>> found(bases.size());
  parallel_for(bases.size(), [&](std::size_t k) {
    const cplx b = bases[k];
    std::vector<cplx> roots;
    try {
      roots = dir == Direction::RootsInW ? fiber_roots(p, b) : fiber_roots_in_z(p, b);
    } catch (const Error&) {
      // The whole line through b lies in the zero set.
      found[k].push_back(dir == Direction::RootsInW ? Point2{b, 0.0} : Point2{0.0, b});
      return;
    }
    for (const cplx r : roots) {
      if (forbidden(std::abs(b), std::abs(r))) {
        found[k].push_back(dir == Direction::RootsInW ? Point2{b, r} : Point2{r, b});
      }
    }
  });
  std::vector<Point2> out;
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  return out;
}

struct MinModulus {
  double value = std::numeric_limits<double>::infinity();
  Point2 at{};
};

// Minimum of |p| over pairs from `pts` x `pts`, skipping pairs where both
// moduli exceed 1 - margin.
MinModulus min_modulus(const BivariatePolynomial& p, const std::vector<cplx>& pts,
                       double margin) {
  std::vector<MinModulus> rows(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const cplx z = pts[i];
    const auto fiber = p.fiber_in_w(z);
    const bool z_near = std::abs(z) > 1.0 - margin;
    MinModulus best;
    for (const cplx w : pts) {
      if (z_near && std::abs(w) > 1.0 - margin) continue;
      const double v = std::abs(horner(fiber, w));
      if (v < best.value) best = {v, {z, w}};
    }
    rows[i] = best;
  });
  MinModulus best;
  for (const auto& r : rows) {
    if (r.value < best.value) best = r;
  }
  return best;
}

struct Stage {
  bool passed = true;
  std::vector<Point2> witnesses;

  void add(std::vector<Point2> pts) {
    if (!pts.empty()) passed = false;
    witnesses.insert(witnesses.end(), pts.begin(), pts.end());
  }
};

struct Grids {
  std::vector<cplx> open;     // radii < 1
  std::vector<cplx> inner;    // radii <= 1 - margin
  std::vector<cplx> closed;   // radii <= 1
  std::vector<cplx> circle;
};

Grids make_grids(const ClassifyOptions& opts) {
  const int radial = std::max(4, opts.grid_n / 4);
  Grids g;
  g.open = polar_grid(radial, opts.grid_n, false);
  g.closed = polar_grid(radial, opts.grid_n, true);
  g.circle = circle_points(opts.grid_n);
  for (const cplx z : g.open) {
    if (std::abs(z) <= 1.0 - opts.torus_margin) g.inner.push_back(z);
  }
  return g;
}

Stage dv_stage(const BivariatePolynomial& p, const Grids& g, const ClassifyOptions& opts) {
  Stage s;
  const double tol = opts.tol;
  // Over the disk (away from T) every fiber root stays in the disk.
  auto inside_bad = [tol](double, double r) { return r >= 1.0 - tol; };
  s.add(scan_fibers(p, g.inner, Direction::RootsInW, inside_bad));
  s.add(scan_fibers(p, g.inner, Direction::RootsInZ, inside_bad));
  // Over the circle every fiber root is unimodular.
  auto circle_bad = [](double, double r) { return std::abs(r - 1.0) > kRootTol; };
  s.add(scan_fibers(p, g.circle, Direction::RootsInW, circle_bad));
  s.add(scan_fibers(p, g.circle, Direction::RootsInZ, circle_bad));
  if (!s.passed) return s;

  // Constant root count N(z) = m across the disk.
  const int m = p.true_degree().w;
  for (const double r : {0.25, 0.5, 0.75}) {
    for (const cplx z : circle_points(4, r, 0.125)) {
      try {
        if (root_count_in_disk(p, z) != m) s.passed = false;
      } catch (const Error&) {
        s.passed = false;
      }
    }
  }
  if (!s.passed) return s;

  // The swapped polynomial has no zeros on the closed bidisk away from T^2.
  try {
    const BivariatePolynomial q = swap_transform(p);
    const MinModulus mm = min_modulus(q, g.closed, opts.torus_margin);
    if (mm.value <= tol * q.scale()) s.passed = false;
  } catch (const Error&) {
    s.passed = false;
  }
  return s;
}

Stage nonvanishing_stage(const BivariatePolynomial& q, const Grids& g,
                         const ClassifyOptions& opts) {
  Stage s;
  const double tol = opts.tol;
  auto inside_bad = [tol](double, double r) { return r <= 1.0 + tol; };
  s.add(scan_fibers(q, g.inner, Direction::RootsInW, inside_bad));
  s.add(scan_fibers(q, g.inner, Direction::RootsInZ, inside_bad));
  auto circle_bad = [](double, double r) { return r < 1.0 - kRootTol; };
  s.add(scan_fibers(q, g.circle, Direction::RootsInW, circle_bad));
  s.add(scan_fibers(q, g.circle, Direction::RootsInZ, circle_bad));
  if (!s.passed) return s;
  const MinModulus mm = min_modulus(q, g.closed, opts.torus_margin);
  if (mm.value <= tol * q.scale()) {
    s.passed = false;
    s.witnesses.push_back(mm.at);
  }
  return s;
}

Stage closed_stage(const BivariatePolynomial& p, const Grids& g, const ClassifyOptions& opts) {
  Stage s;
  const double tol = opts.tol;
  auto bad = [tol](double, double r) { return r <= 1.0 + tol; };
  s.add(scan_fibers(p, g.closed, Direction::RootsInW, bad));
  s.add(scan_fibers(p, g.closed, Direction::RootsInZ, bad));
  if (!s.passed) return s;
  const MinModulus mm = min_modulus(p, g.closed, 0.0);
  if (mm.value <= tol * p.scale()) {
    s.passed = false;
    s.witnesses.push_back(mm.at);
  }
  return s;
}

Stage open_stage(const BivariatePolynomial& p, const Grids& g, const ClassifyOptions& opts) {
  Stage s;
  const double tol = opts.tol;
  auto bad = [tol](double, double r) { return r < 1.0 - tol; };
  s.add(scan_fibers(p, g.open, Direction::RootsInW, bad));
  s.add(scan_fibers(p, g.open, Direction::RootsInZ, bad));
  return s;
}

constexpr std::size_t kMaxWitnesses = 32;

}  // namespace

ZeroClass classify_zero_set(const BivariatePolynomial& p, const ClassifyOptions& opts) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "classify of the zero polynomial");
  if (opts.grid_n < 4) throw Error(ErrorCode::InvalidArgument, "grid_n must be at least 4");

  ZeroClass result;
  result.grid_n = opts.grid_n;
  result.tol = opts.tol;
  result.torus_margin = opts.torus_margin;
  result.symmetry = symmetry_analysis(p, std::max(opts.tol, 1e-10)).kind;
  result.squarefree = is_squarefree(p, opts.seed);

  const Grids grids = make_grids(opts);
  std::vector<Point2> witnesses;

  if (result.symmetry != SymmetryKind::NotSymmetric) {
    Stage dv = dv_stage(p, grids, opts);
    if (dv.passed && result.squarefree) {
      result.label = ZeroLabel::DVDefining;
      return result;
    }
    Stage nv = nonvanishing_stage(p, grids, opts);
    if (nv.passed) {
      result.label = ZeroLabel::SymmetricNonvanishingOffTorus;
      return result;
    }
    witnesses.insert(witnesses.end(), dv.witnesses.begin(), dv.witnesses.end());
  }

  if (closed_stage(p, grids, opts).passed) {
    result.label = ZeroLabel::StableClosed;
    return result;
  }
  Stage open = open_stage(p, grids, opts);
  if (open.passed) {
    result.label = ZeroLabel::StableOpen;
    return result;
  }
  witnesses.insert(witnesses.end(), open.witnesses.begin(), open.witnesses.end());
  if (witnesses.size() > kMaxWitnesses) witnesses.resize(kMaxWitnesses);
  result.witnesses = std::move(witnesses);
  result.label = ZeroLabel::Indeterminate;
  return result;
}

namespace {

struct Jets {
  cplx p, pz, pw, pzz, pzw, pww;
};

// Newton on the square system (p, second) in (z, w).
Point2 newton_pair(const BivariatePolynomial& p, const BivariatePolynomial& pz,
                   const BivariatePolynomial& pw, const BivariatePolynomial& pzz,
                   const BivariatePolynomial& pzw, const BivariatePolynomial& pww,
                   Point2 start, bool second_is_pz) {
  Point2 x = start;
  for (int it = 0; it < 30; ++it) {
    const Jets j{p(x.z, x.w), pz(x.z, x.w), pw(x.z, x.w),
                 pzz(x.z, x.w), pzw(x.z, x.w), pww(x.z, x.w)};
    Eigen::Matrix2cd jac;
    Eigen::Vector2cd f;
    if (second_is_pz) {
      jac << j.pz, j.pw, j.pzz, j.pzw;
      f << j.p, j.pz;
    } else {
      jac << j.pz, j.pw, j.pzw, j.pww;
      f << j.p, j.pw;
    }
    const cplx det = jac.determinant();
    if (std::abs(det) < 1e-300) break;
    const Eigen::Vector2cd step = jac.inverse() * f;
    x.z -= step(0);
    x.w -= step(1);
    if (step.norm() < 1e-15) break;
  }
  return x;
}

}  // namespace

SingularityReport torus_singularities(const BivariatePolynomial& p, int grid_n, double tol) {
  const BivariatePolynomial pz = partial_z(p);
  const BivariatePolynomial pw = partial_w(p);
  const BivariatePolynomial pzz = partial_z(pz);
  const BivariatePolynomial pzw = partial_w(pz);
  const BivariatePolynomial pww = partial_w(pw);
  const double threshold = tol * p.scale();

  auto singular_on_torus = [&](Point2 x) {
    return std::abs(std::abs(x.z) - 1.0) <= 1e-6 && std::abs(std::abs(x.w) - 1.0) <= 1e-6 &&
           std::abs(p(x.z, x.w)) <= threshold && std::abs(pz(x.z, x.w)) <= threshold &&
           std::abs(pw(x.z, x.w)) <= threshold;
  };

  const auto zs = circle_points(grid_n);
  std::vector<std::vector<Point2>> found(zs.size());
  parallel_for(zs.size(), [&](std::size_t k) {
    const cplx z = zs[k];
    std::vector<cplx> roots;
    try {
      roots = fiber_roots(p, z);
    } catch (const Error&) {
      return;
    }
    for (const auto& cl : cluster_roots(roots, 1e-5)) {
      if (std::abs(std::abs(cl.center) - 1.0) > 1e-3) continue;
      const Point2 start{z, cl.center};
      for (const Point2 cand :
           {start, newton_pair(p, pz, pw, pzz, pzw, pww, start, true),
            newton_pair(p, pz, pw, pzz, pzw, pww, start, false)}) {
        if (singular_on_torus(cand)) {
          found[k].push_back(cand);
          break;
        }
      }
    }
  });

  SingularityReport report;
  for (const auto& f : found) {
    for (const Point2 x : f) {
      const bool dup = std::any_of(report.points.begin(), report.points.end(), [&](Point2 y) {
        return std::abs(x.z - y.z) <= 1e-6 && std::abs(x.w - y.w) <= 1e-6;
      });
      if (!dup) report.points.push_back(x);
    }
  }
  report.smooth_on_torus = report.points.empty();
  return report;
}

}  // namespace dvkit
