#include "dvkit/poly2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dvkit/error.hpp"

namespace dvkit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegreeMismatch: return "degree mismatch";
    case ErrorCode::NotSymmetric: return "not symmetric";
    case ErrorCode::FiberDegenerate: return "fiber degenerate";
    case ErrorCode::ZeroOnFiberCircle: return "zero on fiber circle";
    case ErrorCode::QuadratureUnresolved: return "quadrature unresolved";
    case ErrorCode::ZeroOnTorus: return "zero on torus";
    case ErrorCode::SubspaceDegenerate: return "subspace degenerate";
    case ErrorCode::ReflectedCombinationVanishes:
      return "reflected-derivative combination vanishes";
    case ErrorCode::IsometryViolated: return "isometry violated";
    case ErrorCode::UnimodularDEigenvalue: return "unimodular D eigenvalue";
    case ErrorCode::InsufficientSpan: return "insufficient span";
    case ErrorCode::SingularMatrix: return "singular matrix";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::TheoremViolation: return "theorem violation";
    case ErrorCode::Parse: return "parse error";
  }
  return "unknown error";
}

BivariatePolynomial::BivariatePolynomial(Degree degree)
    : degree_(degree) {
  if (degree.z < 0 || degree.w < 0) {
    throw Error(ErrorCode::InvalidArgument, "negative formal degree");
  }
  coeffs_.assign(static_cast<std::size_t>(rows()) * static_cast<std::size_t>(cols()), cplx{});
}

BivariatePolynomial::BivariatePolynomial(Degree degree, std::vector<cplx> row_major)
    : BivariatePolynomial(degree) {
  if (row_major.size() != coeffs_.size()) {
    throw Error(ErrorCode::InvalidArgument, "coefficient count does not match degree");
  }
  coeffs_ = std::move(row_major);
}

BivariatePolynomial BivariatePolynomial::from_rows(
    const std::vector<std::vector<cplx>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw Error(ErrorCode::InvalidArgument, "empty coefficient grid");
  }
  const auto ncols = rows.front().size();
  BivariatePolynomial p(Degree{static_cast<int>(rows.size()) - 1, static_cast<int>(ncols) - 1});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != ncols) {
      throw Error(ErrorCode::InvalidArgument, "ragged coefficient grid at row " + std::to_string(i));
    }
    for (std::size_t j = 0; j < ncols; ++j) {
      p.coeff(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
  }
  return p;
}

BivariatePolynomial BivariatePolynomial::constant(cplx value, Degree degree) {
  BivariatePolynomial p(degree);
  p.coeff(0, 0) = value;
  return p;
}

BivariatePolynomial BivariatePolynomial::monomial(int i, int j, cplx c,
                                                  std::optional<Degree> degree) {
  Degree d = degree.value_or(Degree{i, j});
  d.z = std::max(d.z, i);
  d.w = std::max(d.w, j);
  BivariatePolynomial p(d);
  p.coeff(i, j) = c;
  return p;
}

cplx BivariatePolynomial::coeff_or_zero(int i, int j) const {
  if (i < 0 || j < 0 || i > degree_.z || j > degree_.w) return {};
  return coeff(i, j);
}

cplx BivariatePolynomial::operator()(cplx z, cplx w) const {
  cplx acc{};
  for (int i = degree_.z; i >= 0; --i) {
    cplx row{};
    for (int j = degree_.w; j >= 0; --j) row = row * w + coeff(i, j);
    acc = acc * z + row;
  }
  return acc;
}

double BivariatePolynomial::scale() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

Degree BivariatePolynomial::true_degree() const {
  Degree d{0, 0};
  for (int i = 0; i <= degree_.z; ++i) {
    for (int j = 0; j <= degree_.w; ++j) {
      if (coeff(i, j) != cplx{}) {
        d.z = std::max(d.z, i);
        d.w = std::max(d.w, j);
      }
    }
  }
  return d;
}

bool BivariatePolynomial::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c == cplx{}; });
}

BivariatePolynomial BivariatePolynomial::with_degree(Degree degree) const {
  const Degree td = true_degree();
  if (!is_zero() && (td.z > degree.z || td.w > degree.w)) {
    throw Error(ErrorCode::DegreeMismatch, "cannot truncate nonzero coefficients");
  }
  BivariatePolynomial out(degree);
  for (int i = 0; i <= std::min(degree.z, degree_.z); ++i) {
    for (int j = 0; j <= std::min(degree.w, degree_.w); ++j) out.coeff(i, j) = coeff(i, j);
  }
  return out;
}

std::vector<cplx> BivariatePolynomial::fiber_in_w(cplx z) const {
  std::vector<cplx> out(static_cast<std::size_t>(cols()));
  for (int j = 0; j <= degree_.w; ++j) {
    cplx acc{};
    for (int i = degree_.z; i >= 0; --i) acc = acc * z + coeff(i, j);
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

std::vector<cplx> BivariatePolynomial::fiber_in_z(cplx w) const {
  std::vector<cplx> out(static_cast<std::size_t>(rows()));
  for (int i = 0; i <= degree_.z; ++i) {
    cplx acc{};
    for (int j = degree_.w; j >= 0; --j) acc = acc * w + coeff(i, j);
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

namespace {

Degree join(Degree a, Degree b) { return {std::max(a.z, b.z), std::max(a.w, b.w)}; }

}  // namespace

BivariatePolynomial& BivariatePolynomial::operator+=(const BivariatePolynomial& other) {
  if (!(other.degree_.z <= degree_.z && other.degree_.w <= degree_.w)) {
    *this = with_degree(join(degree_, other.degree_));
  }
  for (int i = 0; i <= other.degree_.z; ++i) {
    for (int j = 0; j <= other.degree_.w; ++j) coeff(i, j) += other.coeff(i, j);
  }
  return *this;
}

BivariatePolynomial& BivariatePolynomial::operator-=(const BivariatePolynomial& other) {
  if (!(other.degree_.z <= degree_.z && other.degree_.w <= degree_.w)) {
    *this = with_degree(join(degree_, other.degree_));
  }
  for (int i = 0; i <= other.degree_.z; ++i) {
    for (int j = 0; j <= other.degree_.w; ++j) coeff(i, j) -= other.coeff(i, j);
  }
  return *this;
}

BivariatePolynomial& BivariatePolynomial::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  BivariatePolynomial out(Degree{a.degree_.z + b.degree_.z, a.degree_.w + b.degree_.w});
  for (int i = 0; i <= a.degree_.z; ++i) {
    for (int j = 0; j <= a.degree_.w; ++j) {
      const cplx ca = a.coeff(i, j);
      if (ca == cplx{}) continue;
      for (int k = 0; k <= b.degree_.z; ++k) {
        for (int l = 0; l <= b.degree_.w; ++l) out.coeff(i + k, j + l) += ca * b.coeff(k, l);
      }
    }
  }
  return out;
}

double max_coeff_distance(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  const Degree d = join(a.degree(), b.degree());
  double m = 0.0;
  for (int i = 0; i <= d.z; ++i) {
    for (int j = 0; j <= d.w; ++j) {
      m = std::max(m, std::abs(a.coeff_or_zero(i, j) - b.coeff_or_zero(i, j)));
    }
  }
  return m;
}

BivariatePolynomial partial_z(const BivariatePolynomial& p) {
  const Degree d = p.degree();
  BivariatePolynomial out(Degree{std::max(d.z - 1, 0), d.w});
  for (int i = 1; i <= d.z; ++i) {
    for (int j = 0; j <= d.w; ++j) out.coeff(i - 1, j) = static_cast<double>(i) * p.coeff(i, j);
  }
  return out;
}

BivariatePolynomial partial_w(const BivariatePolynomial& p) {
  const Degree d = p.degree();
  BivariatePolynomial out(Degree{d.z, std::max(d.w - 1, 0)});
  for (int i = 0; i <= d.z; ++i) {
    for (int j = 1; j <= d.w; ++j) out.coeff(i, j - 1) = static_cast<double>(j) * p.coeff(i, j);
  }
  return out;
}

BivariatePolynomial reflect(const BivariatePolynomial& p, Degree at) {
  const Degree td = p.true_degree();
  if (!p.is_zero() && (td.z > at.z || td.w > at.w)) {
    throw Error(ErrorCode::DegreeMismatch,
                "reflection degree (" + std::to_string(at.z) + "," + std::to_string(at.w) +
                    ") below true degree (" + std::to_string(td.z) + "," +
                    std::to_string(td.w) + ")");
  }
  BivariatePolynomial out(at);
  for (int i = 0; i <= at.z; ++i) {
    for (int j = 0; j <= at.w; ++j) {
      out.coeff(i, j) = std::conj(p.coeff_or_zero(at.z - i, at.w - j));
    }
  }
  return out;
}

std::pair<BivariatePolynomial, BivariatePolynomial> reflected_derivatives(
    const BivariatePolynomial& q) {
  const Degree d = q.degree();
  return {reflect(partial_z(q), Degree{std::max(d.z - 1, 0), d.w}),
          reflect(partial_w(q), Degree{d.z, std::max(d.w - 1, 0)})};
}

SymmetryResult symmetry_analysis(const BivariatePolynomial& q, double tol) {
  if (q.is_zero()) throw Error(ErrorCode::InvalidArgument, "symmetry of the zero polynomial");
  const BivariatePolynomial qt = reflect(q);
  const double scale = q.scale();

  std::size_t k = 0;
  for (std::size_t t = 1; t < q.data().size(); ++t) {
    if (std::abs(q.data()[t]) > std::abs(q.data()[k])) k = t;
  }
  SymmetryResult result;
  if (std::abs(qt.data()[k]) <= tol * scale) return result;

  cplx c = q.data()[k] / qt.data()[k];
  if (std::abs(std::abs(c) - 1.0) > tol) return result;
  c /= std::abs(c);
  for (std::size_t t = 0; t < q.data().size(); ++t) {
    if (std::abs(q.data()[t] - c * qt.data()[t]) > tol * scale) return result;
  }

  result.constant = c;
  if (std::abs(c - 1.0) <= tol) {
    result.kind = SymmetryKind::T2Symmetric;
    result.symmetrizing_factor = 1.0;
    return result;
  }
  result.kind = SymmetryKind::EssentiallyT2Symmetric;
  // reflect(s q) = conj(s) conj(c) q, so s q is symmetric iff s^2 = conj(c).
  cplx s = std::sqrt(std::conj(c));
  if (std::abs(s.real()) <= 1e-15 && s.imag() < 0.0) s = -s;
  if (s.real() < 0.0) s = -s;
  result.symmetrizing_factor = s;
  return result;
}

BivariatePolynomial symmetrize(const BivariatePolynomial& q, double tol) {
  const SymmetryResult sym = symmetry_analysis(q, tol);
  if (sym.kind == SymmetryKind::NotSymmetric) {
    throw Error(ErrorCode::NotSymmetric, "polynomial is not essentially torus-symmetric");
  }
  if (sym.kind == SymmetryKind::T2Symmetric) return q;
  return q * *sym.symmetrizing_factor;
}

BivariatePolynomial swap_transform(const BivariatePolynomial& p) {
  const Degree d = p.degree();
  bool row_nonzero = false;
  for (int j = 0; j <= d.w; ++j) row_nonzero = row_nonzero || p.coeff(d.z, j) != cplx{};
  if (!row_nonzero) {
    throw Error(ErrorCode::DegreeMismatch, "z-degree is below the declared degree");
  }
  BivariatePolynomial out(d);
  for (int i = 0; i <= d.z; ++i) {
    for (int j = 0; j <= d.w; ++j) out.coeff(i, j) = p.coeff(d.z - i, j);
  }
  return out;
}

BivariatePolynomial swap_variables(const BivariatePolynomial& p) {
  const Degree d = p.degree();
  BivariatePolynomial out(Degree{d.w, d.z});
  for (int i = 0; i <= d.z; ++i) {
    for (int j = 0; j <= d.w; ++j) out.coeff(j, i) = p.coeff(i, j);
  }
  return out;
}

BivariatePolynomial times_z(const BivariatePolynomial& p) {
  const Degree d = p.degree();
  BivariatePolynomial out(Degree{d.z + 1, d.w});
  for (int i = 0; i <= d.z; ++i) {
    for (int j = 0; j <= d.w; ++j) out.coeff(i + 1, j) = p.coeff(i, j);
  }
  return out;
}

BivariatePolynomial times_w(const BivariatePolynomial& p) {
  const Degree d = p.degree();
  BivariatePolynomial out(Degree{d.z, d.w + 1});
  for (int i = 0; i <= d.z; ++i) {
    for (int j = 0; j <= d.w; ++j) out.coeff(i, j + 1) = p.coeff(i, j);
  }
  return out;
}

BivariatePolynomial derived_dv_poly(const BivariatePolynomial& p) {
  const Degree d = p.degree();
  BivariatePolynomial out(d);
  for (int i = 0; i <= d.z; ++i) {
    for (int j = 0; j <= d.w; ++j) {
      // z p_z and w p_w keep the monomial and scale by its exponent.
      out.coeff(i, j) = static_cast<double>(d.w * i - d.z * j) * p.coeff(i, j);
    }
  }
  return out;
}

BivariatePolynomial derived_symmetric_poly(const BivariatePolynomial& q) {
  const Degree d = q.degree();
  BivariatePolynomial out(d);
  for (int i = 0; i <= d.z; ++i) {
    for (int j = 0; j <= d.w; ++j) {
      out.coeff(i, j) = static_cast<double>(d.z * d.w - d.w * i - d.z * j) * q.coeff(i, j);
    }
  }
  return out;
}

BivariatePolynomial dilate(const BivariatePolynomial& p, double r) {
  BivariatePolynomial out = p;
  const Degree d = p.degree();
  for (int i = 0; i <= d.z; ++i) {
    for (int j = 0; j <= d.w; ++j) out.coeff(i, j) *= std::pow(r, i + j);
  }
  return out;
}

cplx horner(const std::vector<cplx>& c, cplx x) {
  cplx acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace dvkit
