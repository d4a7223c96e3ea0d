#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dvkit/types.hpp"

namespace dvkit {

// Formal bidegree (degree in z, degree in w).
struct Degree {
  int z = 0;
  int w = 0;

  friend bool operator==(const Degree&, const Degree&) = default;
};

// Dense coefficient grid for sum_{i,j} c_ij z^i w^j, indexed [z-power][w-power].
//
// The formal degree is part of the value: it may exceed the true degree, and
// reflection depends on it, so it is never inferred from the coefficients.
class BivariatePolynomial {
 public:
  BivariatePolynomial() : BivariatePolynomial(Degree{0, 0}) {}
  explicit BivariatePolynomial(Degree degree);
  BivariatePolynomial(Degree degree, std::vector<cplx> row_major);

  // rows[i][j] is the coefficient of z^i w^j; all rows must have equal length.
  static BivariatePolynomial from_rows(const std::vector<std::vector<cplx>>& rows);
  static BivariatePolynomial constant(cplx value, Degree degree);
  // Single term c z^i w^j with formal degree at least (i, j).
  static BivariatePolynomial monomial(int i, int j, cplx c = 1.0,
                                      std::optional<Degree> degree = std::nullopt);

  Degree degree() const { return degree_; }
  int rows() const { return degree_.z + 1; }
  int cols() const { return degree_.w + 1; }

  cplx coeff(int i, int j) const { return coeffs_[index(i, j)]; }
  cplx& coeff(int i, int j) { return coeffs_[index(i, j)]; }
  // Zero outside the grid.
  cplx coeff_or_zero(int i, int j) const;

  const std::vector<cplx>& data() const { return coeffs_; }

  // Nested Horner: w-inner, z-outer.
  cplx operator()(cplx z, cplx w) const;

  // Largest coefficient modulus; the reference for relative tolerances.
  double scale() const;
  // Smallest degree containing every nonzero coefficient.
  Degree true_degree() const;
  bool is_zero() const;

  // Same polynomial at a larger formal degree (or a smaller one when the
  // truncated coefficients are exactly zero).
  BivariatePolynomial with_degree(Degree degree) const;

  // Coefficients of p(z, .) as a polynomial in w.
  std::vector<cplx> fiber_in_w(cplx z) const;
  // Coefficients of p(., w) as a polynomial in z.
  std::vector<cplx> fiber_in_z(cplx w) const;

  BivariatePolynomial& operator+=(const BivariatePolynomial& other);
  BivariatePolynomial& operator-=(const BivariatePolynomial& other);
  BivariatePolynomial& operator*=(cplx s);

  friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) {
    return a += b;
  }
  friend BivariatePolynomial operator-(BivariatePolynomial a, const BivariatePolynomial& b) {
    return a -= b;
  }
  friend BivariatePolynomial operator*(BivariatePolynomial a, cplx s) { return a *= s; }
  friend BivariatePolynomial operator*(cplx s, BivariatePolynomial a) { return a *= s; }
  friend BivariatePolynomial operator*(const BivariatePolynomial& a,
                                       const BivariatePolynomial& b);

  friend bool operator==(const BivariatePolynomial&, const BivariatePolynomial&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols()) +
           static_cast<std::size_t>(j);
  }

  Degree degree_;
  std::vector<cplx> coeffs_;
};

using VectorPolynomial = std::vector<BivariatePolynomial>;

inline cplx evaluate(const BivariatePolynomial& p, cplx z, cplx w) { return p(z, w); }

// Maximum coefficient distance, over the union of both grids.
double max_coeff_distance(const BivariatePolynomial& a, const BivariatePolynomial& b);

// Coefficient-shifted derivatives; formal degree drops by one in the
// differentiated variable, clamped at zero.
BivariatePolynomial partial_z(const BivariatePolynomial& p);
BivariatePolynomial partial_w(const BivariatePolynomial& p);

// z^n w^m conj(p(1/conj z, 1/conj w)) at the stated degree. Throws
// DegreeMismatch when the true degree exceeds `at_degree`.
BivariatePolynomial reflect(const BivariatePolynomial& p, Degree at_degree);
inline BivariatePolynomial reflect(const BivariatePolynomial& p) {
  return reflect(p, p.degree());
}

// (reflect(q_z) at (n-1, m), reflect(q_w) at (n, m-1)).
std::pair<BivariatePolynomial, BivariatePolynomial> reflected_derivatives(
    const BivariatePolynomial& q);

enum class SymmetryKind { T2Symmetric, EssentiallyT2Symmetric, NotSymmetric };

struct SymmetryResult {
  SymmetryKind kind = SymmetryKind::NotSymmetric;
  // q = constant * reflect(q).
  std::optional<cplx> constant;
  // Unimodular s with s*q torus-symmetric: s^2 = conj(constant), Re s >= 0,
  // and Im s > 0 when Re s = 0.
  std::optional<cplx> symmetrizing_factor;
};

SymmetryResult symmetry_analysis(const BivariatePolynomial& q, double tol = 1e-10);

// s*q for the factor above. Throws NotSymmetric.
BivariatePolynomial symmetrize(const BivariatePolynomial& q, double tol = 1e-10);

// z^n p(1/z, w): reverses the z-index. Requires a nonzero row n.
BivariatePolynomial swap_transform(const BivariatePolynomial& p);

// p(w, z), degree (m, n).
BivariatePolynomial swap_variables(const BivariatePolynomial& p);

// m z p_z - n w p_w at degree (n, m).
BivariatePolynomial derived_dv_poly(const BivariatePolynomial& p);
// m n q - m z q_z - n w q_w at degree (n, m).
BivariatePolynomial derived_symmetric_poly(const BivariatePolynomial& q);

// z * p, w * p with the formal degree raised by one.
BivariatePolynomial times_z(const BivariatePolynomial& p);
BivariatePolynomial times_w(const BivariatePolynomial& p);

// p(r z, r w).
BivariatePolynomial dilate(const BivariatePolynomial& p, double r);

// Horner evaluation of a one-variable coefficient list (c[k] multiplies x^k).
cplx horner(const std::vector<cplx>& c, cplx x);

}  // namespace dvkit
