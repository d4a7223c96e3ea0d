#pragma once

#include <vector>

#include "dvkit/poly2.hpp"
#include "dvkit/types.hpp"

namespace dvkit {

// Matrix whose entries are one-variable polynomials; entry(r, c)[k] is the
// coefficient of x^k. Used for A(w), B(z), Q(z) and friends.
class MatrixPolynomial {
 public:
  MatrixPolynomial() = default;
  MatrixPolynomial(int rows, int cols, int degree);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int degree() const { return degree_; }

  const std::vector<cplx>& entry(int r, int c) const { return entries_[index(r, c)]; }
  std::vector<cplx>& entry(int r, int c) { return entries_[index(r, c)]; }

  CMatrix operator()(cplx x) const;
  double max_coeff_norm() const;

  // x^d conj(M(1/conj x)) entrywise at degree d = degree().
  MatrixPolynomial reflected() const;

  MatrixPolynomial& operator*=(cplx s);

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  int degree_ = 0;
  std::vector<std::vector<cplx>> entries_;
};

// Given components V_k(z,w), returns M(w) with V(z,w) = M(w) (1, z, ..., z^{cols-1})^t.
MatrixPolynomial matrix_form_in_w(const VectorPolynomial& v, int cols);
// Given components V_k(z,w), returns M(z) with V(z,w) = M(z) (1, w, ..., w^{cols-1})^t.
MatrixPolynomial matrix_form_in_z(const VectorPolynomial& v, int cols);

// Inverse of matrix_form_in_z at formal degree `degree`.
VectorPolynomial vector_from_matrix_in_z(const MatrixPolynomial& m, Degree degree);
VectorPolynomial vector_from_matrix_in_w(const MatrixPolynomial& m, Degree degree);

CVector evaluate(const VectorPolynomial& v, cplx z, cplx w);

// sum_k V_k(x) conj(V_k(y)).
cplx kernel(const VectorPolynomial& v, Point2 x, Point2 y);

// Hermitian Gram matrix K with kernel(x, y) = m(x)^T K conj(m(y)) over the
// monomial basis of `basis` degree (row-major [i][j] order). Basis-independent
// representation of the kernel.
CMatrix kernel_matrix(const VectorPolynomial& v, Degree basis);

// Inverse of kernel_matrix: `count` vector components from the top eigenpairs
// of a Hermitian PSD kernel matrix (negative eigenvalues clipped).
VectorPolynomial factor_kernel_matrix(const CMatrix& k, Degree basis, int count);

}  // namespace dvkit
