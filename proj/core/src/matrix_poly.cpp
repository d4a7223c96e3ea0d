#include "dvkit/matrix_poly.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "dvkit/error.hpp"

namespace dvkit {

MatrixPolynomial::MatrixPolynomial(int rows, int cols, int degree)
    : rows_(rows), cols_(cols), degree_(degree) {
  entries_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
                  std::vector<cplx>(static_cast<std::size_t>(degree + 1)));
}

CMatrix MatrixPolynomial::operator()(cplx x) const {
  CMatrix m(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m(r, c) = horner(entry(r, c), x);
  }
  return m;
}

double MatrixPolynomial::max_coeff_norm() const {
  double s = 0.0;
  for (const auto& e : entries_) {
    for (const auto& c : e) s = std::max(s, std::abs(c));
  }
  return s;
}

MatrixPolynomial MatrixPolynomial::reflected() const {
  MatrixPolynomial out(rows_, cols_, degree_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      const auto& src = entry(r, c);
      auto& dst = out.entry(r, c);
      for (int k = 0; k <= degree_; ++k) {
        dst[static_cast<std::size_t>(k)] = std::conj(src[static_cast<std::size_t>(degree_ - k)]);
      }
    }
  }
  return out;
}

MatrixPolynomial& MatrixPolynomial::operator*=(cplx s) {
  for (auto& e : entries_) {
    for (auto& c : e) c *= s;
  }
  return *this;
}

MatrixPolynomial matrix_form_in_w(const VectorPolynomial& v, int cols) {
  const int deg = v.empty() ? 0 : v.front().degree().w;
  MatrixPolynomial m(static_cast<int>(v.size()), cols, deg);
  for (int k = 0; k < static_cast<int>(v.size()); ++k) {
    const auto& comp = v[static_cast<std::size_t>(k)];
    if (comp.degree().z >= cols) {
      throw Error(ErrorCode::DegreeMismatch, "component z-degree exceeds matrix width");
    }
    for (int i = 0; i <= comp.degree().z; ++i) {
      for (int j = 0; j <= comp.degree().w; ++j) {
        m.entry(k, i)[static_cast<std::size_t>(j)] = comp.coeff(i, j);
      }
    }
  }
  return m;
}

MatrixPolynomial matrix_form_in_z(const VectorPolynomial& v, int cols) {
  const int deg = v.empty() ? 0 : v.front().degree().z;
  MatrixPolynomial m(static_cast<int>(v.size()), cols, deg);
  for (int k = 0; k < static_cast<int>(v.size()); ++k) {
    const auto& comp = v[static_cast<std::size_t>(k)];
    if (comp.degree().w >= cols) {
      throw Error(ErrorCode::DegreeMismatch, "component w-degree exceeds matrix width");
    }
    for (int i = 0; i <= comp.degree().z; ++i) {
      for (int j = 0; j <= comp.degree().w; ++j) {
        m.entry(k, j)[static_cast<std::size_t>(i)] = comp.coeff(i, j);
      }
    }
  }
  return m;
}

VectorPolynomial vector_from_matrix_in_z(const MatrixPolynomial& m, Degree degree) {
  VectorPolynomial v;
  v.reserve(static_cast<std::size_t>(m.rows()));
  for (int k = 0; k < m.rows(); ++k) {
    BivariatePolynomial comp(degree);
    for (int j = 0; j < m.cols() && j <= degree.w; ++j) {
      const auto& e = m.entry(k, j);
      for (int i = 0; i < static_cast<int>(e.size()) && i <= degree.z; ++i) {
        comp.coeff(i, j) = e[static_cast<std::size_t>(i)];
      }
    }
    v.push_back(std::move(comp));
  }
  return v;
}

VectorPolynomial vector_from_matrix_in_w(const MatrixPolynomial& m, Degree degree) {
  VectorPolynomial v;
  v.reserve(static_cast<std::size_t>(m.rows()));
  for (int k = 0; k < m.rows(); ++k) {
    BivariatePolynomial comp(degree);
    for (int i = 0; i < m.cols() && i <= degree.z; ++i) {
      const auto& e = m.entry(k, i);
      for (int j = 0; j < static_cast<int>(e.size()) && j <= degree.w; ++j) {
        comp.coeff(i, j) = e[static_cast<std::size_t>(j)];
      }
    }
    v.push_back(std::move(comp));
  }
  return v;
}

CVector evaluate(const VectorPolynomial& v, cplx z, cplx w) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) out(static_cast<Eigen::Index>(k)) = v[k](z, w);
  return out;
}

cplx kernel(const VectorPolynomial& v, Point2 x, Point2 y) {
  cplx acc{};
  for (const auto& comp : v) acc += comp(x.z, x.w) * std::conj(comp(y.z, y.w));
  return acc;
}

namespace {

Eigen::Index basis_size(Degree b) {
  return static_cast<Eigen::Index>(b.z + 1) * static_cast<Eigen::Index>(b.w + 1);
}

}  // namespace

CMatrix kernel_matrix(const VectorPolynomial& v, Degree basis) {
  const Eigen::Index dim = basis_size(basis);
  CMatrix c = CMatrix::Zero(dim, static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) {
    for (int i = 0; i <= basis.z; ++i) {
      for (int j = 0; j <= basis.w; ++j) {
        c(i * (basis.w + 1) + j, static_cast<Eigen::Index>(k)) = v[k].coeff_or_zero(i, j);
      }
    }
  }
  return c * c.adjoint();
}

VectorPolynomial factor_kernel_matrix(const CMatrix& k, Degree basis, int count) {
  const CMatrix herm = 0.5 * (k + k.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  const Eigen::Index dim = herm.rows();
  VectorPolynomial out;
  out.reserve(static_cast<std::size_t>(count));
  // Eigenvalues ascend; take the largest `count`.
  for (int t = 0; t < count; ++t) {
    const Eigen::Index col = dim - 1 - t;
    BivariatePolynomial comp(basis);
    if (col >= 0) {
      const double lambda = std::max(es.eigenvalues()(col), 0.0);
      const double s = std::sqrt(lambda);
      for (int i = 0; i <= basis.z; ++i) {
        for (int j = 0; j <= basis.w; ++j) {
          comp.coeff(i, j) = s * es.eigenvectors()(i * (basis.w + 1) + j, col);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace dvkit
