#include "dvkit/blaschke.hpp"

#include <cmath>

#include "dvkit/error.hpp"

namespace dvkit {

namespace {

std::vector<cplx> multiply(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

void check_zeros(const BlaschkeProduct& b) {
  for (const cplx a : b.zeros) {
    if (std::abs(a) >= 1.0) throw Error(ErrorCode::InvalidArgument, "Blaschke zero outside the disk");
  }
}

}  // namespace

cplx BlaschkeProduct::operator()(cplx z) const {
  cplx v = 1.0;
  for (const cplx a : zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
  return v;
}

std::vector<cplx> BlaschkeProduct::numerator() const {
  std::vector<cplx> out{1.0};
  for (const cplx a : zeros) out = multiply(out, {-a, 1.0});
  return out;
}

std::vector<cplx> BlaschkeProduct::denominator() const {
  std::vector<cplx> out{1.0};
  for (const cplx a : zeros) out = multiply(out, {1.0, -std::conj(a)});
  return out;
}

BivariatePolynomial blaschke_variety(const BlaschkeProduct& b, int m) {
  check_zeros(b);
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be positive");
  const int k = static_cast<int>(b.zeros.size());
  BivariatePolynomial p({k, m});
  const auto num = b.numerator();
  const auto den = b.denominator();
  for (int i = 0; i <= k; ++i) {
    p.coeff(i, m) += den[static_cast<std::size_t>(i)];
    p.coeff(i, 0) -= num[static_cast<std::size_t>(i)];
  }
  return p;
}

CMatrix blaschke_colligation(const BlaschkeProduct& b) {
  check_zeros(b);
  const int k = static_cast<int>(b.zeros.size());
  CMatrix v = CMatrix::Identity(k + 1, k + 1);
  // Cascade: the factor appended last acts first on the input.
  for (int f = 0; f < k; ++f) {
    const cplx alpha = b.zeros[static_cast<std::size_t>(f)];
    const double s = std::sqrt(1.0 - std::norm(alpha));
    // Colligation of the factor placed on (output, state f+1).
    CMatrix factor = CMatrix::Identity(k + 1, k + 1);
    factor(0, 0) = -alpha;
    factor(0, f + 1) = s;
    factor(f + 1, 0) = s;
    factor(f + 1, f + 1) = std::conj(alpha);
    v = v * factor;
  }
  return v;
}

UnitaryRealization companion_realization(const BlaschkeProduct& b, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be positive");
  const CMatrix col = blaschke_colligation(b);
  const int k = static_cast<int>(b.zeros.size());
  UnitaryRealization rep;
  rep.m = m;
  rep.n = k;
  rep.U = CMatrix::Zero(m + k, m + k);
  for (int i = 0; i + 1 < m; ++i) rep.U(i, i + 1) = 1.0;
  rep.U(m - 1, 0) += col(0, 0);
  for (int j = 0; j < k; ++j) {
    rep.U(m - 1, m + j) = col(0, 1 + j);
    rep.U(m + j, 0) = col(1 + j, 0);
    for (int l = 0; l < k; ++l) rep.U(m + j, m + l) = col(1 + j, 1 + l);
  }
  rep.rank = m + k;
  return rep;
}

MatrixPolynomial identity_qmatrix(int m) {
  MatrixPolynomial q(m, m, 0);
  for (int i = 0; i < m; ++i) q.entry(i, i)[0] = 1.0;
  return q;
}

}  // namespace dvkit
