#include "dvkit/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dvkit/error.hpp"
#include "dvkit/grids.hpp"
#include "dvkit/parallel.hpp"

namespace dvkit {

namespace {

std::size_t slot(Degree range, int a, int b) {
  return static_cast<std::size_t>((a + range.z) * (2 * range.w + 1) + (b + range.w));
}

// Unnormalized moments sum h(z_j, w_k) z_j^a w_k^b / N^2 on an N x N grid,
// for a in [-n, n], b in [-m, m].
std::vector<cplx> grid_moments(const BivariatePolynomial& q, int N, double zero_threshold) {
  const Degree range = q.degree();
  const auto roots = circle_points(N);
  std::vector<std::vector<cplx>> rows(static_cast<std::size_t>(N));
  std::vector<double> row_min(static_cast<std::size_t>(N));

  parallel_for(static_cast<std::size_t>(N), [&](std::size_t j) {
    const auto fiber = q.fiber_in_w(roots[j]);
    std::vector<cplx> r(static_cast<std::size_t>(range.w + 1));
    double lo = std::numeric_limits<double>::infinity();
    for (int k = 0; k < N; ++k) {
      const double mod = std::abs(horner(fiber, roots[static_cast<std::size_t>(k)]));
      lo = std::min(lo, mod);
      const double h = 1.0 / (mod * mod);
      for (int b = 0; b <= range.w; ++b) {
        r[static_cast<std::size_t>(b)] +=
            h * roots[static_cast<std::size_t>((static_cast<long>(k) * b) % N)];
      }
    }
    rows[j] = std::move(r);
    row_min[j] = lo;
  });
  if (*std::min_element(row_min.begin(), row_min.end()) <= zero_threshold) {
    throw Error(ErrorCode::ZeroOnTorus, "|q| vanishes at a torus quadrature node");
  }

  std::vector<cplx> out(static_cast<std::size_t>((2 * range.z + 1) * (2 * range.w + 1)));
  const double norm = 1.0 / (static_cast<double>(N) * N);
  for (int a = -range.z; a <= range.z; ++a) {
    for (int b = 0; b <= range.w; ++b) {
      cplx acc{};
      for (int j = 0; j < N; ++j) {
        const long e = ((static_cast<long>(j) * a) % N + N) % N;
        acc += roots[static_cast<std::size_t>(e)] * rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)];
      }
      out[slot(range, a, b)] = acc * norm;
      out[slot(range, -a, -b)] = std::conj(acc * norm);
    }
  }
  return out;
}

MomentTable normalized(const BivariatePolynomial& q, std::vector<cplx> raw, int grid_size) {
  MomentTable t;
  t.q = q;
  t.range = q.degree();
  t.grid_size = grid_size;
  const double mass = raw[slot(t.range, 0, 0)].real();
  t.normalizer_c = 1.0 / std::sqrt(mass);
  for (auto& v : raw) v /= mass;
  t.values = std::move(raw);
  return t;
}

double max_difference(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

int default_grid(const BivariatePolynomial& q) {
  const Degree d = q.degree();
  const int want = std::max(256, 16 * (d.z + d.w));
  int n = 1;
  while (n < want) n *= 2;
  return n;
}

}  // namespace

cplx MomentTable::operator()(int a, int b) const {
  if (std::abs(a) > range.z || std::abs(b) > range.w) {
    throw Error(ErrorCode::InvalidArgument, "moment index outside the table");
  }
  return values[slot(range, a, b)];
}

MomentTable compute_moments(const BivariatePolynomial& q, int grid_size) {
  if (q.is_zero()) throw Error(ErrorCode::ZeroOnTorus, "zero polynomial");
  const double threshold = 1e-8 * q.scale();
  const bool automatic = grid_size <= 0;
  int n = automatic ? default_grid(q) : grid_size;
  const int limit = automatic ? 4096 : grid_size;

  auto scaled = [](std::vector<cplx> raw, Degree range) {
    const double mass = raw[slot(range, 0, 0)].real();
    for (auto& v : raw) v /= mass;
    return raw;
  };
  std::vector<cplx> coarse = grid_moments(q, n, threshold);
  while (true) {
    std::vector<cplx> fine = grid_moments(q, 2 * n, threshold);
    if (max_difference(scaled(coarse, q.degree()), scaled(fine, q.degree())) <= 1e-9) {
      return normalized(q, std::move(fine), 2 * n);
    }
    if (n >= limit) break;
    n *= 2;
    coarse = std::move(fine);
  }
  throw Error(ErrorCode::QuadratureUnresolved,
              "torus moments did not converge up to grid " + std::to_string(2 * n));
}

namespace {

constexpr int kInnerStart = 64;
constexpr int kInnerLimit = 1 << 22;
constexpr int kOuterStart = 256;
constexpr int kOuterLimit = 1 << 20;

// mean over the z-circle of z^a / |q(z, w)|^2 for a = 0..n, refined by
// doubling until two rules agree to 1e-13 relative.
std::vector<cplx> inner_moments(const BivariatePolynomial& q, cplx w, double zero_threshold) {
  const int n = q.degree().z;
  const auto fiber = q.fiber_in_z(w);
  std::vector<cplx> sum(static_cast<std::size_t>(n + 1));
  auto add_nodes = [&](int count, int stride_phase) {
    // Nodes 2 pi (k + phase/2)/count for k < count.
    for (int k = 0; k < count; ++k) {
      const cplx z = unit(2.0 * kPi * (k + 0.5 * stride_phase) / count);
      const double mod = std::abs(horner(fiber, z));
      if (mod <= zero_threshold) {
        throw Error(ErrorCode::ZeroOnTorus, "|q| vanishes at a torus quadrature node");
      }
      const double h = 1.0 / (mod * mod);
      cplx zp = 1.0;
      for (int a = 0; a <= n; ++a) {
        sum[static_cast<std::size_t>(a)] += h * zp;
        zp *= z;
      }
    }
  };
  int count = kInnerStart;
  add_nodes(count, 0);
  std::vector<cplx> prev(sum.size());
  for (std::size_t a = 0; a < sum.size(); ++a) prev[a] = sum[a] / static_cast<double>(count);
  while (count < kInnerLimit) {
    add_nodes(count, 1);
    count *= 2;
    std::vector<cplx> cur(sum.size());
    for (std::size_t a = 0; a < sum.size(); ++a) cur[a] = sum[a] / static_cast<double>(count);
    if (max_difference(prev, cur) <= 1e-13 * std::abs(cur[0])) return cur;
    prev = std::move(cur);
  }
  throw Error(ErrorCode::QuadratureUnresolved, "inner fiber quadrature did not converge");
}

}  // namespace

MomentTable compute_moments_adaptive(const BivariatePolynomial& q) {
  if (q.is_zero()) throw Error(ErrorCode::ZeroOnTorus, "zero polynomial");
  const Degree range = q.degree();
  const double threshold = 1e-14 * q.scale();
  const std::size_t width = static_cast<std::size_t>(2 * range.w + 1);
  // sums[a * width + (b + m)] accumulates w^b m_a(w) for a = 0..n.
  std::vector<cplx> sums(static_cast<std::size_t>(range.z + 1) * width);

  auto add_nodes = [&](int count, int phase) {
    std::vector<std::vector<cplx>> inner(static_cast<std::size_t>(count));
    std::vector<cplx> ws(static_cast<std::size_t>(count));
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t k) {
      ws[k] = unit(2.0 * kPi * (static_cast<double>(k) + 0.5 * phase) / count);
      inner[k] = inner_moments(q, ws[k], threshold);
    });
    for (std::size_t k = 0; k < ws.size(); ++k) {
      for (int b = -range.w; b <= range.w; ++b) {
        const cplx wb = std::pow(ws[k], b);
        for (int a = 0; a <= range.z; ++a) {
          sums[static_cast<std::size_t>(a) * width + static_cast<std::size_t>(b + range.w)] +=
              wb * inner[k][static_cast<std::size_t>(a)];
        }
      }
    }
  };
  auto current = [&](int count) {
    std::vector<cplx> raw(static_cast<std::size_t>((2 * range.z + 1)) * width);
    for (int a = 0; a <= range.z; ++a) {
      for (int b = -range.w; b <= range.w; ++b) {
        const cplx v =
            sums[static_cast<std::size_t>(a) * width + static_cast<std::size_t>(b + range.w)] /
            static_cast<double>(count);
        raw[slot(range, a, b)] = v;
        raw[slot(range, -a, -b)] = std::conj(v);
      }
    }
    return raw;
  };

  int count = kOuterStart;
  add_nodes(count, 0);
  std::vector<cplx> prev = current(count);
  while (count < kOuterLimit) {
    add_nodes(count, 1);
    count *= 2;
    std::vector<cplx> cur = current(count);
    const double mass = cur[slot(range, 0, 0)].real();
    if (max_difference(prev, cur) <= 1e-12 * mass) return normalized(q, std::move(cur), count);
    prev = std::move(cur);
  }
  throw Error(ErrorCode::QuadratureUnresolved, "outer torus quadrature did not converge");
}

CMatrix gram_matrix(const MomentTable& mu, const std::vector<std::pair<int, int>>& monomials) {
  const auto size = static_cast<Eigen::Index>(monomials.size());
  CMatrix g(size, size);
  for (Eigen::Index r = 0; r < size; ++r) {
    const auto [ri, rj] = monomials[static_cast<std::size_t>(r)];
    for (Eigen::Index s = 0; s < size; ++s) {
      const auto [si, sj] = monomials[static_cast<std::size_t>(s)];
      g(r, s) = mu(si - ri, sj - rj);
    }
  }
  return g;
}

}  // namespace dvkit
