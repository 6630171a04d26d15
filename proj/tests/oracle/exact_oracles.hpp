#pragma once

// Exact and closed-form references used by the tests. Nothing here calls into
// the library.

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using RMatrix = std::vector<std::vector<Rational>>;

inline Rational frac(const Rational& r) {
  using boost::multiprecision::cpp_int;
  cpp_int n = numerator(r);
  cpp_int d = denominator(r);
  cpp_int q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return r - Rational(q);
}

// Determinant by cofactor expansion.
inline Rational determinant(const RMatrix& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Rational det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    RMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(row);
    }
    const Rational term = m[0][c] * determinant(minor);
    det += (c % 2 == 0) ? term : Rational(-term);
  }
  return det;
}

// Inverse as adjugate / determinant.
inline RMatrix adjugate_inverse(const RMatrix& m) {
  const std::size_t n = m.size();
  const Rational det = determinant(m);
  RMatrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RMatrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<Rational> row;
        for (std::size_t k = 0; k < n; ++k) {
          if (k != i) row.push_back(m[r][k]);
        }
        minor.push_back(row);
      }
      Rational cof = n == 1 ? Rational(1) : determinant(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      inv[i][j] = cof / det;
    }
  }
  return inv;
}

// Integer coefficients (constant term first) of the N-th cyclotomic
// polynomial, by dividing x^N - 1 by every Phi_d with d | N, d < N.
inline std::vector<long long> cyclotomic(int n) {
  std::vector<long long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const std::vector<long long> q = cyclotomic(d);
    // Exact division of p by the monic q.
    std::vector<long long> out(p.size() - q.size() + 1, 0);
    for (int i = static_cast<int>(out.size()) - 1; i >= 0; --i) {
      out[i] = p[i + q.size() - 1];
      for (std::size_t j = 0; j < q.size(); ++j) p[i + j] -= out[i] * q[j];
    }
    p = out;
  }
  return p;
}

// Rank over Q of a rational matrix by Gaussian elimination.
inline std::size_t rational_rank(RMatrix m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Exact rank of E_{jk} = zeta^{-m_j p_k} with zeta = e^{2 pi i / N}, i.e. the
// exponential matrix at the points p_k / N. Each entry of Q(zeta) is replaced
// by its multiplication matrix on the basis 1, zeta, ..., zeta^{phi(N)-1};
// the rank over Q of the expanded matrix is phi(N) times the rank over C.
inline std::size_t cyclotomic_rank(const std::vector<int>& rows, const std::vector<int>& points, int n) {
  const std::vector<long long> phi_n = cyclotomic(n);
  const std::size_t deg = phi_n.size() - 1;
  // Coefficients of x^e mod Phi_N for e = 0 .. N + deg.
  std::vector<std::vector<long long>> power(n + deg, std::vector<long long>(deg, 0));
  std::vector<long long> cur(deg, 0);
  cur[0] = 1;
  for (std::size_t e = 0; e < power.size(); ++e) {
    power[e] = cur;
    // Multiply by x and reduce with x^deg = -sum phi_n[i] x^i.
    const long long top = cur[deg - 1];
    for (std::size_t i = deg - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (std::size_t i = 0; i < deg; ++i) cur[i] -= top * phi_n[i];
  }
  RMatrix big(rows.size() * deg, std::vector<Rational>(points.size() * deg));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t k = 0; k < points.size(); ++k) {
      const long long e = ((-static_cast<long long>(rows[j]) * points[k]) % n + n) % n;
      // Column b of the block is the coefficient vector of zeta^{e + b}.
      for (std::size_t b = 0; b < deg; ++b) {
        for (std::size_t a = 0; a < deg; ++a) big[j * deg + a][k * deg + b] = power[e + b][a];
      }
    }
  }
  return rational_rank(big) / deg;
}

// ||nu_y|| for mu_y = delta_0 - delta_y on {-1, 0, 1}: the projection density
// is -4 sin(pi y) sin(2 pi x - pi y), whose L1 norm is 8 |sin(pi y)| / pi.
inline double projection_norm_two_atoms(double y) { return 8.0 * std::fabs(std::sin(std::numbers::pi * y)) / std::numbers::pi; }

// Fourier coefficient at m of the level-K Cantor measure: uniform mass on the
// 2^K points sum_{k<=K} e_k (q-1) / q^k with e_k in {0, 1}, by direct summation.
inline std::complex<double> cantor_level_sum(int q, int levels, long long m) {
  std::vector<double> pts{0.0};
  double scale = 1.0;
  for (int k = 1; k <= levels; ++k) {
    scale /= q;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) pts.push_back(pts[i] + (q - 1) * scale);
  }
  std::complex<double> s = 0.0;
  for (double x : pts) {
    const double t = std::fmod(static_cast<double>(m) * x, 1.0);
    s += std::polar(1.0, -2.0 * std::numbers::pi * t);
  }
  return s / static_cast<double>(pts.size());
}

}  // namespace oracle
