#include "minext/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "minext/error.hpp"
#include "minext/grid_solver.hpp"

namespace minext {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Values of phi on the uniform grid with n points per axis.
std::vector<Complex> grid_values(const TrigPolynomial& phi, int n) {
  GridSpec grid{phi.dim(), n};
  std::vector<Complex> out(grid.total());
  const auto& support = phi.support();
  const auto& c = phi.coefficients();
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto idx = grid.multi_index(k);
    Complex s = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      long long e = 0;
      for (std::size_t i = 0; i < idx.size(); ++i) e += static_cast<long long>(support[j][i]) * idx[i];
      s += c[j] * root_of_unity(e, n);
    }
    out[k] = s;
  }
  return out;
}

int validation_points(const CertificateOptions& opts, int dim) {
  return opts.validation_points > 0 ? opts.validation_points : default_validation_points(dim);
}

}  // namespace

int default_validation_points(int dim) {
  switch (dim) {
    case 1: return 4096;
    case 2: return 256;
    case 3: return 32;
    default: return 12;
  }
}

double measured_sup_norm(const TrigPolynomial& phi, int points_per_axis) {
  double s = 0.0;
  for (const auto& v : grid_values(phi, points_per_axis)) s = std::max(s, std::abs(v));
  return s;
}

Certificate certificate_from_poly(const TrigPolynomial& phi, const SpectralData& data, double epsilon,
                                  const CertificateOptions& opts) {
  if (phi.dim() != data.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "certificate and data dimensions differ");
  }
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kCertificateRejected, "epsilon is zero; any certificate is vacuous");
  }
  double sup = measured_sup_norm(phi, validation_points(opts, phi.dim()));
  if (sup == 0.0) throw Error(ErrorCode::kCertificateRejected, "certificate vanishes identically");
  TrigPolynomial p = phi.scaled(1.0 / std::max(1.0, sup));
  sup = std::min(sup, 1.0);
  Complex pairing = spectral_pairing(p, data);
  double mag = std::abs(pairing);
  if (mag > 0.0) p = p.scaled(std::conj(pairing) / mag);
  if (mag < epsilon * (1.0 - opts.validation_tol)) {
    throw Error(ErrorCode::kCertificateRejected,
                "pairing " + std::to_string(mag) + " below epsilon " + std::to_string(epsilon));
  }
  return {std::move(p), sup, Complex(mag, 0.0)};
}

Certificate certificate_from_dual(const Eigen::VectorXcd& dual, const SpectralData& data, double epsilon,
                                  const CertificateOptions& opts) {
  if (static_cast<std::size_t>(dual.size()) != data.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "dual vector length differs from lambda");
  }
  std::vector<Complex> c(dual.data(), dual.data() + dual.size());
  return certificate_from_poly(TrigPolynomial(data.lambda(), std::move(c)), data, epsilon, opts);
}

TrigPolynomial interpolate_sign_pattern(const FrequencySet& lambda, const std::vector<TorusPoint>& points,
                                        const std::vector<Complex>& signs) {
  if (lambda.dim() != 1) throw Error(ErrorCode::kUnsupported, "sign interpolation needs d = 1");
  if (points.size() != signs.size() || points.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "need one sign per point");
  }
  const Eigen::Index j = static_cast<Eigen::Index>(lambda.size());
  const Eigen::Index k = static_cast<Eigen::Index>(points.size());
  // Unknowns: Re c_m then Im c_m.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3 * k, 2 * j);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(3 * k);
  for (Eigen::Index p = 0; p < k; ++p) {
    const TorusPoint& x = points[static_cast<std::size_t>(p)];
    const Complex s = signs[static_cast<std::size_t>(p)] / std::abs(signs[static_cast<std::size_t>(p)]);
    for (Eigen::Index q = 0; q < j; ++q) {
      const int m = lambda[static_cast<std::size_t>(q)][0];
      const Complex e = unit_phase(m * x[0]);
      // phi(x) = sum (u + iv) e
      a(2 * p, q) = e.real();
      a(2 * p, j + q) = -e.imag();
      a(2 * p + 1, q) = e.imag();
      a(2 * p + 1, j + q) = e.real();
      // Re(conj(s) * 2 pi i m (u + iv) e)
      const Complex d = std::conj(s) * Complex(0.0, kTwoPi * m) * e;
      a(2 * k + p, q) = d.real();
      a(2 * k + p, j + q) = -d.imag();
    }
    rhs(2 * p) = s.real();
    rhs(2 * p + 1) = s.imag();
  }
  Eigen::VectorXd sol = a.completeOrthogonalDecomposition().solve(rhs);
  std::vector<Complex> c(static_cast<std::size_t>(j));
  for (Eigen::Index q = 0; q < j; ++q) c[static_cast<std::size_t>(q)] = Complex(sol(q), sol(j + q));
  return TrigPolynomial(lambda, std::move(c));
}

DeficitPolynomial deficit(const TrigPolynomial& phi) {
  const FrequencySet& support = phi.support();
  FrequencySet diffs = support.differences();
  std::vector<Complex> c(diffs.size(), 0.0);
  const auto& a = phi.coefficients();
  for (std::size_t p = 0; p < support.size(); ++p) {
    for (std::size_t q = 0; q < support.size(); ++q) {
      c[diffs.index_of(support[p] - support[q])] -= a[p] * std::conj(a[q]);
    }
  }
  const Frequency zero = Frequency::zero(phi.dim());
  const std::size_t z = diffs.index_of(zero);
  c[z] = Complex(1.0 + c[z].real(), 0.0);
  // diffs is sorted and symmetric, so entry i pairs with entry n-1-i.
  const std::size_t n = diffs.size();
  for (std::size_t i = 0; i < z; ++i) c[i] = std::conj(c[n - 1 - i]);
  return {TrigPolynomial(std::move(diffs), std::move(c))};
}

bool is_degenerate(const TrigPolynomial& phi, double tol) {
  int unit = 0;
  for (const auto& c : phi.coefficients()) {
    double m = std::abs(c);
    if (std::fabs(m - 1.0) <= tol) {
      ++unit;
    } else if (m >= tol) {
      return false;
    }
  }
  return unit == 1;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs, double trim) {
  double big = 0.0;
  for (const auto& c : coeffs) big = std::max(big, std::abs(c));
  if (big == 0.0) throw Error(ErrorCode::kInvalidArgument, "zero polynomial has no finite root set");
  std::size_t n = coeffs.size();
  while (n > 0 && std::abs(coeffs[n - 1]) <= trim * big) --n;
  std::size_t low = 0;
  while (low < n && std::abs(coeffs[low]) <= trim * big) ++low;
  std::vector<Complex> roots(low, Complex(0.0));
  const std::size_t deg = n - 1 - low;
  if (deg == 0) return roots;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
  for (std::size_t i = 1; i < deg; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  const Complex lead = coeffs[n - 1];
  for (std::size_t i = 0; i < deg; ++i) {
    comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -coeffs[low + i] / lead;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::kNumerical, "companion eigenvalues failed");
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

std::vector<TorusPoint> support_from_certificate_1d(const TrigPolynomial& phi, double degeneracy_tol,
                                                    const RootOptions& opts) {
  if (phi.dim() != 1) throw Error(ErrorCode::kUnsupported, "root finding needs d = 1");
  if (is_degenerate(phi, degeneracy_tol)) {
    throw Error(ErrorCode::kDegenerateCertificate, "certificate is a unimodular character; |phi| = 1 on all of T");
  }
  DeficitPolynomial def = deficit(phi);
  const FrequencySet& diffs = def.poly.support();
  const int k_max = diffs.max_abs();
  std::vector<Complex> c(static_cast<std::size_t>(2 * k_max + 1), 0.0);
  double big = 0.0;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    c[static_cast<std::size_t>(diffs[i][0] + k_max)] = def.poly.coefficients()[i];
    big = std::max(big, std::abs(def.poly.coefficients()[i]));
  }
  if (big <= degeneracy_tol) {
    throw Error(ErrorCode::kDegenerateCertificate, "deficit polynomial vanishes; |phi| = 1 on all of T");
  }
  // Drop negligible outer frequencies in matching pairs.
  std::size_t lo = 0, hi = c.size();
  while (hi - lo > 1 && std::abs(c[lo]) <= 1e-14 * big && std::abs(c[hi - 1]) <= 1e-14 * big) {
    ++lo;
    --hi;
  }
  const int shift = k_max - static_cast<int>(lo);
  std::vector<Complex> trimmed(c.begin() + static_cast<std::ptrdiff_t>(lo), c.begin() + static_cast<std::ptrdiff_t>(hi));

  auto derivs = [&](double x) {
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t i = 0; i < trimmed.size(); ++i) {
      const double k = static_cast<double>(static_cast<int>(i) - shift);
      const Complex v = trimmed[i] * unit_phase(k * x);
      d1 += (v * Complex(0.0, kTwoPi * k)).real();
      d2 += -(kTwoPi * k) * (kTwoPi * k) * v.real();
    }
    return std::pair{d1, d2};
  };

  std::vector<double> xs;
  for (const auto& z : polynomial_roots(trimmed, 0.0)) {
    if (std::fabs(std::abs(z) - 1.0) >= opts.unit_circle_tol) continue;
    double x = std::arg(z) / kTwoPi;
    auto [d1, d2] = derivs(x);
    if (std::fabs(d2) > 0.0) x -= d1 / d2;
    xs.push_back(wrap_unit(x));
  }
  std::sort(xs.begin(), xs.end());
  std::vector<TorusPoint> out;
  for (double x : xs) {
    bool dup = std::any_of(out.begin(), out.end(),
                           [&](const TorusPoint& p) { return circle_distance(p[0], x) < opts.dedup_tol; });
    if (!dup) out.push_back(TorusPoint{x});
  }
  return out;
}

std::vector<TorusPoint> support_from_certificate_grid(const TrigPolynomial& phi, int refinement, double tol) {
  if (refinement < 1) throw Error(ErrorCode::kInvalidArgument, "refinement must be positive");
  GridSpec grid{phi.dim(), refinement};
  std::vector<Complex> v = grid_values(phi, refinement);
  std::vector<TorusPoint> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (std::fabs(1.0 - std::norm(v[k])) < tol) out.push_back(grid.point(k));
  }
  return out;
}

}  // namespace minext
