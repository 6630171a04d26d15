#include "minext/special_measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "minext/error.hpp"
#include "minext/grid_solver.hpp"

namespace minext {

namespace {

using boost::multiprecision::cpp_int;

double trapezoid_l1(const SpectralData& data, int n) {
  GridSpec grid{data.dim(), n};
  const auto& lambda = data.lambda();
  double sum = 0.0;
  for (std::size_t k = 0; k < grid.total(); ++k) {
    auto idx = grid.multi_index(k);
    Complex s = 0.0;
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      long long e = 0;
      for (std::size_t i = 0; i < idx.size(); ++i) e += static_cast<long long>(lambda[j][i]) * idx[i];
      s += data[j] * root_of_unity(e, n);
    }
    sum += std::abs(s);
  }
  return sum / static_cast<double>(grid.total());
}

void require_dim(const Frequency& m, int d) {
  if (m.dim() != d) throw Error(ErrorCode::kDimensionMismatch, "expected a frequency of dimension " + std::to_string(d));
}

}  // namespace

DiscreteMeasure nu_family_1d(double y, int k) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "K must be at least 2");
  std::vector<Atom> atoms;
  for (int j = 0; j < k; ++j) atoms.push_back({TorusPoint{y + static_cast<double>(j) / k}, 2.0 / k});
  return DiscreteMeasure(1, std::move(atoms));
}

DiscreteMeasure nu_family_2d(double y, int k) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "K must be at least 2");
  std::vector<Atom> atoms;
  for (int j = 0; j < k; ++j) {
    const double s = y + static_cast<double>(j) / k;
    atoms.push_back({TorusPoint{s, 1.0 - s}, 2.0 / k});
  }
  return DiscreteMeasure(2, std::move(atoms));
}

QuadratureResult projection_extrapolation_norm(const SpectralData& data, int points_per_axis) {
  int n = points_per_axis;
  if (n == 0) n = data.dim() == 1 ? 16384 : (data.dim() == 2 ? 512 : 64);
  const int need = 8 * std::max(1, data.lambda().max_abs());
  if (n < need) {
    throw Error(ErrorCode::kInvalidArgument, "quadrature needs at least " + std::to_string(need) + " points per axis");
  }
  QuadratureResult r;
  r.points_per_axis = n;
  r.value = trapezoid_l1(data, n);
  if (n % 2 == 0 && n / 2 >= need) r.refinement_delta = std::fabs(r.value - trapezoid_l1(data, n / 2));
  return r;
}

CantorCoefficient cantor_fourier(const CantorParams& p, long long m) {
  if (p.q < 3) throw Error(ErrorCode::kInvalidArgument, "q must be at least 3");
  if (p.truncation < 1) throw Error(ErrorCode::kInvalidArgument, "truncation K must be at least 1");
  CantorCoefficient c;
  c.value = (m % 2 == 0) ? 1.0 : -1.0;
  const cpp_int num = cpp_int(m) * (1 - p.q);
  cpp_int qk = 1;
  for (int k = 1; k <= p.truncation; ++k) {
    qk *= p.q;
    // cos(pi num / q^k) with num reduced into (-q^k, q^k]
    const cpp_int period = 2 * qk;
    cpp_int r = num % period;
    if (r > qk) r -= period;
    if (r <= -qk) r += period;
    const double ratio = static_cast<double>(abs(r)) / static_cast<double>(qk);
    c.value *= std::cos(std::numbers::pi * ratio);
  }
  c.tail_bound = std::numbers::pi * std::fabs(static_cast<double>(m)) * std::pow(static_cast<double>(p.q), -p.truncation);
  return c;
}

double surface_fourier_diagonal(const Frequency& m) {
  require_dim(m, 2);
  return m[0] == m[1] ? 2.0 : 0.0;
}

double surface_fourier_two_lines(const Frequency& m) {
  require_dim(m, 2);
  if (m[0] != 0) return 0.0;
  return m[1] % 2 == 0 ? 2.0 : 0.0;
}

SpectralData cantor_data(const CantorParams& p, const FrequencySet& lambda) {
  if (lambda.dim() != 1) throw Error(ErrorCode::kDimensionMismatch, "Cantor data is one-dimensional");
  std::vector<Complex> v;
  for (const auto& m : lambda) v.emplace_back(cantor_fourier(p, m[0]).value);
  return SpectralData(lambda, std::move(v));
}

SpectralData diagonal_data(const FrequencySet& lambda) {
  std::vector<Complex> v;
  for (const auto& m : lambda) v.emplace_back(surface_fourier_diagonal(m));
  return SpectralData(lambda, std::move(v));
}

SpectralData two_lines_data(const FrequencySet& lambda) {
  std::vector<Complex> v;
  for (const auto& m : lambda) v.emplace_back(surface_fourier_two_lines(m));
  return SpectralData(lambda, std::move(v));
}

}  // namespace minext
