#pragma once

#include "minext/measure.hpp"

namespace minext {

// (2/K) sum_{k<K} delta_{y + k/K}
DiscreteMeasure nu_family_1d(double y, int k);

// (2/K) sum_{k<K} delta_{(y + k/K, 1 - y - k/K)}
DiscreteMeasure nu_family_2d(double y, int k);

struct QuadratureResult {
  double value = 0.0;
  // |Q(n) - Q(n/2)|, the Richardson-style check.
  double refinement_delta = 0.0;
  int points_per_axis = 0;
};

// L1 norm of sum_m data(m) e^{2 pi i m.x} by the composite trapezoid rule.
// Needs at least 8 max|lambda| points per axis; 0 picks 16384 / 512 / 64
// for d = 1 / 2 / higher.
QuadratureResult projection_extrapolation_norm(const SpectralData& data,
                                               int points_per_axis = 0);

struct CantorParams {
  int q = 3;
  int truncation = 40;
};

struct CantorCoefficient {
  double value = 1.0;
  // Bound on the neglected tail of the product.
  double tail_bound = 0.0;
};

// (-1)^m prod_{k=1}^{K} cos(pi m q^{-k} (1 - q)), with exact integer reduction
// of the cosine arguments.
CantorCoefficient cantor_fourier(const CantorParams& p, long long m);

// Coefficients of sqrt(2) times arc length on {x1 + x2 = 1}: 2 when m1 = m2.
double surface_fourier_diagonal(const Frequency& m);

// Coefficients of arc length on the lines x2 = 0 and x2 = 1/2.
double surface_fourier_two_lines(const Frequency& m);

SpectralData cantor_data(const CantorParams& p, const FrequencySet& lambda);
SpectralData diagonal_data(const FrequencySet& lambda);
SpectralData two_lines_data(const FrequencySet& lambda);

}  // namespace minext
