#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "minext/error.hpp"
#include "minext/special_measures.hpp"
#include "oracle/exact_oracles.hpp"
#include "test_util.hpp"

using namespace minext;

namespace {

const FrequencySet kL1 = FrequencySet::range_1d(-1, 1);

SpectralData two_atom_data(double y) {
  return fourier_transform(DiscreteMeasure::from_points({TorusPoint{0.0}, TorusPoint{y}}, {1.0, -1.0}), kL1);
}

}  // namespace

TEST(NuFamily, OneDimExamples) {
  auto a = nu_family_1d(0.0, 2);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a.atoms()[0].x, TorusPoint{0.0});
  EXPECT_EQ(a.atoms()[1].x, TorusPoint{0.5});
  EXPECT_EQ(a.atoms()[0].weight, Complex(1.0));
  auto b = fourier_transform(nu_family_1d(0.25, 2), kL1);
  EXPECT_NEAR(std::abs(b[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b[1] - 2.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b[2]), 0.0, 1e-15);
  EXPECT_THROW(nu_family_1d(0.0, 1), Error);
}

// 2 e^{-2 pi i m y} when K | m, else 0.
TEST(NuFamily, CoefficientsMatchGeometricSum) {
  std::mt19937_64 rng(testutil::kSeed + 60);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const FrequencySet l = FrequencySet::range_1d(-13, 13);
  for (int k = 2; k <= 6; ++k) {
    for (int rep = 0; rep < 20; ++rep) {
      const double y = u(rng);
      auto nu = nu_family_1d(y, k);
      ASSERT_EQ(nu.size(), static_cast<std::size_t>(k));
      ASSERT_NEAR(tv_norm(nu), 2.0, 1e-14);
      auto d = fourier_transform(nu, l);
      for (std::size_t i = 0; i < l.size(); ++i) {
        const int m = l[i][0];
        const Complex want = m % k == 0 ? 2.0 * std::polar(1.0, -2.0 * std::numbers::pi * m * y) : Complex(0.0);
        ASSERT_LT(std::abs(d[i] - want), 1e-12) << "K=" << k << " m=" << m;
      }
    }
  }
}

TEST(NuFamily, TwoDimOnTheDiagonal) {
  auto nu = nu_family_2d(0.0, 2);
  ASSERT_EQ(nu.size(), 2u);
  EXPECT_EQ(nu.atoms()[0].x, (TorusPoint{0.0, 0.0}));
  EXPECT_EQ(nu.atoms()[1].x, (TorusPoint{0.5, 0.5}));
  const FrequencySet l = FrequencySet::cube(2, -1, 1);
  auto d = fourier_transform(nu, l);
  EXPECT_NEAR(std::abs(d.at(Frequency{1, 0})), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d.at(Frequency{1, 1}) - 2.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d.at(Frequency{1, -1}) - 2.0), 0.0, 1e-15);
  std::mt19937_64 rng(testutil::kSeed + 61);
  for (int t = 0; t < 50; ++t) {
    const double y = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    // K = 2 leaves a nonzero coefficient at (1, -1).
    const int k = std::uniform_int_distribution<int>(3, 7)(rng);
    const DiscreteMeasure nu_k = nu_family_2d(y, k);
    for (const auto& a : nu_k.atoms()) {
      const double s = a.x[0] + a.x[1];
      ASSERT_LT(std::fabs(s - std::round(s)), 1e-12);
    }
    ASSERT_LT(testutil::max_abs_diff(fourier_transform(nu_family_2d(y, k), l), diagonal_data(l)), 1e-12);
  }
}

TEST(Projection, ClosedForm) {
  EXPECT_EQ(projection_extrapolation_norm(two_atom_data(0.0)).value, 0.0);
  auto half = projection_extrapolation_norm(two_atom_data(0.5));
  EXPECT_NEAR(half.value, 8.0 / std::numbers::pi, 1e-6);
  EXPECT_LT(half.refinement_delta, 1e-6);
  EXPECT_LT(projection_extrapolation_norm(two_atom_data(0.01)).value, 2.0);
  EXPECT_THROW(projection_extrapolation_norm(two_atom_data(0.5), 7), Error);
  EXPECT_NO_THROW(projection_extrapolation_norm(two_atom_data(0.5), 8));
}

TEST(Projection, MatchesOracleAndDecreases) {
  std::mt19937_64 rng(testutil::kSeed + 62);
  for (int t = 0; t < testutil::kPropertyCases; ++t) {
    const double y = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    ASSERT_NEAR(projection_extrapolation_norm(two_atom_data(y)).value, oracle::projection_norm_two_atoms(y), 1e-6)
        << y;
  }
  double prev = INFINITY;
  for (int j = 1; j <= 10; ++j) {
    const double v = projection_extrapolation_norm(two_atom_data(std::ldexp(1.0, -j))).value;
    ASSERT_LT(v, prev);
    prev = v;
  }
  EXPECT_LT(prev, 0.01);
}

TEST(Projection, TwoDimensions) {
  // Diagonal data on the 3x3 window: density 2 + 4 cos(2 pi (x1 + x2)).
  const FrequencySet l = FrequencySet::cube(2, -1, 1);
  auto q = projection_extrapolation_norm(diagonal_data(l));
  double direct = 0.0;
  const int n = 512;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double s = static_cast<double>(a + b) / n;
      direct += std::fabs(2.0 + 4.0 * std::cos(2.0 * std::numbers::pi * s));
    }
  }
  EXPECT_NEAR(q.value, direct / (n * n), 1e-6);
}

TEST(Cantor, Coefficients) {
  EXPECT_EQ(cantor_fourier({3, 40}, 0).value, 1.0);
  for (int n = 1; n <= 5; ++n) {
    const long long a = static_cast<long long>(std::pow(3, n));
    EXPECT_LT(std::fabs(cantor_fourier({3, 40}, a).value - cantor_fourier({3, 40}, 3 * a).value), 1e-8);
  }
  EXPECT_EQ(cantor_fourier({3, 40}, 1).value, cantor_fourier({3, 40}, 1).value);
  EXPECT_EQ(cantor_fourier({3, 40}, -7).value, cantor_fourier({3, 40}, 7).value);
  EXPECT_THROW(cantor_fourier({2, 40}, 1), Error);
  EXPECT_THROW(cantor_fourier({3, 0}, 1), Error);
}

TEST(Cantor, MatchesLevelSums) {
  // The level-K measure is uniform on 2^K points; its transform equals the
  // K-term product times the phase (-1)^m e^{i pi m q^{-K}}.
  for (int q : {3, 4, 5}) {
    for (int k = 1; k <= 12; ++k) {
      for (long long m = -30; m <= 30; ++m) {
        const Complex direct = oracle::cantor_level_sum(q, k, m);
        const Complex rotated = direct * std::polar(1.0, -std::numbers::pi * m * std::pow(q, -k));
        const double prod = cantor_fourier({q, k}, m).value;
        ASSERT_NEAR(rotated.real(), prod, 1e-11) << q << " " << k << " " << m;
        ASSERT_NEAR(rotated.imag(), 0.0, 1e-11);
      }
    }
  }
}

TEST(Cantor, TailBound) {
  for (long long m : {1LL, 5LL, 100LL, 10000LL}) {
    auto c = cantor_fourier({3, 40}, m);
    auto short_product = cantor_fourier({3, 12}, m);
    double bound = 0.0;
    for (int k = 13; k <= 40; ++k) bound += std::numbers::pi * static_cast<double>(m) * 2.0 * std::pow(3.0, -k);
    EXPECT_LE(std::fabs(c.value - short_product.value), bound + 1e-15) << m;
    EXPECT_LE(c.tail_bound, 1e-8) << m;
    EXPECT_GT(short_product.tail_bound, c.tail_bound);
  }
}

TEST(Surfaces, Coefficients) {
  EXPECT_EQ(surface_fourier_diagonal(Frequency{1, 1}), 2.0);
  EXPECT_EQ(surface_fourier_diagonal(Frequency{1, 0}), 0.0);
  EXPECT_EQ(surface_fourier_diagonal(Frequency{0, 0}), 2.0);
  EXPECT_EQ(surface_fourier_two_lines(Frequency{0, 0}), 2.0);
  EXPECT_EQ(surface_fourier_two_lines(Frequency{0, 1}), 0.0);
  EXPECT_EQ(surface_fourier_two_lines(Frequency{0, 2}), 2.0);
  EXPECT_EQ(surface_fourier_two_lines(Frequency{0, -2}), 2.0);
  EXPECT_EQ(surface_fourier_two_lines(Frequency{1, 0}), 0.0);
  EXPECT_THROW(surface_fourier_diagonal(Frequency{1}), Error);
}

TEST(Surfaces, TwoLinesMatchDiscretization) {
  // Arc length on x2 = 0 and x2 = 1/2, approximated by n equally spaced
  // atoms per line: exact for |m1| < n.
  const int n = 16;
  std::vector<TorusPoint> p;
  std::vector<Complex> w;
  for (int i = 0; i < n; ++i) {
    p.push_back(TorusPoint{static_cast<double>(i) / n, 0.0});
    p.push_back(TorusPoint{static_cast<double>(i) / n, 0.5});
    w.push_back(1.0 / n);
    w.push_back(1.0 / n);
  }
  const FrequencySet l = FrequencySet::cube(2, -3, 3);
  EXPECT_LT(testutil::max_abs_diff(fourier_transform(DiscreteMeasure::from_points(p, w), l), two_lines_data(l)),
            1e-13);
}
