#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "minext/certificate.hpp"
#include "minext/error.hpp"
#include "minext/pipeline.hpp"
#include "test_util.hpp"

using namespace minext;

namespace {

const FrequencySet kL1 = FrequencySet::range_1d(-1, 1);

TrigPolynomial cosine() { return TrigPolynomial(kL1, {0.5, 0.0, 0.5}); }
TrigPolynomial character() { return TrigPolynomial(kL1, {0.0, 0.0, 1.0}); }

SpectralData two_atoms(double x0, Complex w0, double x1, Complex w1) {
  return fourier_transform(DiscreteMeasure::from_points({TorusPoint{x0}, TorusPoint{x1}}, {w0, w1}), kL1);
}

bool contains_point(const std::vector<TorusPoint>& pts, double x, double tol) {
  for (const auto& p : pts) {
    if (circle_distance(p[0], x) <= tol) return true;
  }
  return false;
}

}  // namespace

TEST(Certificate, CosineCertifiesExampleTwo) {
  Eigen::VectorXcd dual(3);
  dual << 0.5, 0.0, 0.5;
  Certificate c = certificate_from_dual(dual, two_atoms(0.0, 1.0, 0.5, -1.0), 2.0);
  EXPECT_NEAR(c.sup_norm, 1.0, 1e-12);
  EXPECT_NEAR(std::abs(c.pairing - 2.0), 0.0, 1e-12);
}

TEST(Certificate, ZeroDataIsRejected) {
  Eigen::VectorXcd dual(3);
  dual << 0.5, 0.0, 0.5;
  try {
    certificate_from_dual(dual, SpectralData(kL1, {0.0, 0.0, 0.0}), 0.0);
    FAIL() << "expected rejection";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCertificateRejected);
  }
}

TEST(Certificate, ShortPairingIsRejected) {
  Eigen::VectorXcd dual(3);
  dual << 0.0, 1.0, 0.0;
  EXPECT_THROW(certificate_from_dual(dual, two_atoms(0.0, 1.0, 0.5, -1.0), 2.0), Error);
}

TEST(Certificate, ExampleFourCoefficients) {
  PipelineOptions o;
  o.grid = 48;
  PipelineReport r = analyze(two_atoms(0.0, 1.0, 1.0 / 3.0, unit_phase(1.0 / 6.0)), o);
  ASSERT_TRUE(r.certificate.certificate.has_value());
  const TrigPolynomial& phi = r.certificate.certificate->poly;
  const double s = 3.0 * std::numbers::sqrt3;
  const Complex want[3] = {Complex(0.0, -1.0 / s), 4.0 / s * std::polar(1.0, std::numbers::pi / 6),
                           2.0 / s * std::polar(1.0, -std::numbers::pi / 6)};
  Complex overlap = 0.0;
  for (int i = 0; i < 3; ++i) overlap += std::conj(want[i]) * phi.coefficient(Frequency{i - 1});
  const Complex phase = overlap / std::abs(overlap);
  for (int i = 0; i < 3; ++i) EXPECT_LT(std::abs(phi.coefficient(Frequency{i - 1}) - phase * want[i]), 1e-4);
  EXPECT_FALSE(is_degenerate(phi, 1e-4));
  EXPECT_NEAR(std::abs(phi(TorusPoint{0.0})), 1.0, 1e-6);
  auto support = support_from_certificate_1d(phi);
  ASSERT_EQ(support.size(), 2u);
  EXPECT_TRUE(contains_point(support, 0.0, 1e-7));
  EXPECT_TRUE(contains_point(support, 1.0 / 3.0, 1e-7));
  DeficitPolynomial d = deficit(phi);
  for (int k = 0; k < 4096; ++k) EXPECT_GE(d(TorusPoint{k / 4096.0}), -1e-7);
}

TEST(Deficit, CosineExpansion) {
  DeficitPolynomial d = deficit(cosine());
  EXPECT_NEAR(std::abs(d.poly.coefficient(Frequency{0}) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d.poly.coefficient(Frequency{2}) + 0.25), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d.poly.coefficient(Frequency{-2}) + 0.25), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d.poly.coefficient(Frequency{1})), 0.0, 1e-15);
}

TEST(Deficit, CharacterVanishes) {
  DeficitPolynomial d = deficit(character());
  for (const auto& c : d.poly.coefficients()) EXPECT_EQ(std::abs(c), 0.0);
}

TEST(Degenerate, Detection) {
  EXPECT_TRUE(is_degenerate(character(), 1e-9));
  EXPECT_TRUE(is_degenerate(TrigPolynomial(kL1, {0.0, Complex(0, 1), 0.0}), 1e-9));
  EXPECT_FALSE(is_degenerate(cosine(), 1e-9));
}

TEST(SupportFromCertificate, CosineRoots) {
  auto s = support_from_certificate_1d(cosine());
  ASSERT_EQ(s.size(), 2u);
  EXPECT_TRUE(contains_point(s, 0.0, 1e-9));
  EXPECT_TRUE(contains_point(s, 0.5, 1e-9));
}

TEST(SupportFromCertificate, DegenerateThrows) {
  try {
    support_from_certificate_1d(character());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateCertificate);
  }
}

TEST(SupportFromCertificate, GridSieve) {
  FrequencySet l2({Frequency{-1, 0}, Frequency{0, 0}, Frequency{1, 0}});
  TrigPolynomial c(l2, {0.5, 0.0, 0.5});
  auto pts = support_from_certificate_grid(c, 8, 1e-9);
  ASSERT_EQ(pts.size(), 16u);
  for (const auto& p : pts) EXPECT_TRUE(circle_distance(p[0], 0.0) < 1e-12 || circle_distance(p[0], 0.5) < 1e-12);
  TrigPolynomial half(kL1, {0.25, 0.0, 0.25});
  EXPECT_TRUE(support_from_certificate_grid(half, 64, 1e-6).empty());
}

TEST(PolynomialRoots, Quadratic) {
  auto r = polynomial_roots({2.0, -3.0, 1.0});
  ASSERT_EQ(r.size(), 2u);
  std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  EXPECT_NEAR(std::abs(r[0] - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r[1] - 2.0), 0.0, 1e-12);
}

TEST(CertificateProperties, DeficitIsHermitianAndMatchesModulus) {
  std::mt19937_64 rng(testutil::kSeed + 20);
  for (int t = 0; t < testutil::kPropertyCases; ++t) {
    FrequencySet l = testutil::random_lambda_1d(rng, -4, 4);
    std::vector<Complex> c;
    for (std::size_t i = 0; i < l.size(); ++i) c.push_back(testutil::random_complex(rng, 0.3));
    TrigPolynomial phi(l, c);
    DeficitPolynomial d = deficit(phi);
    for (const auto& m : d.poly.support()) {
      ASSERT_EQ(d.poly.coefficient(-m), std::conj(d.poly.coefficient(m))) << "case " << t;
    }
    for (int k = 0; k < 16; ++k) {
      TorusPoint x = testutil::random_point(rng, 1);
      const double want = 1.0 - std::norm(phi(x));
      ASSERT_NEAR(d(x), want, 1e-12) << "case " << t;
      ASSERT_LT(std::fabs(d.poly(x).imag()), 1e-12);
    }
  }
}

TEST(CertificateProperties, RootCountBoundAndSupportInclusion) {
  std::mt19937_64 rng(testutil::kSeed + 21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int m = 6;
  const FrequencySet l = FrequencySet::range_1d(-m, m);
  int certified = 0;
  for (int t = 0; t < testutil::kPropertyCases; ++t) {
    const double x0 = u(rng);
    const double x1 = x0 + 0.25 + 0.5 * u(rng);
    std::vector<TorusPoint> pts{TorusPoint{x0}, TorusPoint{x1}};
    std::vector<Complex> signs{std::polar(1.0, 6.3 * u(rng)), std::polar(1.0, 6.3 * u(rng))};
    TrigPolynomial phi = interpolate_sign_pattern(l, pts, signs);
    for (std::size_t k = 0; k < 2; ++k) ASSERT_LT(std::abs(phi(pts[k]) - signs[k]), 1e-9);
    if (measured_sup_norm(phi, 4096) > 1.0 + 1e-9) continue;
    ++certified;
    auto roots = support_from_certificate_1d(phi);
    ASSERT_LE(roots.size(), static_cast<std::size_t>(2 * m)) << "case " << t;
    for (const auto& p : pts) ASSERT_TRUE(contains_point(roots, p[0], 1e-7)) << "case " << t;
  }
  EXPECT_GT(certified, testutil::kPropertyCases / 2);
}

TEST(CertificateProperties, ValidatedDualsStayInUnitBall) {
  std::mt19937_64 rng(testutil::kSeed + 22);
  for (int t = 0; t < testutil::kPropertyCases; ++t) {
    FrequencySet l = testutil::random_lambda_1d(rng, -3, 3);
    SpectralData d = fourier_transform(testutil::random_grid_measure(rng, 1, 16, 3), l);
    SolveReport r = solve_on_grid(d, GridSpec{1, 16});
    ASSERT_TRUE(r.converged);
    // Grid feasibility does not bound |phi| between grid points; after
    // rescaling the pairing is a lower bound for the continuous problem.
    std::vector<Complex> w(r.dual.data(), r.dual.data() + r.dual.size());
    const double sup = measured_sup_norm(TrigPolynomial(l, w), default_validation_points(1));
    const double lower = r.dual_value / std::max(1.0, sup);
    Certificate c = certificate_from_dual(r.dual, d, lower);
    ASSERT_LE(c.sup_norm, 1.0 + 1e-12);
    ASSERT_LE(std::fabs(c.pairing.imag()), 1e-9 * (1 + r.epsilon));
    ASSERT_GE(c.pairing.real(), lower * (1 - 1e-9));
    ASSERT_LE(c.pairing.real(), r.epsilon * (1 + 1e-6));
  }
}
