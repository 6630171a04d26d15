#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "minext/error.hpp"
#include "minext/grid_solver.hpp"
#include "minext/rational.hpp"
#include "minext/reproduce.hpp"
#include "minext/structure.hpp"
#include "oracle/exact_oracles.hpp"
#include "test_util.hpp"

using namespace minext;

namespace {

const FrequencySet kL1 = FrequencySet::range_1d(-1, 1);

SpectralData data_of(const std::string& id) { return example_input(id).data; }

Rational r(long long n, long long d = 1) { return Rational(n, d); }

}  // namespace

TEST(Rational, ContinuedFractions) {
  auto a = approximate_rational(0.375, 1000);
  EXPECT_EQ(a.value, r(3, 8));
  EXPECT_EQ(a.error, 0.0);
  auto third = approximate_rational(1.0 / 3.0, 1000000);
  EXPECT_EQ(third.value, r(1, 3));
  EXPECT_LT(third.error, 1e-16);
  auto pi = approximate_rational(std::numbers::pi, 1000);
  EXPECT_EQ(pi.value, r(355, 113));
  EXPECT_EQ(approximate_rational(-0.25, 10).value, r(-1, 4));
}

TEST(Rational, ParseFormatFrac) {
  EXPECT_EQ(parse_rational("-3/8"), r(-3, 8));
  EXPECT_EQ(to_string(r(6, 4)), "3/2");
  EXPECT_EQ(to_string(r(-4, 2)), "-2");
  EXPECT_EQ(frac(r(-1, 4)), r(3, 4));
  EXPECT_EQ(frac(r(7, 2)), r(1, 2));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(Rational, KernelVector) {
  RationalMatrix m{{r(1), r(2)}, {r(2), r(4)}};
  auto k = integer_kernel_vector(m);
  ASSERT_EQ(k.size(), 2u);
  EXPECT_EQ(k[0] + 2 * k[1], 0);
  EXPECT_TRUE(integer_kernel_vector({{r(1), r(0)}, {r(0), r(1)}}).empty());
}

TEST(Admissibility, ExampleRanges) {
  auto e1 = admissibility_range(data_of("e1"), 2.0, std::vector<double>{});
  EXPECT_DOUBLE_EQ(e1.lower, 2.0);
  EXPECT_DOUBLE_EQ(e1.upper, 2.0);

  const double h = std::numbers::sqrt2 / 2;
  DiscreteMeasure nu = DiscreteMeasure::from_points({TorusPoint{0.375}, TorusPoint{0.875}}, {-h, h});
  auto e3 = admissibility_range(data_of("e3"), 2.0, std::vector<DiscreteMeasure>{nu});
  EXPECT_NEAR(e3.lower, std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(e3.upper, std::numbers::sqrt2, 1e-15);

  auto e4 = admissibility_range(data_of("e4"), 2.0, std::vector<double>{});
  EXPECT_NEAR(e4.lower, std::numbers::sqrt3, 1e-15);
  EXPECT_DOUBLE_EQ(e4.upper, 2.0);

  EXPECT_TRUE(std::isinf(admissibility_range(data_of("e4"), std::nullopt, std::vector<double>{}).upper));
}

TEST(Admissibility, RejectsInconsistentBounds) {
  EXPECT_THROW(admissibility_range(data_of("e1"), 1.0, std::vector<double>{}), Error);
  DiscreteMeasure wrong = DiscreteMeasure::dirac(TorusPoint{0.0}, 2.0);
  EXPECT_THROW(admissibility_range(data_of("e1"), std::nullopt, std::vector<DiscreteMeasure>{wrong}), Error);
}

TEST(Gamma, Examples) {
  auto g2 = gamma_set(data_of("e2"), 2.0);
  EXPECT_EQ(g2.members, (std::vector<Frequency>{Frequency{-1}, Frequency{1}}));
  EXPECT_TRUE(gamma_set(data_of("e4"), 2.0).empty());
  auto g5 = gamma_set(data_of("e5"), 2.0);
  EXPECT_EQ(g5.size(), 3u);
  EXPECT_TRUE(g5.contains(Frequency{0, 0}));
  EXPECT_TRUE(g5.contains(Frequency{1, 1}));
  EXPECT_TRUE(g5.contains(Frequency{-1, -1}));
}

TEST(PairOffset, Examples) {
  EXPECT_DOUBLE_EQ(pair_offset(Frequency{-1}, Frequency{1}, data_of("e2")), 0.0);
  EXPECT_NEAR(pair_offset(Frequency{1}, Frequency{-1}, data_of("e3")), 0.25, 1e-15);
  EXPECT_DOUBLE_EQ(pair_offset(Frequency{1}, Frequency{1}, data_of("e3")), 0.0);
}

TEST(SupportStructure, ExamplePoints) {
  auto s2 = support_structure(gamma_set(data_of("e2"), 2.0), data_of("e2"), 1);
  auto p2 = finite_support(s2);
  ASSERT_TRUE(p2.has_value());
  ASSERT_EQ(p2->size(), 2u);
  EXPECT_EQ((*p2)[0], TorusPoint{0.0});
  EXPECT_EQ((*p2)[1], TorusPoint{0.5});

  auto s3 = support_structure(gamma_set(data_of("e3"), std::numbers::sqrt2), data_of("e3"), 1);
  auto p3 = finite_support(s3);
  ASSERT_TRUE(p3.has_value());
  ASSERT_EQ(p3->size(), 2u);
  EXPECT_EQ((*p3)[0], TorusPoint{0.375});
  EXPECT_EQ((*p3)[1], TorusPoint{0.875});
}

TEST(SupportStructure, ExampleFiveHyperplane) {
  auto s = support_structure(gamma_set(data_of("e5"), 2.0), data_of("e5"), 2);
  const auto* h = std::get_if<HyperplaneSupport>(&s);
  ASSERT_NE(h, nullptr);
  ASSERT_EQ(h->reduced.size(), 1u);
  EXPECT_EQ(h->reduced[0].direction, (Frequency{1, 1}));
  ASSERT_EQ(h->reduced[0].values.size(), 1u);
  EXPECT_NEAR(h->reduced[0].values[0], 0.0, 1e-12);
  EXPECT_TRUE(structure_contains(s, TorusPoint{0.3, 0.7}));
  EXPECT_FALSE(structure_contains(s, TorusPoint{0.3, 0.3}));
}

TEST(SupportStructure, SmallGammaIsUnknown) {
  auto s1 = support_structure(gamma_set(data_of("e1"), 2.0), data_of("e1"), 1);
  const auto* u = std::get_if<UnknownSupport>(&s1);
  ASSERT_NE(u, nullptr);
  EXPECT_EQ(u->reason, UnknownReason::kSingleGamma);
  auto s0 = support_structure(gamma_set(data_of("e4"), 2.0), data_of("e4"), 1);
  ASSERT_NE(std::get_if<UnknownSupport>(&s0), nullptr);
  EXPECT_EQ(std::get<UnknownSupport>(s0).reason, UnknownReason::kAnalyticZeroSet);
}

TEST(SupportStructure, TwoDimensionalLattice) {
  // Gamma = {(0,0), (1,2), (-3,2)}: the differences (1,2), (-3,2) and (-4,0)
  // span Z^2 rationally, so the support is a lattice.
  FrequencySet l({Frequency{0, 0}, Frequency{1, 2}, Frequency{-3, 2}});
  SpectralData d(l, {1.0, unit_phase(0.5), unit_phase(-0.5)});
  auto s = support_structure(gamma_set(d, 1.0), d, 2);
  const auto* ls = std::get_if<LatticeSupport>(&s);
  ASSERT_NE(ls, nullptr);
  EXPECT_EQ(ls->lattice.index(), 8);
  EXPECT_EQ(ls->points.size(), 8u);
  for (const auto& x : ls->points) {
    for (const auto& h : ls->family.planes) EXPECT_LE(h.violation(x), 1e-9);
  }
}

TEST(LatticeSolve, PlanarExample) {
  Lattice l = lattice_solve({Frequency{1, 2}, Frequency{-3, 2}}, RationalVector{r(1, 2), r(-1, 2)});
  EXPECT_EQ(l.generators[0], (RationalVector{r(1, 4), r(3, 8)}));
  EXPECT_EQ(l.generators[1], (RationalVector{r(-1, 4), r(1, 8)}));
  EXPECT_EQ(l.base_point(), (RationalVector{r(0), r(1, 4)}));
  EXPECT_TRUE(l.contains(RationalVector{r(0), r(1, 4)}));
  EXPECT_EQ(l.index(), 8);
}

TEST(LatticeSolve, IdentityAndSingular) {
  Lattice id = lattice_solve({Frequency{1, 0}, Frequency{0, 1}}, RationalVector{r(0), r(0)});
  EXPECT_EQ(id.x0, (RationalVector{r(0), r(0)}));
  EXPECT_EQ(id.generators[0], (RationalVector{r(1), r(0)}));
  EXPECT_EQ(id.generators[1], (RationalVector{r(0), r(1)}));
  try {
    lattice_solve({Frequency{1, 2}, Frequency{2, 4}}, RationalVector{r(0), r(0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRankDeficient);
    EXPECT_NE(std::string(e.what()).find("rank 1"), std::string::npos);
  }
}

TEST(LatticeSolve, FloatingOffsets) {
  Lattice l = lattice_solve({Frequency{1, 2}, Frequency{-3, 2}}, std::vector<double>{0.5, 0.5});
  EXPECT_EQ(l.beta, (RationalVector{r(1, 2), r(1, 2)}));
  EXPECT_EQ(l.beta_error[0], 0.0);
}

TEST(StructureProperties, LatticeMatchesAdjugateOracle) {
  std::mt19937_64 rng(testutil::kSeed + 30);
  std::uniform_int_distribution<int> entry(-4, 4);
  std::uniform_int_distribution<int> num(0, 7);
  std::uniform_int_distribution<int> shift(-3, 3);
  int done = 0;
  while (done < testutil::kPropertyCases) {
    const int d = 2 + done % 2;
    oracle::RMatrix p(d, std::vector<oracle::Rational>(d));
    std::vector<Frequency> diffs;
    for (int i = 0; i < d; ++i) {
      std::vector<int> row(d);
      for (int j = 0; j < d; ++j) {
        row[j] = entry(rng);
        p[i][j] = row[j];
      }
      diffs.emplace_back(row);
    }
    if (oracle::determinant(p) == 0) continue;
    RationalVector beta;
    for (int i = 0; i < d; ++i) beta.push_back(r(num(rng), 8));
    Lattice l = lattice_solve(diffs, beta);
    oracle::RMatrix inv = oracle::adjugate_inverse(p);
    for (int k = 0; k < d; ++k) {
      for (int i = 0; i < d; ++i) ASSERT_EQ(l.generators[k][i], inv[i][k]);
    }
    ASSERT_EQ(Rational(l.index()), abs(oracle::determinant(p)));
    // x0 + sum k_j q_j satisfies P x + beta in Z^d exactly.
    for (int rep = 0; rep < 4; ++rep) {
      RationalVector x = l.x0;
      for (int k = 0; k < d; ++k) {
        const int c = shift(rng);
        for (int i = 0; i < d; ++i) x[i] += c * l.generators[k][i];
      }
      ASSERT_TRUE(l.contains(x));
      for (int i = 0; i < d; ++i) {
        Rational s = beta[i];
        for (int j = 0; j < d; ++j) s += p[i][j] * x[j];
        ASSERT_EQ(oracle::frac(s), 0);
      }
    }
    ++done;
  }
}

TEST(StructureProperties, GammaContainsArgmax) {
  std::mt19937_64 rng(testutil::kSeed + 31);
  for (int t = 0; t < testutil::kPropertyCases; ++t) {
    FrequencySet l = testutil::random_lambda_1d(rng, -4, 4);
    SpectralData d = fourier_transform(testutil::random_measure(rng, 1, 4), l);
    const double sup = d.sup_norm();
    GammaSet g = gamma_set(d, sup);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (std::abs(d[i]) == sup) ASSERT_TRUE(g.contains(l[i]));
    }
    ASSERT_TRUE(gamma_set(d, sup * (1 + 1e-5) + 1e-6).empty());
  }
}

TEST(StructureProperties, PointSupportSatisfiesPairConstraints) {
  std::mt19937_64 rng(testutil::kSeed + 32);
  std::uniform_int_distribution<int> n_atoms(2, 3);
  for (int t = 0; t < testutil::kPropertyCases; ++t) {
    // A measure whose weights align with a character on two frequencies so
    // that Gamma has at least two members.
    const FrequencySet l = FrequencySet::range_1d(-3, 3);
    const int k = n_atoms(rng);
    std::vector<TorusPoint> pts;
    std::vector<Complex> w;
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    const double shift = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    for (int j = 0; j < k; ++j) {
      const double x = (j + shift) / m / k;
      pts.push_back(TorusPoint{x});
      w.push_back(std::uniform_real_distribution<double>(0.5, 2.0)(rng));
    }
    SpectralData d = fourier_transform(DiscreteMeasure::from_points(pts, w), l);
    GammaSet g = gamma_set(d, d.sup_norm());
    if (g.size() < 2) continue;
    SupportStructure s = support_structure(g, d, 1);
    auto fin = finite_support(s);
    ASSERT_TRUE(fin.has_value());
    for (const auto& x : *fin) {
      for (std::size_t a = 0; a < g.size(); ++a) {
        for (std::size_t b = a + 1; b < g.size(); ++b) {
          Hyperplane h{g.members[a] - g.members[b], pair_offset(g.members[a], g.members[b], d)};
          ASSERT_LE(h.violation(x), 1e-9) << "case " << t;
        }
      }
    }
  }
}

TEST(StructureProperties, SolverAtomsLieInStructure) {
  for (const std::string id : {"e2", "e3", "e5"}) {
    ExampleInput in = example_input(id);
    const int d = in.data.dim();
    SolveReport r = solve_on_grid(in.data, GridSpec{d, d == 1 ? 16 : 8});
    ASSERT_TRUE(r.converged);
    GammaSet g = gamma_set(in.data, r.epsilon);
    SupportStructure s = support_structure(g, in.data, d);
    const DiscreteMeasure mu = solution_to_measure(r, r.grid, 1e-6);
    ASSERT_FALSE(mu.atoms().empty());
    for (const auto& a : mu.atoms()) {
      EXPECT_TRUE(structure_contains(s, a.x)) << id << " " << a.x.to_string();
    }
  }
}

TEST(FailureDiagnosis, Examples) {
  auto f2 = algorithm_failure_diagnosis(true, data_of("e2"));
  EXPECT_DOUBLE_EQ(f2.epsilon, 2.0);
  EXPECT_EQ(f2.gamma.size(), 2u);
  auto f1 = algorithm_failure_diagnosis(true, data_of("e1"));
  EXPECT_EQ(f1.gamma.members, std::vector<Frequency>{Frequency{0}});
  auto f5 = algorithm_failure_diagnosis(true, data_of("e5"));
  EXPECT_DOUBLE_EQ(f5.epsilon, 2.0);
  EXPECT_EQ(f5.gamma.size(), 3u);
  EXPECT_THROW(algorithm_failure_diagnosis(false, data_of("e1")), Error);
}

TEST(FailureDiagnosis, AgreesWithGridEpsilon) {
  for (const std::string id : {"e1", "e2", "e5"}) {
    SpectralData d = data_of(id);
    auto eps = refine_epsilon(d, {GridSpec{d.dim(), 8}, GridSpec{d.dim(), 16}});
    EXPECT_NEAR(algorithm_failure_diagnosis(true, d).epsilon, eps.back(), 1e-6) << id;
  }
}

TEST(Separation, Checks) {
  DiscreteMeasure single = DiscreteMeasure::dirac(TorusPoint{0.2});
  EXPECT_TRUE(separation_check(single, 1, 2.0));
  DiscreteMeasure two = DiscreteMeasure::from_points({TorusPoint{0.0}, TorusPoint{0.5}}, {1.0, 1.0});
  EXPECT_FALSE(separation_check(two, 1, 2.0));
  EXPECT_TRUE(separation_check(two, 128, 2.0));
  EXPECT_NEAR(minimum_separation(DiscreteMeasure::from_points({TorusPoint{0.05}, TorusPoint{0.95}}, {1.0, 1.0})),
              0.1, 1e-15);
}

TEST(CfgGuarantee, Clauses) {
  DiscreteMeasure two = DiscreteMeasure::from_points({TorusPoint{0.0}, TorusPoint{0.5}}, {1.0, -1.0});
  EXPECT_EQ(cfg_guarantee(two, 128, 1, false), CfgClause::kOneDimSeparation2);
  EXPECT_EQ(cfg_guarantee(two, 10, 1, false), CfgClause::kNone);
  DiscreteMeasure close = DiscreteMeasure::from_points({TorusPoint{0.0}, TorusPoint{1.9 / 128}}, {1.0, -1.0});
  EXPECT_EQ(cfg_guarantee(close, 128, 1, true), CfgClause::kOneDimRealSeparation187);
  EXPECT_EQ(cfg_guarantee(close, 128, 1, false), CfgClause::kNone);
  DiscreteMeasure planar =
      DiscreteMeasure::from_points({TorusPoint{0.0, 0.0}, TorusPoint{2.5 / 512, 0.3}}, {1.0, 2.0});
  EXPECT_EQ(cfg_guarantee(planar, 512, 2, true), CfgClause::kTwoDimRealSeparation238);
  EXPECT_EQ(to_string(CfgClause::kOneDimSeparation126), "d1-C1.26");
}
