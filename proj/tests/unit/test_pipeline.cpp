#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "minext/error.hpp"
#include "minext/json_io.hpp"
#include "minext/pipeline.hpp"
#include "minext/reproduce.hpp"
#include "test_util.hpp"

using namespace minext;

namespace {

PipelineReport run(const std::string& id) { return analyze(example_input(id).data); }

}  // namespace

TEST(Pipeline, Routes) {
  auto e1 = run("e1");
  EXPECT_EQ(e1.route, "degenerate-certificate");
  EXPECT_DOUBLE_EQ(e1.epsilon, 2.0);
  EXPECT_EQ(e1.uniqueness.verdict, Verdict::kNotApplicable);
  EXPECT_TRUE(e1.positivity.extendable);

  auto e2 = run("e2");
  EXPECT_EQ(e2.route, "admissibility-collapse");
  EXPECT_EQ(e2.uniqueness.verdict, Verdict::kUnique);
  EXPECT_EQ(kind_name(e2.structure), "points");
  // The window is centered on a Gamma member, where M_{-n} mu is positive.
  EXPECT_EQ(std::abs(e2.positivity.center), 1);
  EXPECT_TRUE(e2.positivity.extendable);

  auto e5 = run("e5");
  EXPECT_EQ(kind_name(e5.structure), "hyperplanes");
  EXPECT_EQ(e5.uniqueness.verdict, Verdict::kNotApplicable);
  EXPECT_FALSE(e5.positivity.applicable);
}

TEST(Pipeline, ZeroData) {
  SpectralData zero(FrequencySet::range_1d(-2, 2), std::vector<Complex>(5, 0.0));
  auto r = analyze(zero);
  EXPECT_EQ(r.route, "zero-data");
  EXPECT_EQ(r.epsilon, 0.0);
  EXPECT_EQ(r.uniqueness.verdict, Verdict::kUnique);
  EXPECT_TRUE(r.uniqueness.measure.empty());
  EXPECT_FALSE(r.certificate.available);
}

TEST(Pipeline, Options) {
  PipelineOptions o;
  o.mu_norm = 2.0;
  o.grid = 32;
  auto r = analyze(example_input("e4").data, o);
  EXPECT_EQ(r.grid.n_per_axis, 32);
  EXPECT_DOUBLE_EQ(r.range.upper, 2.0);
  o.mu_norm = 1.0;
  EXPECT_THROW(analyze(example_input("e4").data, o), Error);

  PipelineOptions w;
  w.center = 0;
  w.half_width = 1;
  auto p = analyze(example_input("e1").data, w);
  EXPECT_EQ(p.positivity.center, 0);
  EXPECT_EQ(p.positivity.half_width, 1);
  w.center = 5;
  w.half_width.reset();
  EXPECT_FALSE(analyze(example_input("e1").data, w).positivity.applicable);
}

TEST(Pipeline, JsonIsDeterministic) {
  for (const auto& id : fixture_ids()) {
    const SpectralData d = example_input(id).data;
    const std::string a = report_to_json(analyze(d)).dump();
    const std::string b = report_to_json(analyze(d)).dump();
    EXPECT_EQ(a, b) << id;
    auto j = nlohmann::json::parse(a);
    EXPECT_FALSE(j.contains("timing"));
    EXPECT_TRUE(report_to_json(analyze(d), true).contains("timing"));
    EXPECT_EQ(spectral_from_json(j["input"]).size(), d.size());
  }
}

TEST(PipelineProperties, RandomMeasuresAreConsistent) {
  std::mt19937_64 rng(testutil::kSeed + 70);
  const std::set<std::string> routes{"grid", "admissibility-collapse", "degenerate-certificate"};
  const FrequencySet l = FrequencySet::range_1d(-3, 3);
  int unique = 0;
  for (int t = 0; t < 60; ++t) {
    DiscreteMeasure mu = testutil::random_grid_measure(rng, 1, 64, 3);
    SpectralData d = fourier_transform(mu, l);
    PipelineOptions o;
    o.mu_norm = tv_norm(mu);
    auto r = analyze(d, o);
    ASSERT_TRUE(routes.count(r.route)) << r.route;
    ASSERT_TRUE(r.solve.converged);
    ASSERT_GE(r.epsilon, d.sup_norm() * (1 - 1e-9));
    ASSERT_LE(r.epsilon, tv_norm(mu) * (1 + 1e-6));
    ASSERT_LE(r.range.lower, r.range.upper);
    if (r.certificate.available) {
      ASSERT_LE(r.certificate.certificate->sup_norm, 1.0 + 1e-12);
      ASSERT_GE(r.certificate.certificate->pairing.real(), r.epsilon * (1 - 1e-6));
    }
    if (r.uniqueness.verdict == Verdict::kUnique) {
      ++unique;
      ASSERT_LT(testutil::max_abs_diff(fourier_transform(r.uniqueness.measure, l), d), 1e-6 * (1 + d.sup_norm()));
      ASSERT_NEAR(tv_norm(r.uniqueness.measure), r.epsilon, 1e-5 * r.epsilon);
    }
  }
  EXPECT_GT(unique, 0);
}

TEST(Reproduce, AllExamplesPass) {
  const std::vector<std::string> all = example_ids();
  const std::set<std::string> ids(all.begin(), all.end());
  for (const auto& id : fixture_ids()) EXPECT_TRUE(ids.count(id)) << id;
  EXPECT_TRUE(ids.count("lattice"));
  for (const auto& id : all) {
    ReproduceResult r = reproduce(id);
    EXPECT_EQ(r.id, id);
    EXPECT_FALSE(r.rows.empty()) << id;
    for (const auto& row : r.rows) EXPECT_TRUE(row.pass) << id << ": " << row.name << " " << row.detail;
    EXPECT_TRUE(r.all_pass());
  }
}

TEST(Reproduce, UnknownIdThrows) {
  try {
    reproduce("e99");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  EXPECT_THROW(example_input("nope"), Error);
}

TEST(Reproduce, FixtureDataMatchesMeasures) {
  for (const auto& id : fixture_ids()) {
    ExampleInput in = example_input(id);
    EXPECT_EQ(in.id, id);
    if (in.measure) EXPECT_LT(testutil::max_abs_diff(fourier_transform(*in.measure, in.lambda), in.data), 1e-14) << id;
  }
}
