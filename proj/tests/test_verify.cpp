#include <gtest/gtest.h>

#include <set>

#include "isoflow/body_io.hpp"
#include "isoflow/errors.hpp"
#include "isoflow/random_bodies.hpp"
#include "isoflow/verify.hpp"

using namespace isoflow;

TEST(RngTest, SameSeedSameDraws) {
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(), b.uniform());
  Rng s1 = Rng::stream(42, 3), s2 = Rng::stream(42, 3), s3 = Rng::stream(42, 4);
  const double x = s1.uniform();
  EXPECT_EQ(x, s2.uniform());
  EXPECT_NE(x, s3.uniform());
}

TEST(RngTest, RangesAreRespected) {
  Rng rng(1);
  std::set<int> seen;
  for (int i = 0; i < 2000; ++i) {
    const int k = rng.uniform_int(3, 7);
    ASSERT_GE(k, 3);
    ASSERT_LE(k, 7);
    seen.insert(k);
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const Point2 p = rng.in_unit_disk();
    ASSERT_LE(dot(p, p), 1.0);
  }
  EXPECT_EQ(seen.size(), 5u);
  EXPECT_THROW(rng.uniform_int(2, 1), InvalidArgument);
}

TEST(Generators, PolygonsAndFourierBodiesAreValid) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const ConvexPolygon P = random_convex_polygon(rng, 12);
    EXPECT_GE(P.size(), 3u);
    EXPECT_LE(P.size(), 12u);
    const FourierSupport f = random_fourier_body(rng, 8);
    EXPECT_EQ(f.a0(), 1.0);
    EXPECT_GE(f.degree(), 2u);
    EXPECT_LE(f.degree(), 8u);
    EXPECT_GE(min_curvature_radius(f.series()), 0.05);
  }
  EXPECT_THROW(random_convex_polygon(rng, 2), InvalidArgument);
  EXPECT_THROW(random_fourier_body(rng, 1), InvalidArgument);
}

TEST(Generators, ZeroMeanSeriesIncludeEqualityCases) {
  Rng rng(8);
  int pure = 0;
  for (int i = 0; i < 400; ++i) {
    const TrigSeries s = random_zero_mean_series(rng, 6);
    EXPECT_EQ(s.a0, 0.0);
    if (s.weighted_energy(2, 0) <= 1e-12) ++pure;
  }
  EXPECT_GT(pure, 50);
  EXPECT_LT(pure, 250);
}

TEST(Generators, PlantedDisk) {
  Rng rng(3);
  const PlantedDisk d = random_disk(rng);
  EXPECT_NEAR(d.body.eval(0.0), d.radius + d.center.x, 1e-15);
  EXPECT_NEAR(d.body.eval(kPi / 2), d.radius + d.center.y, 1e-15);
}

TEST(VerifySuite, SmallRunPassesAndIsDeterministic) {
  VerifyConfig cfg;
  cfg.count = 60;
  cfg.seed = 7;
  const VerifyReport a = run_verify(cfg);
  EXPECT_TRUE(a.passed()) << to_text(a);
  for (const PropertyResult& p : a.properties) EXPECT_GT(p.checked, 0u) << p.name;
  EXPECT_EQ(to_text(a), to_text(run_verify(cfg)));
  EXPECT_EQ(to_json(a), to_json(run_verify(cfg)));
  cfg.seed = 8;
  EXPECT_NE(to_json(a), to_json(run_verify(cfg)));
}

TEST(VerifySuite, ConfigValidation) {
  VerifyConfig cfg;
  cfg.count = 0;
  EXPECT_THROW(run_verify(cfg), InvalidArgument);
  cfg = VerifyConfig{};
  cfg.max_vertices = 2;
  EXPECT_THROW(run_verify(cfg), InvalidArgument);
  cfg = VerifyConfig{};
  cfg.max_degree = 1;
  EXPECT_THROW(run_verify(cfg), InvalidArgument);
  cfg = VerifyConfig{};
  cfg.r_max = 0.0;
  EXPECT_THROW(run_verify(cfg), InvalidArgument);
}

TEST(VerifySuite, ForcedFailuresReplayToTheSameValue) {
  VerifyConfig cfg;
  cfg.count = 10;
  cfg.tolerance_scale = 0.0;  // every nonzero residual now fails
  const VerifyReport rep = run_verify(cfg);
  EXPECT_FALSE(rep.passed());
  std::size_t replayed = 0;
  for (const PropertyResult& p : rep.properties) {
    for (const ReplayCase& c : p.failures) {
      const ReplayOutcome o = replay(to_json(c), cfg.tolerance_scale);
      EXPECT_EQ(o.property, c.property);
      EXPECT_EQ(o.value, c.value) << to_json(c);
      EXPECT_FALSE(o.passed);
      // under the real bounds the same case passes
      EXPECT_TRUE(replay(to_json(c)).passed) << to_json(c);
      ++replayed;
    }
  }
  EXPECT_GT(replayed, 10u);
}

TEST(VerifySuite, ReplayRejectsMalformedCases) {
  EXPECT_THROW(replay("not json"), ParseError);
  EXPECT_THROW(replay(R"({"property":"nope","source":"polygon"})"), ParseError);
  EXPECT_THROW(replay(R"({"property":"steiner_identity","source":"polygon"})"), ParseError);
  EXPECT_THROW(replay(R"({"property":"steiner_identity","source":"polygon",
                         "body":{"type":"polygon","vertices":[[0,0],[1,0],[0,1]]},"params":{"r":1}})"),
               ParseError);
  const ReplayOutcome ok = replay(R"({"property":"steiner_identity","source":"polygon",
      "body":{"type":"polygon","vertices":[[0,0],[1,0],[1,1],[0,1]]},"params":{"r":1,"r1":0.5,"r2":2}})");
  EXPECT_TRUE(ok.passed);
  EXPECT_LE(ok.value, 1e-12);
}
