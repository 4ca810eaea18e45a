#include <gtest/gtest.h>

#include <cmath>

#include "isoflow/convex_poly.hpp"
#include "isoflow/errors.hpp"
#include "isoflow/support_body.hpp"

using namespace isoflow;

namespace {

// Perimeter of the ellipse with semi-axes 2 and 1: 8 E(3/4), 30 digits.
constexpr double kEllipsePerimeter = 9.68844822054767619842850;

GridSupport ellipse_grid(std::size_t n) {
  return GridSupport(PeriodicGrid::sample(n, [](double t) {
    return std::sqrt(4.0 * std::cos(t) * std::cos(t) + std::sin(t) * std::sin(t));
  }));
}

ConvexPolygon square(double h) {
  return ConvexPolygon::from_vertices(std::vector<Point2>{{-h, -h}, {h, -h}, {h, h}, {-h, h}});
}

}  // namespace

TEST(FourierSupport, EvaluatesDiskAndTranslate) {
  EXPECT_DOUBLE_EQ(FourierSupport(1.0, {}, {}).eval(0.77), 1.0);
  const FourierSupport t(1.0, {0.3}, {0.4});
  EXPECT_NEAR(t.eval(0.0), 1.3, 1e-15);
  EXPECT_NEAR(t.area(), kPi, 1e-15);
  EXPECT_NEAR(t.perimeter(), kTwoPi, 1e-15);
}

TEST(FourierSupport, ClosedFormMatchesQuadrature) {
  const FourierSupport f(1.2, {0.1, 0.05, -0.02}, {0.0, 0.03, 0.01});
  const PeriodicGrid p = f.series().sample(64);
  EXPECT_NEAR(f.area(), spectral_area(p), 1e-13);
  EXPECT_NEAR(f.perimeter(), trapezoid_integrate(p), 1e-13);
}

TEST(FourierSupport, RejectsNonConvexAndBadMean) {
  EXPECT_THROW(FourierSupport(1.0, {0.0, 0.4}, {}), InvalidBody);  // 1 - 3*0.4 < 0
  EXPECT_THROW(FourierSupport(0.0, {}, {}), InvalidBody);
  EXPECT_THROW(FourierSupport(-1.0, {}, {}), InvalidBody);
  EXPECT_THROW(FourierSupport(1.0, {NAN}, {}), InvalidBody);
  EXPECT_NO_THROW(FourierSupport(1.0, {0.0, 0.33}, {}));
}

TEST(FourierDeficit, Values) {
  EXPECT_DOUBLE_EQ(fourier_deficit(FourierSupport(1.0, {}, {})), 0.0);
  const FourierSupport f(1.0, {0.0, 0.1}, {});
  EXPECT_NEAR(fourier_deficit(f), 0.06 * kPi * kPi, 1e-15);
  const auto s = summary(SupportBody(f));
  EXPECT_NEAR(s.deficit, 0.06 * kPi * kPi, 1e-13);
  EXPECT_DOUBLE_EQ(fourier_deficit(FourierSupport(1.0, {0.01}, {0.02})), 0.0);
}

TEST(GridSupport, EllipseConvergesSpectrally) {
  const GridSupport e = ellipse_grid(256);
  EXPECT_EQ(e.quadrature(), GridQuadrature::Spectral);
  EXPECT_TRUE(e.converged());
  EXPECT_NEAR(e.area(), kTwoPi, 1e-8);
  EXPECT_NEAR(e.perimeter(), kEllipsePerimeter, 1e-6);
  EXPECT_NEAR(e.eval(0.0), 2.0, 1e-12);
}

TEST(GridSupport, BareSquareIsRejected) {
  EXPECT_THROW(GridSupport(PeriodicGrid::sample(256, [](double t) { return std::abs(std::cos(t)) + std::abs(std::sin(t)); })),
               InvalidBody);
}

TEST(GridSupport, ForcedSpectralOnKinkedSupportIsRejected) {
  // the spectral p + p'' of a rounded square oscillates below zero
  const GridSupport g = from_polygon_rounded(square(1.0), 0.05);
  EXPECT_EQ(g.quadrature(), GridQuadrature::Circumscribed);
  EXPECT_FALSE(g.converged());
  EXPECT_THROW(GridSupport(g.samples(), GridQuadrature::Spectral), InvalidBody);
}

TEST(RoundedPolygon, SquareMatchesSteiner) {
  const GridSupport g = from_polygon_rounded(square(1.0), 1.0, 256);
  EXPECT_NEAR(g.area(), kPi + 12.0, 1e-3);
  EXPECT_NEAR(g.perimeter(), kTwoPi + 8.0, 1e-3);
  for (std::size_t j = 0; j < g.size(); ++j) {
    EXPECT_NEAR(g.samples()[j], square(1.0).support(g.samples().node(j)) + 1.0, 1e-15);
  }
}

TEST(RoundedPolygon, TriangleAndRegular64Gon) {
  const auto tri = ConvexPolygon::from_vertices(std::vector<Point2>{{0, 0}, {1, 0}, {0, 1}});
  const GridSupport g = from_polygon_rounded(tri, 5.0);
  EXPECT_NEAR(summary(SupportBody(g)).ratio, offset_summary(OffsetBody(tri, 5.0)).ratio, 1e-4);

  std::vector<Point2> v;
  for (int k = 0; k < 64; ++k) v.push_back({std::cos(kTwoPi * k / 64), std::sin(kTwoPi * k / 64)});
  const GridSupport h = from_polygon_rounded(ConvexPolygon::from_vertices(v), 0.1);
  EXPECT_NEAR(h.perimeter(), kTwoPi * 0.1 + 64 * 2 * std::sin(kPi / 64), 1e-3);
}

TEST(RoundedPolygon, RequiresPositiveRadius) {
  EXPECT_THROW(from_polygon_rounded(square(1.0), 0.0), InvalidArgument);
  EXPECT_THROW(from_polygon_rounded(square(1.0), -1.0), InvalidArgument);
}

TEST(Offset, DiskAndDeficitInvariance) {
  const FourierSupport d = offset(FourierSupport(1.0, {}, {}), 2.0);
  EXPECT_NEAR(d.area(), 9 * kPi, 1e-13);
  EXPECT_NEAR(d.perimeter(), 6 * kPi, 1e-13);

  const FourierSupport f(1.0, {0.0, 0.1}, {});
  const FourierSupport g = offset(f, 1.0);
  EXPECT_NEAR(summary(SupportBody(g)).deficit, 0.06 * kPi * kPi, 1e-12);
  EXPECT_NEAR(fourier_deficit(g), fourier_deficit(f), 1e-15);

  const FourierSupport same = offset(f, 0.0);
  EXPECT_EQ(same.series().cos, f.series().cos);
  EXPECT_DOUBLE_EQ(same.a0(), f.a0());
  EXPECT_THROW(offset(f, -0.5), InvalidArgument);
}

TEST(Offset, GridKeepsQuadrature) {
  const GridSupport g = from_polygon_rounded(square(1.0), 0.1);
  const GridSupport h = offset(g, 2.0);
  EXPECT_EQ(h.quadrature(), g.quadrature());
  // circumscribed bodies follow Steiner with pi replaced by n tan(pi/n)
  const double pin = 256 * std::tan(kPi / 256);
  EXPECT_NEAR(h.area(), g.area() + 2.0 * g.perimeter() + pin * 4.0, 1e-11);
  EXPECT_NEAR(h.perimeter(), g.perimeter() + 2.0 * 2.0 * pin, 1e-12);
}

TEST(DiscreteCurvature, CircumscribedPolygonEdges) {
  // for a disk of radius 1 every edge is 2 tan(h/2) long, kappa = 1
  const auto k = discrete_curvature_radius(PeriodicGrid::sample(32, [](double) { return 1.0; }));
  for (std::size_t j = 0; j < k.size(); ++j) EXPECT_NEAR(k[j], 1.0, 1e-13);
  EXPECT_NEAR(circumscribed_area(PeriodicGrid::sample(32, [](double) { return 1.0; })),
              32 * std::tan(kPi / 32), 1e-14);
}
