#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "isoflow/convex_poly.hpp"
#include "isoflow/numerics.hpp"
#include "isoflow/support_body.hpp"

namespace isoflow {

/// Seeded generator with platform-independent draws. The standard
/// distributions are implementation-defined, so uniform doubles and integers
/// are derived from the raw 64-bit engine output by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for item `index` of a batch seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  /// Uniform point in the closed unit disk (rejection from the square).
  Point2 in_unit_disk();

 private:
  std::mt19937_64 engine_;
};

/// Convex hull of k uniform points in the unit disk, k uniform in
/// [3, max_vertices]. Redraws the rare degenerate (collinear) cloud.
ConvexPolygon random_convex_polygon(Rng& rng, int max_vertices);

/// count uniform points in the unit disk.
std::vector<Point2> random_point_cloud(Rng& rng, int count);

/// a0 = 1, degree uniform in [2, max_degree]. Coefficients of mode k are
/// drawn from [-1, 1] / k^2 (a translation part from [-0.5, 0.5]); the
/// modes k >= 2 are halved until min(p + p'') >= 0.05.
FourierSupport random_fourier_body(Rng& rng, int max_degree);

/// Smallest sampled p + p'' on the body validation grid.
double min_curvature_radius(const TrigSeries& series);

/// Zero-mean trigonometric polynomial of degree <= max_degree. About one
/// draw in four is a pure first harmonic, possibly with a k = 2 component
/// of amplitude 1e-8, so that Wirtinger equality cases are exercised.
TrigSeries random_zero_mean_series(Rng& rng, int max_degree);

/// Translated and scaled disk: radius in [0.5, 2], center in [-1, 1]^2.
struct PlantedDisk {
  Point2 center;
  double radius = 1.0;
  FourierSupport body;
};
PlantedDisk random_disk(Rng& rng);

}  // namespace isoflow
