#include "isoflow/random_bodies.hpp"

#include <algorithm>
#include <limits>

#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

constexpr double kMinRandomCurvature = 0.05;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL)));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw InvalidArgument("uniform_int needs lo <= hi");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return lo + static_cast<int>(x % span);
}

Point2 Rng::in_unit_disk() {
  for (;;) {
    const Point2 p{uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
    if (dot(p, p) <= 1.0) return p;
  }
}

std::vector<Point2> random_point_cloud(Rng& rng, int count) {
  std::vector<Point2> pts(static_cast<std::size_t>(count));
  for (auto& p : pts) p = rng.in_unit_disk();
  return pts;
}

ConvexPolygon random_convex_polygon(Rng& rng, int max_vertices) {
  if (max_vertices < 3) throw InvalidArgument("max_vertices must be at least 3");
  for (;;) {
    const int k = rng.uniform_int(3, max_vertices);
    const std::vector<Point2> pts = random_point_cloud(rng, k);
    try {
      return convex_hull(pts);
    } catch (const InvalidBody&) {
      // collinear or repeated draw; try again
    }
  }
}

double min_curvature_radius(const TrigSeries& series) {
  std::size_t m = std::max<std::size_t>(512, 8 * (2 * series.degree() + 1));
  m += m % 2;
  const PeriodicGrid p = series.sample(m);
  const PeriodicGrid p2 = series.sample(m, 2);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) worst = std::min(worst, p[j] + p2[j]);
  return worst;
}

FourierSupport random_fourier_body(Rng& rng, int max_degree) {
  if (max_degree < 2) throw InvalidArgument("max_degree must be at least 2");
  const int degree = rng.uniform_int(2, max_degree);
  TrigSeries s(1.0, std::vector<double>(static_cast<std::size_t>(degree)),
               std::vector<double>(static_cast<std::size_t>(degree)));
  s.cos[0] = rng.uniform(-0.5, 0.5);
  s.sin[0] = rng.uniform(-0.5, 0.5);
  for (int k = 2; k <= degree; ++k) {
    const double w = 1.0 / (k * k);
    s.cos[static_cast<std::size_t>(k - 1)] = w * rng.uniform(-1.0, 1.0);
    s.sin[static_cast<std::size_t>(k - 1)] = w * rng.uniform(-1.0, 1.0);
  }
  while (min_curvature_radius(s) < kMinRandomCurvature) {
    for (std::size_t i = 1; i < s.degree(); ++i) {
      s.cos[i] *= 0.5;
      s.sin[i] *= 0.5;
    }
  }
  return FourierSupport(std::move(s));
}

TrigSeries random_zero_mean_series(Rng& rng, int max_degree) {
  if (max_degree < 1) throw InvalidArgument("max_degree must be at least 1");
  const int flavor = rng.uniform_int(0, 7);
  if (flavor <= 1) {
    // pure first harmonic, exact equality
    return TrigSeries(0.0, {rng.uniform(-1.0, 1.0)}, {rng.uniform(-1.0, 1.0)});
  }
  if (flavor == 2) {
    // first harmonic plus a k = 2 ripple far below the equality threshold
    return TrigSeries(0.0, {rng.uniform(-1.0, 1.0), 1e-8 * rng.uniform(-1.0, 1.0)},
                      {rng.uniform(-1.0, 1.0), 1e-8 * rng.uniform(-1.0, 1.0)});
  }
  const int degree = rng.uniform_int(std::min(2, max_degree), max_degree);
  TrigSeries s(0.0, std::vector<double>(static_cast<std::size_t>(degree)),
               std::vector<double>(static_cast<std::size_t>(degree)));
  for (std::size_t i = 0; i < s.degree(); ++i) {
    s.cos[i] = rng.uniform(-1.0, 1.0);
    s.sin[i] = rng.uniform(-1.0, 1.0);
  }
  return s;
}

PlantedDisk random_disk(Rng& rng) {
  const double r = rng.uniform(0.5, 2.0);
  const Point2 c{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return PlantedDisk{c, r, FourierSupport(r, {c.x}, {c.y})};
}

}  // namespace isoflow
