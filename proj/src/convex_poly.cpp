#include "isoflow/convex_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "isoflow/errors.hpp"
#include "isoflow/numerics.hpp"

namespace isoflow {

namespace {

constexpr double kCollinearFactor = 1e-12;
constexpr double kTurningTolerance = 1e-9;

std::string format_point(Point2 p) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << p.x << ", " << p.y << ')';
  return os.str();
}

double bbox_scale(std::span<const Point2> pts) {
  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  return std::max(xmax - xmin, ymax - ymin);
}

Point2 outward_normal(Point2 a, Point2 b) {
  const Point2 e = b - a;
  const double len = norm(e);
  return {e.y / len, -e.x / len};
}

// Exterior turning angle at each vertex, from the normals of the two edges
// meeting there. For a convex CCW polygon every angle is in (0, pi).
std::vector<double> exterior_angles(std::span<const Point2> v) {
  const std::size_t n = v.size();
  std::vector<double> angles(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 prev = v[(i + n - 1) % n];
    const Point2 next = v[(i + 1) % n];
    const Point2 n_in = outward_normal(prev, v[i]);
    const Point2 n_out = outward_normal(v[i], next);
    angles[i] = std::atan2(cross(n_in, n_out), dot(n_in, n_out));
  }
  return angles;
}

}  // namespace

double norm(Point2 a) { return std::hypot(a.x, a.y); }

IsoperimetricSummary IsoperimetricSummary::from(double area, double perimeter) {
  if (!(area > 0.0) || !(perimeter > 0.0) || !std::isfinite(area) || !std::isfinite(perimeter)) {
    std::ostringstream os;
    os << "degenerate body: area " << area << ", perimeter " << perimeter;
    throw InvalidBody(os.str());
  }
  IsoperimetricSummary s;
  s.area = area;
  s.perimeter = perimeter;
  s.ratio = perimeter * perimeter / (4.0 * kPi * area);
  s.deficit = perimeter * perimeter - 4.0 * kPi * area;
  return s;
}

ConvexPolygon ConvexPolygon::from_vertices(std::span<const Point2> input) {
  for (const auto& p : input) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidBody("polygon has a non-finite coordinate");
    }
  }
  if (input.size() < 3) throw InvalidBody("polygon needs at least 3 vertices");

  // Work on (point, original index) pairs so errors can name input vertices.
  std::vector<std::size_t> idx(input.size());
  std::iota(idx.begin(), idx.end(), 0);
  const double scale = bbox_scale(input);
  if (!(scale > 0.0)) throw InvalidBody("polygon vertices coincide");
  const double tol = kCollinearFactor * scale * scale;
  const double dup_tol = 1e-12 * scale;

  std::vector<std::size_t> kept;
  for (std::size_t i : idx) {
    if (!kept.empty() && norm(input[i] - input[kept.back()]) <= dup_tol) continue;
    kept.push_back(i);
  }
  while (kept.size() > 1 && norm(input[kept.front()] - input[kept.back()]) <= dup_tol) {
    kept.pop_back();
  }
  if (kept.size() < 3) throw InvalidBody("polygon has fewer than 3 distinct vertices");

  std::vector<Point2> pts;
  for (std::size_t i : kept) pts.push_back(input[i]);
  if (shoelace_area(pts) < 0.0) {
    std::reverse(kept.begin(), kept.end());
    std::reverse(pts.begin(), pts.end());
  }

  const auto turn = [&](std::size_t i) {
    const std::size_t n = pts.size();
    const Point2 a = pts[(i + n - 1) % n];
    const Point2 b = pts[i];
    const Point2 c = pts[(i + 1) % n];
    return cross(b - a, c - b);
  };

  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (turn(i) < -tol) {
      const std::size_t n = pts.size();
      const std::size_t ia = kept[(i + n - 1) % n], ib = kept[i], ic = kept[(i + 1) % n];
      std::ostringstream os;
      os << "non-convex polygon: clockwise turn at vertices (" << ia << ", " << ib << ", " << ic
         << ") = " << format_point(input[ia]) << ' ' << format_point(input[ib]) << ' '
         << format_point(input[ic]);
      throw InvalidBody(os.str());
    }
  }

  // Merge nearly collinear triples by dropping the middle vertex.
  bool merged = true;
  while (merged && pts.size() >= 3) {
    merged = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (turn(i) <= tol) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        merged = true;
        break;
      }
    }
  }
  if (pts.size() < 3) throw InvalidBody("polygon is degenerate (all vertices collinear)");

  const auto angles = exterior_angles(pts);
  const double turning = std::accumulate(angles.begin(), angles.end(), 0.0);
  if (std::abs(turning - kTwoPi) > kTurningTolerance) {
    std::ostringstream os;
    os << "polygon is not simple: total turning " << turning << " instead of 2*pi";
    throw InvalidBody(os.str());
  }
  return ConvexPolygon(std::move(pts));
}

double ConvexPolygon::area() const { return shoelace_area(vertices_); }

double ConvexPolygon::perimeter() const { return closed_length(vertices_); }

double ConvexPolygon::support(double theta) const {
  const Point2 u{std::cos(theta), std::sin(theta)};
  double best = dot(vertices_[0], u);
  for (const auto& v : vertices_) best = std::max(best, dot(v, u));
  return best;
}

OffsetBody::OffsetBody(ConvexPolygon base_, double radius_)
    : base(std::move(base_)), radius(radius_) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("offset radius must be finite and >= 0");
  }
}

ConvexPolygon convex_hull(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  for (const auto& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidBody("point set has a non-finite coordinate");
    }
  }
  std::sort(pts.begin(), pts.end(),
            [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw InvalidBody("convex hull needs at least 3 distinct points");

  const std::size_t n = pts.size();
  std::vector<Point2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw InvalidBody("all points are collinear");
  return ConvexPolygon::from_vertices(hull);
}

IsoperimetricSummary summary(const ConvexPolygon& polygon) {
  return IsoperimetricSummary::from(polygon.area(), polygon.perimeter());
}

IsoperimetricSummary offset_summary(const OffsetBody& body) {
  const auto v = body.base.vertices();
  const std::size_t n = v.size();
  const double r = body.radius;
  const auto angles = exterior_angles(v);

  double area = body.base.area();
  double perimeter = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double edge = norm(v[(i + 1) % n] - v[i]);
    area += edge * r;  // rectangle swept outward by the edge
    perimeter += edge;
  }
  for (double alpha : angles) {
    area += 0.5 * r * r * alpha;  // circular sector at the vertex
    perimeter += r * alpha;
  }
  return IsoperimetricSummary::from(area, perimeter);
}

std::vector<Point2> offset_boundary_polyline(const OffsetBody& body, int arc_steps) {
  if (arc_steps < 1) throw InvalidArgument("arc_steps must be >= 1");
  const auto v = body.base.vertices();
  if (body.radius == 0.0) return {v.begin(), v.end()};
  const std::size_t n = v.size();
  const auto angles = exterior_angles(v);
  std::vector<Point2> out;
  out.reserve(n * static_cast<std::size_t>(arc_steps + 1));
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 n_in = outward_normal(v[(i + n - 1) % n], v[i]);
    const double start = std::atan2(n_in.y, n_in.x);
    for (int s = 0; s <= arc_steps; ++s) {
      const double phi = start + angles[i] * static_cast<double>(s) / arc_steps;
      out.push_back(v[i] + body.radius * Point2{std::cos(phi), std::sin(phi)});
    }
  }
  return out;
}

double shoelace_area(std::span<const Point2> points) {
  const std::size_t n = points.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) twice += cross(points[i], points[(i + 1) % n]);
  return 0.5 * twice;
}

double closed_length(std::span<const Point2> points) {
  const std::size_t n = points.size();
  double len = 0.0;
  for (std::size_t i = 0; i < n; ++i) len += norm(points[(i + 1) % n] - points[i]);
  return len;
}

IsoperimetricSummary simple_polygon_summary(std::span<const Point2> points) {
  if (points.size() < 3) throw InvalidBody("polygon needs at least 3 vertices");
  return IsoperimetricSummary::from(std::abs(shoelace_area(points)), closed_length(points));
}

}  // namespace isoflow
