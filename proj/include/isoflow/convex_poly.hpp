#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace isoflow {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
double norm(Point2 a);

/// (area, perimeter) together with the isoperimetric ratio L^2/(4 pi A)
/// and deficit L^2 - 4 pi A.
struct IsoperimetricSummary {
  double area = 0.0;
  double perimeter = 0.0;
  double ratio = 0.0;
  double deficit = 0.0;

  /// Throws InvalidBody unless area and perimeter are positive and finite.
  static IsoperimetricSummary from(double area, double perimeter);
};

/// Strictly convex polygon with counterclockwise vertices.
class ConvexPolygon {
 public:
  /// Normalizes orientation, drops repeated points and merges nearly
  /// collinear triples (cross product below 1e-12 * scale^2). Throws
  /// InvalidBody naming the offending triple when the input turns clockwise
  /// anywhere, or when it winds around more than once.
  static ConvexPolygon from_vertices(std::span<const Point2> vertices);

  std::span<const Point2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point2& operator[](std::size_t i) const { return vertices_[i]; }

  double area() const;
  double perimeter() const;
  /// max over vertices of <v, (cos theta, sin theta)>.
  double support(double theta) const;

 private:
  explicit ConvexPolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {}
  std::vector<Point2> vertices_;
};

/// r-neighborhood of a convex polygon: edges pushed out by r joined by
/// circular arcs of radius r at the vertices.
struct OffsetBody {
  ConvexPolygon base;
  double radius = 0.0;

  OffsetBody(ConvexPolygon base, double radius);
};

/// Andrew's monotone chain; collinear boundary points are dropped.
ConvexPolygon convex_hull(std::span<const Point2> points);

IsoperimetricSummary summary(const ConvexPolygon& polygon);

/// Area and perimeter of D_r assembled from its pieces: base area, one
/// rectangle per edge and one circular sector per vertex, with the sector
/// angle taken from the adjacent edge normals.
IsoperimetricSummary offset_summary(const OffsetBody& body);

/// Closed counterclockwise polyline of the offset boundary; every vertex arc
/// is split into arc_steps chords. For radius 0 the polygon vertices.
std::vector<Point2> offset_boundary_polyline(const OffsetBody& body, int arc_steps);

/// Signed shoelace area of a closed polyline.
double shoelace_area(std::span<const Point2> points);
/// Length of the closed polyline through the points.
double closed_length(std::span<const Point2> points);

/// Summary of an arbitrary simple polygon (either orientation), for
/// comparing a non-convex input with its hull.
IsoperimetricSummary simple_polygon_summary(std::span<const Point2> points);

}  // namespace isoflow
