#pragma once

#include <string>
#include <variant>
#include <vector>

#include "isoflow/convex_poly.hpp"
#include "isoflow/numerics.hpp"
#include "isoflow/support_body.hpp"

namespace isoflow {

/// The quadratic pi r^2 + L r + A giving the area of the r-neighborhood.
struct SteinerPolynomial {
  double area = 0.0;
  double perimeter = 0.0;

  SteinerPolynomial(double area, double perimeter);
  static SteinerPolynomial of(const IsoperimetricSummary& s) { return {s.area, s.perimeter}; }

  double operator()(double r) const { return kPi * r * r + perimeter * r + area; }
  double deficit() const { return perimeter * perimeter - 4.0 * kPi * area; }
  /// L^2 >= 4 pi A (up to rounding relative to L^2).
  bool realizable() const;
};

/// Isoperimetric ratio of the r-neighborhood:
/// I(r) = (2 pi r + L)^2 / (4 pi (pi r^2 + L r + A)).
double ratio_of_neighborhood(double area, double perimeter, double r);
/// dI/dr = (4 pi A - L^2)(2 pi r + L) / (4 pi (pi r^2 + L r + A)^2).
double ratio_of_neighborhood_derivative(double area, double perimeter, double r);

/// Least absolute value among the real roots of A t^2 + L t + pi, or +inf
/// when the roots are complex. The flow is smooth on (-delta, inf).
double flow_domain_radius(double area, double perimeter);

/// Ratio of the (1/t)-neighborhood:
/// I(t) = (L^2 t^2 + 4 pi L t + 4 pi^2) / (4 pi A t^2 + 4 pi L t + 4 pi^2).
/// Throws DomainError for t <= -delta.
double flow_ratio(double area, double perimeter, double t);
/// I'(t) = (L^2 - 4 pi A)(L t^2 + 2 pi t) / (4 pi (A t^2 + L t + pi)^2).
double flow_ratio_derivative(double area, double perimeter, double t);
/// I''(t) = ((L^2 - 4 pi A)/(2 pi)) (pi^2 - 3 pi A t^2 - A L t^3) / (A t^2 + L t + pi)^3.
double flow_ratio_second_derivative(double area, double perimeter, double t);

/// Roots of pi r^2 + L r + A, i.e. (-L +- sqrt(L^2 - 4 pi A)) / (2 pi).
QuadraticRoots steiner_roots(const SteinerPolynomial& sp);
/// Roots of A t^2 + L t + pi, i.e. (-L +- sqrt(L^2 - 4 pi A)) / (2 A).
QuadraticRoots denominator_roots(double area, double perimeter);

struct RootReport {
  QuadraticRoots steiner;
  QuadraticRoots denominator;
  double delta = 0.0;
  bool realizable = false;
  std::string note;
};

RootReport root_report(double area, double perimeter);

using FlowBody = std::variant<ConvexPolygon, FourierSupport, GridSupport>;

/// Samples of I, I', I'' on [0, t_max] from the closed forms and from
/// fourth-order finite differences of I.
struct FlowReport {
  double area = 0.0;
  double perimeter = 0.0;
  std::vector<double> t_samples;
  std::vector<double> I_values;
  std::vector<double> I_prime_closed;
  std::vector<double> I_prime_fd;
  std::vector<double> I_second_closed;
  std::vector<double> I_second_fd;
  /// max |closed - fd| over both derivatives and all samples.
  double max_residual = 0.0;
  /// Polygons only: max |flow_ratio(1/t) - ratio(offset body at r = 1/t)|
  /// over the positive samples. Zero for smooth bodies.
  double max_geometric_residual = 0.0;
};

/// steps + 1 samples t_k = t_max k / steps. Body-derived (A, L) must satisfy
/// the isoperimetric inequality; a violation raises ConsistencyError.
FlowReport flow_report(const FlowBody& body, double t_max, int steps, double h = kFlowStep);

IsoperimetricSummary summary(const FlowBody& body);

/// Rows "t,I,dI_closed,dI_fd,d2I_closed,d2I_fd" with 17 significant digits.
std::string to_csv(const FlowReport& report);
std::string to_json(const FlowReport& report);

}  // namespace isoflow
