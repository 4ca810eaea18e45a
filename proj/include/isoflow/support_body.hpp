#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>

#include "isoflow/convex_poly.hpp"
#include "isoflow/numerics.hpp"

namespace isoflow {

/// Relative floor on the radius of curvature p + p'' below which a support
/// function is rejected.
inline constexpr double kCurvatureFloor = 1e-9;
/// Default maximum Fourier degree accepted from input files.
inline constexpr std::size_t kDefaultMaxDegree = 64;

/// Smooth convex body given by a trigonometric support function
/// p(theta) = a0 + sum_k a_k cos(k theta) + b_k sin(k theta).
///
/// Construction checks a0 > 0 and min p + p'' > 1e-9 a0 on a grid of
/// 8x the coefficient count (at least 512 points). Translation modes (k = 1)
/// are kept as given.
class FourierSupport {
 public:
  explicit FourierSupport(TrigSeries series);
  FourierSupport(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
      : FourierSupport(TrigSeries(a0, std::move(cos_coeffs), std::move(sin_coeffs))) {}

  const TrigSeries& series() const { return series_; }
  double a0() const { return series_.a0; }
  std::size_t degree() const { return series_.degree(); }

  double eval(double theta) const { return series_.eval(theta); }
  double radius_of_curvature(double theta) const;
  /// Smallest sampled value of p + p'' on the validation grid.
  double min_curvature_radius() const { return min_curvature_; }

  /// pi a0^2 + (pi/2) sum (1 - k^2)(a_k^2 + b_k^2)
  double area() const;
  /// 2 pi a0
  double perimeter() const;

 private:
  TrigSeries series_;
  double min_curvature_ = 0.0;
};

/// How area and perimeter are evaluated for sampled support functions.
enum class GridQuadrature {
  /// Trapezoid rule with spectral p'; spectrally accurate for smooth bodies.
  Spectral,
  /// Exact area and perimeter of the polygon circumscribed along the sampled
  /// normals; second order, but robust to kinks in p (rounded polygons).
  Circumscribed,
};

std::string_view to_string(GridQuadrature q);

/// Convex body given by samples of its support function on a periodic grid.
///
/// Validity uses the discrete radius of curvature
///   kappa_j = (p_{j+1} + p_{j-1} - 2 cos(h) p_j) / (2 - 2 cos(h)),
/// which is the edge length of the circumscribed polygon at normal j divided
/// by 2 tan(h/2); all kappa_j must exceed 1e-9 * mean(p). Spectral bodies must
/// also have positive spectral p + p''.
///
/// The refinement residual is the relative change of (area, perimeter)
/// between the half grid and the full grid under the spectral rule. When the
/// quadrature is not forced it selects Spectral if the residual is at most
/// 1e-8 and Circumscribed otherwise.
class GridSupport {
 public:
  explicit GridSupport(PeriodicGrid samples, std::optional<GridQuadrature> quadrature = {});

  const PeriodicGrid& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  GridQuadrature quadrature() const { return quadrature_; }
  double refinement_residual() const { return refinement_residual_; }
  bool converged() const { return refinement_residual_ <= kRefinementTolerance; }
  double min_curvature_radius() const { return min_curvature_; }

  double eval(double theta) const;
  double area() const;
  double perimeter() const;

 private:
  PeriodicGrid samples_;
  TrigSeries coefficients_;
  GridQuadrature quadrature_;
  double refinement_residual_ = 0.0;
  double min_curvature_ = 0.0;
};

using SupportBody = std::variant<FourierSupport, GridSupport>;

/// Discrete radius of curvature kappa_j of a sampled support function.
PeriodicGrid discrete_curvature_radius(const PeriodicGrid& p);

/// Spectral area 1/2 int (p^2 - p'^2) and perimeter int p of raw samples.
double spectral_area(const PeriodicGrid& p);
/// Circumscribed-polygon area 1/2 sum p_j l_j of raw samples.
double circumscribed_area(const PeriodicGrid& p);
/// Polarized circumscribed area: circumscribed_cross(p, p) = 2 * circumscribed_area(p).
/// Summed as 2 tan(h/2) sum a_j b_j - sum da_j db_j / sin h, which avoids the
/// 1/h^2 cancellation of the curvature-radius form on fine grids.
double circumscribed_cross(const PeriodicGrid& a, const PeriodicGrid& b);
/// Circumscribed-polygon perimeter 2 tan(h/2) sum p_j.
double circumscribed_perimeter(const PeriodicGrid& p);

double eval(const SupportBody& body, double theta);
double area(const SupportBody& body);
double perimeter(const SupportBody& body);
IsoperimetricSummary summary(const SupportBody& body);

/// 2 pi^2 sum_{k >= 2} (k^2 - 1)(a_k^2 + b_k^2).
double fourier_deficit(const FourierSupport& body);

/// Support function of D_r: p + r. Grid bodies keep their quadrature.
FourierSupport offset(const FourierSupport& body, double r);
GridSupport offset(const GridSupport& body, double r);
SupportBody offset(const SupportBody& body, double r);

/// Samples max_v <v, (cos theta, sin theta)> + r on an n-point grid.
/// r must be positive: the bare polygon has zero curvature between vertices.
GridSupport from_polygon_rounded(const ConvexPolygon& polygon, double r,
                                 std::size_t n = kDefaultGridSize);

}  // namespace isoflow
