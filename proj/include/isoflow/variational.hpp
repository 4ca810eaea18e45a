#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "isoflow/numerics.hpp"
#include "isoflow/support_body.hpp"

namespace isoflow {

/// A function of theta in the same representation as a support body:
/// coefficients for Fourier bodies, samples for grid bodies.
using SupportField = std::variant<TrigSeries, PeriodicGrid>;

SupportField field_of(const SupportBody& body);

/// One-parameter family of convex bodies p(theta, t) starting at a disk.
///
/// support_at must accept small negative t as well so that central
/// stencils around t = 0 can be evaluated. When the family has a closed
/// form, dt1 and dt2 hold dp/dt and d^2p/dt^2 at t = 0.
struct VariationFamily {
  std::function<SupportBody(double)> support_at;
  std::string description;
  std::optional<SupportField> dt1;
  std::optional<SupportField> dt2;
};

/// Rescaled (1/t)-neighborhoods of a body, normalized to its area:
/// p(theta, t) = sqrt(A / (A t^2 + l t + pi)) (q(theta) t + 1).
VariationFamily build_neighborhood_variation(const SupportBody& body);
/// p(theta, t) = 1 + t (a0 cos theta + a1 sin theta).
VariationFamily build_translation_variation(double a0, double a1);
/// p(theta, t) = 1 + t c.
VariationFamily build_scaling_variation(double c);

/// First and second variations at t = 0 of the family rescaled so that it
/// starts at the unit disk. The "direct" values are finite differences of
/// t -> ratio(support_at(t)).
struct VariationDerivatives {
  double l1 = 0.0;
  double l2 = 0.0;
  double A1 = 0.0;
  double A2 = 0.0;
  double I1 = 0.0;
  double I2 = 0.0;
  double I1_direct = 0.0;
  double I2_direct = 0.0;
  /// Radius of the starting disk before normalization.
  double disk_radius = 1.0;
  /// Sup-norm gap between closed-form and finite-difference t-derivative
  /// fields; zero when the family has no closed form.
  double field_residual = 0.0;
  /// Sup-norm distance of dp/dt(., 0) from span{1, cos, sin}.
  double rigid_residual = 0.0;
};

/// Eq. (8) form of I''(0) for a variation of the unit disk.
double unit_disk_second_variation(double l1, double l2, double A1, double A2);

/// Throws ConsistencyError if the assembled and direct values disagree
/// (|dI1| > 1e-6 or |dI2| > 1e-5 max(1, |I2|)).
VariationDerivatives variation_derivatives(const VariationFamily& family, double h = kFlowStep);

std::string to_json(const VariationDerivatives& d, std::optional<double> source_deficit = {});

struct WirtingerReport {
  double lhs = 0.0;    ///< int phi'^2
  double rhs = 0.0;    ///< int phi^2
  double slack = 0.0;  ///< lhs - rhs
  /// First-harmonic coefficients (cos, sin) when slack <= 1e-10.
  std::optional<std::array<double, 2>> certificate;
  /// int (phi - a cos - b sin)^2 for the certificate; zero otherwise.
  double certificate_residual = 0.0;
};

/// Wirtinger's inequality for a zero-mean periodic function. The caller must
/// remove the mean: |int phi| > 1e-10 is an InvalidArgument.
WirtingerReport wirtinger_check(const PeriodicGrid& phi);
WirtingerReport wirtinger_check(const TrigSeries& phi);

/// pi sum_k (k^2 - 1)(a_k^2 + b_k^2).
double wirtinger_slack_closed_form(const TrigSeries& phi);

std::string to_json(const WirtingerReport& r);

struct DiskRecovery {
  bool accepted = false;
  Point2 center;
  double radius = 0.0;
  double deficit = 0.0;
  /// Relative least-squares residual of the (t+1)^-2 profile fit.
  double profile_residual = 0.0;
};

inline constexpr double kEqualityTolerance = 1e-10;

/// Recovers the center of a zero-deficit body from the neighborhood
/// variation: dp/dt must be a pure first harmonic decaying like (t+1)^-2.
/// Bodies with |deficit| > tol L^2 are rejected; a profile mismatch on an
/// accepted body raises ConsistencyError.
DiskRecovery recover_disk_center(const SupportBody& body, double tol = kEqualityTolerance);

std::string to_json(const DiskRecovery& r);

}  // namespace isoflow
