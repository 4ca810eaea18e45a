#include "isoflow/support_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

std::size_t validation_grid_size(std::size_t degree) {
  std::size_t m = std::max<std::size_t>(512, 8 * (2 * degree + 1));
  return m + (m % 2);
}

std::string curvature_message(std::string_view what, double value, double theta, double floor) {
  std::ostringstream os;
  os.precision(6);
  os << what << ": radius of curvature " << value << " at theta=" << theta
     << " is not above the floor " << floor;
  return os.str();
}

// Relative change of (area, perimeter) between the half grid and the full
// grid under the spectral rule.
double half_grid_residual(const PeriodicGrid& p) {
  const std::size_t half = p.size() / 2;
  if (half < 8 || half % 2 != 0) return std::numeric_limits<double>::infinity();
  const PeriodicGrid coarse = subsample(p);
  const double a_fine = spectral_area(p);
  const double a_coarse = spectral_area(coarse);
  const double l_fine = trapezoid_integrate(p);
  const double l_coarse = trapezoid_integrate(coarse);
  const double da = std::abs(a_fine - a_coarse) / std::max(std::abs(a_fine), 1e-300);
  const double dl = std::abs(l_fine - l_coarse) / std::max(std::abs(l_fine), 1e-300);
  return std::max(da, dl);
}

}  // namespace

FourierSupport::FourierSupport(TrigSeries series) : series_(std::move(series)) {
  if (!std::isfinite(series_.a0) || !(series_.a0 > 0.0)) {
    throw InvalidBody("fourier support needs a0 > 0");
  }
  for (std::size_t i = 0; i < series_.degree(); ++i) {
    if (!std::isfinite(series_.cos[i]) || !std::isfinite(series_.sin[i])) {
      throw InvalidBody("fourier support has a non-finite coefficient");
    }
  }
  const std::size_t m = validation_grid_size(series_.degree());
  const PeriodicGrid p = series_.sample(m);
  const PeriodicGrid p2 = series_.sample(m, 2);
  std::size_t worst = 0;
  min_curvature_ = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    const double rho = p[j] + p2[j];
    if (rho < min_curvature_) {
      min_curvature_ = rho;
      worst = j;
    }
  }
  const double floor = kCurvatureFloor * series_.a0;
  if (!(min_curvature_ > floor)) {
    throw InvalidBody(curvature_message("fourier support", min_curvature_, p.node(worst), floor));
  }
}

double FourierSupport::radius_of_curvature(double theta) const {
  return series_.eval(theta) + series_.eval_derivative(theta, 2);
}

double FourierSupport::area() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < degree(); ++i) {
    const double k = static_cast<double>(i + 1);
    const double e = series_.cos[i] * series_.cos[i] + series_.sin[i] * series_.sin[i];
    sum += (1.0 - k * k) * e;
  }
  return kPi * a0() * a0() + 0.5 * kPi * sum;
}

double FourierSupport::perimeter() const { return kTwoPi * a0(); }

std::string_view to_string(GridQuadrature q) {
  switch (q) {
    case GridQuadrature::Spectral:
      return "spectral";
    case GridQuadrature::Circumscribed:
      return "circumscribed";
  }
  return "unknown";
}

PeriodicGrid discrete_curvature_radius(const PeriodicGrid& p) {
  const std::size_t n = p.size();
  const double h = p.spacing();
  const double c = std::cos(h);
  const double denom = 2.0 - 2.0 * c;
  std::vector<double> kappa(n);
  for (std::size_t j = 0; j < n; ++j) {
    kappa[j] = (p[(j + 1) % n] + p[(j + n - 1) % n] - 2.0 * c * p[j]) / denom;
  }
  return PeriodicGrid(std::move(kappa));
}

double spectral_area(const PeriodicGrid& p) {
  const PeriodicGrid dp = spectral_derivative(p, 1);
  CompensatedSum sum;
  for (std::size_t j = 0; j < p.size(); ++j) sum.add(p[j] * p[j] - dp[j] * dp[j]);
  return 0.5 * p.spacing() * sum.value();
}

double circumscribed_area(const PeriodicGrid& p) {
  // Edge j of the circumscribed polygon has length kappa_j * 2 tan(h/2);
  // summing by parts gives the cross form below.
  return 0.5 * circumscribed_cross(p, p);
}

double circumscribed_cross(const PeriodicGrid& a, const PeriodicGrid& b) {
  if (a.size() != b.size()) throw InvalidArgument("circumscribed_cross: grid sizes differ");
  const std::size_t n = a.size();
  const double h = a.spacing();
  CompensatedSum values;
  CompensatedSum jumps;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = (j + 1) % n;
    values.add(a[j] * b[j]);
    jumps.add((a[k] - a[j]) * (b[k] - b[j]));
  }
  return 2.0 * std::tan(0.5 * h) * values.value() - jumps.value() / std::sin(h);
}

double circumscribed_perimeter(const PeriodicGrid& p) {
  CompensatedSum sum;
  for (double v : p.values()) sum.add(v);
  return 2.0 * std::tan(0.5 * p.spacing()) * sum.value();
}

GridSupport::GridSupport(PeriodicGrid samples, std::optional<GridQuadrature> quadrature)
    : samples_(std::move(samples)), coefficients_(trig_coefficients(samples_)) {
  const double mean = samples_.mean();
  if (!(mean > 0.0)) throw InvalidBody("grid support has non-positive mean");
  const double floor = kCurvatureFloor * mean;

  const PeriodicGrid kappa = discrete_curvature_radius(samples_);
  const auto worst = std::min_element(kappa.values().begin(), kappa.values().end());
  min_curvature_ = *worst;
  if (!(min_curvature_ > floor)) {
    const auto j = static_cast<std::size_t>(worst - kappa.values().begin());
    throw InvalidBody(curvature_message("grid support", min_curvature_, samples_.node(j), floor));
  }

  refinement_residual_ = half_grid_residual(samples_);
  quadrature_ = quadrature.value_or(converged() ? GridQuadrature::Spectral
                                                : GridQuadrature::Circumscribed);

  if (quadrature_ == GridQuadrature::Spectral) {
    const PeriodicGrid p2 = spectral_derivative(samples_, 2);
    for (std::size_t j = 0; j < samples_.size(); ++j) {
      const double rho = samples_[j] + p2[j];
      if (!(rho > floor)) {
        throw InvalidBody(curvature_message("grid support (spectral)", rho, samples_.node(j), floor));
      }
    }
  }
}

double GridSupport::eval(double theta) const { return coefficients_.eval(theta); }

double GridSupport::area() const {
  return quadrature_ == GridQuadrature::Spectral ? spectral_area(samples_)
                                                 : circumscribed_area(samples_);
}

double GridSupport::perimeter() const {
  return quadrature_ == GridQuadrature::Spectral ? trapezoid_integrate(samples_)
                                                 : circumscribed_perimeter(samples_);
}

double eval(const SupportBody& body, double theta) {
  return std::visit([theta](const auto& b) { return b.eval(theta); }, body);
}

double area(const SupportBody& body) {
  return std::visit([](const auto& b) { return b.area(); }, body);
}

double perimeter(const SupportBody& body) {
  return std::visit([](const auto& b) { return b.perimeter(); }, body);
}

IsoperimetricSummary summary(const SupportBody& body) {
  return IsoperimetricSummary::from(area(body), perimeter(body));
}

double fourier_deficit(const FourierSupport& body) {
  double sum = 0.0;
  const auto& s = body.series();
  for (std::size_t i = 1; i < s.degree(); ++i) {
    const double k = static_cast<double>(i + 1);
    sum += (k * k - 1.0) * (s.cos[i] * s.cos[i] + s.sin[i] * s.sin[i]);
  }
  return 2.0 * kPi * kPi * sum;
}

FourierSupport offset(const FourierSupport& body, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("offset radius must be >= 0");
  TrigSeries s = body.series();
  s.a0 += r;
  return FourierSupport(std::move(s));
}

GridSupport offset(const GridSupport& body, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("offset radius must be >= 0");
  std::vector<double> v(body.samples().values().begin(), body.samples().values().end());
  for (double& x : v) x += r;
  return GridSupport(PeriodicGrid(std::move(v)), body.quadrature());
}

SupportBody offset(const SupportBody& body, double r) {
  return std::visit([r](const auto& b) -> SupportBody { return offset(b, r); }, body);
}

GridSupport from_polygon_rounded(const ConvexPolygon& polygon, double r, std::size_t n) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw InvalidArgument("rounding radius must be > 0; the bare polygon has no positive curvature");
  }
  return GridSupport(PeriodicGrid::sample(n, [&](double t) { return polygon.support(t) + r; }));
}

}  // namespace isoflow
