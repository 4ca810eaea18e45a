#include "isoflow/steiner_flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

// Relative slack, against L^2, for treating a discriminant as zero.
constexpr double kRoundingSlack = 1e-12;

void require_positive(double area, double perimeter) {
  if (!(area > 0.0) || !(perimeter > 0.0) || !std::isfinite(area) || !std::isfinite(perimeter)) {
    std::ostringstream os;
    os << "area and perimeter must be positive, got A=" << area << ", L=" << perimeter;
    throw InvalidArgument(os.str());
  }
}

void require_in_domain(double area, double perimeter, double t) {
  require_positive(area, perimeter);
  const double delta = flow_domain_radius(area, perimeter);
  if (!std::isfinite(t) || t <= -delta) {
    std::ostringstream os;
    os << "t=" << t << " is outside the smooth domain (-" << delta << ", inf)";
    throw DomainError(os.str());
  }
}

// Roots of a t^2 + L t + c where the discriminant is L^2 - 4 pi A; a
// negative discriminant within rounding of zero is a double root.
QuadraticRoots deficit_roots(double a, double perimeter, double c) {
  QuadraticRoots roots = quadratic_roots(a, perimeter, c);
  const double scale = perimeter * perimeter;
  if (roots.discriminant < 0.0 && -roots.discriminant <= kRoundingSlack * scale) {
    const double r = -perimeter / (2.0 * a);
    roots.first = r;
    roots.second = r;
    roots.discriminant = 0.0;
  }
  return roots;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SteinerPolynomial::SteinerPolynomial(double area_, double perimeter_)
    : area(area_), perimeter(perimeter_) {
  require_positive(area, perimeter);
}

bool SteinerPolynomial::realizable() const {
  return deficit() >= -kRoundingSlack * perimeter * perimeter;
}

double ratio_of_neighborhood(double area, double perimeter, double r) {
  require_positive(area, perimeter);
  if (!(r >= 0.0)) throw InvalidArgument("neighborhood radius must be >= 0");
  const double num = kTwoPi * r + perimeter;
  return num * num / (4.0 * kPi * (kPi * r * r + perimeter * r + area));
}

double ratio_of_neighborhood_derivative(double area, double perimeter, double r) {
  require_positive(area, perimeter);
  if (!(r >= 0.0)) throw InvalidArgument("neighborhood radius must be >= 0");
  const double q = kPi * r * r + perimeter * r + area;
  return (4.0 * kPi * area - perimeter * perimeter) * (2.0 * kPi * r + perimeter) / (4.0 * kPi * q * q);
}

double flow_domain_radius(double area, double perimeter) {
  require_positive(area, perimeter);
  const QuadraticRoots roots = deficit_roots(area, perimeter, kPi);
  if (!roots.real()) return std::numeric_limits<double>::infinity();
  return std::min(std::abs(roots.first.real()), std::abs(roots.second.real()));
}

double flow_ratio(double area, double perimeter, double t) {
  require_in_domain(area, perimeter, t);
  const double L = perimeter;
  const double num = L * L * t * t + 4.0 * kPi * L * t + 4.0 * kPi * kPi;
  const double den = 4.0 * kPi * area * t * t + 4.0 * kPi * L * t + 4.0 * kPi * kPi;
  return num / den;
}

double flow_ratio_derivative(double area, double perimeter, double t) {
  require_in_domain(area, perimeter, t);
  const double L = perimeter;
  const double q = area * t * t + L * t + kPi;
  return (L * L - 4.0 * kPi * area) * (L * t * t + kTwoPi * t) / (4.0 * kPi * q * q);
}

double flow_ratio_second_derivative(double area, double perimeter, double t) {
  require_in_domain(area, perimeter, t);
  const double L = perimeter;
  const double q = area * t * t + L * t + kPi;
  const double shape = kPi * kPi - 3.0 * kPi * area * t * t - area * L * t * t * t;
  return ((L * L - 4.0 * kPi * area) / kTwoPi) * shape / (q * q * q);
}

QuadraticRoots steiner_roots(const SteinerPolynomial& sp) {
  return deficit_roots(kPi, sp.perimeter, sp.area);
}

QuadraticRoots denominator_roots(double area, double perimeter) {
  require_positive(area, perimeter);
  return deficit_roots(area, perimeter, kPi);
}

RootReport root_report(double area, double perimeter) {
  const SteinerPolynomial sp(area, perimeter);
  RootReport report;
  report.steiner = steiner_roots(sp);
  report.denominator = denominator_roots(area, perimeter);
  report.delta = flow_domain_radius(area, perimeter);
  report.realizable = sp.realizable();
  if (!report.realizable) report.note = "not realizable by a plane domain";
  return report;
}

IsoperimetricSummary summary(const FlowBody& body) {
  return std::visit(
      [](const auto& b) -> IsoperimetricSummary {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, ConvexPolygon>) {
          return isoflow::summary(b);
        } else {
          return IsoperimetricSummary::from(b.area(), b.perimeter());
        }
      },
      body);
}

FlowReport flow_report(const FlowBody& body, double t_max, int steps, double h) {
  if (!(t_max > 0.0)) throw InvalidArgument("t_max must be positive");
  if (steps < 2) throw InvalidArgument("flow_report needs steps >= 2");
  const IsoperimetricSummary s = summary(body);
  if (!SteinerPolynomial::of(s).realizable()) {
    std::ostringstream os;
    os.precision(17);
    os << "body violates L^2 >= 4 pi A: deficit " << s.deficit;
    throw ConsistencyError(os.str());
  }

  FlowReport report;
  report.area = s.area;
  report.perimeter = s.perimeter;
  const double A = s.area;
  const double L = s.perimeter;
  // Keep the stencil at t = 0 inside (-delta, inf).
  const double step = std::min(h, 0.25 * flow_domain_radius(A, L));
  const auto I = [A, L](double t) { return flow_ratio(A, L, t); };
  const auto* polygon = std::get_if<ConvexPolygon>(&body);

  for (int k = 0; k <= steps; ++k) {
    const double t = t_max * static_cast<double>(k) / static_cast<double>(steps);
    report.t_samples.push_back(t);
    report.I_values.push_back(I(t));
    report.I_prime_closed.push_back(flow_ratio_derivative(A, L, t));
    report.I_prime_fd.push_back(central_diff(I, t, step, 1));
    report.I_second_closed.push_back(flow_ratio_second_derivative(A, L, t));
    report.I_second_fd.push_back(central_diff(I, t, step, 2));
    report.max_residual = std::max({report.max_residual,
                                    std::abs(report.I_prime_closed.back() - report.I_prime_fd.back()),
                                    std::abs(report.I_second_closed.back() - report.I_second_fd.back())});
    if (polygon != nullptr && t > 0.0) {
      const double geometric = offset_summary(OffsetBody(*polygon, 1.0 / t)).ratio;
      report.max_geometric_residual =
          std::max(report.max_geometric_residual, std::abs(geometric - report.I_values.back()));
    }
  }
  return report;
}

std::string to_csv(const FlowReport& report) {
  std::string out = "t,I,dI_closed,dI_fd,d2I_closed,d2I_fd\n";
  for (std::size_t i = 0; i < report.t_samples.size(); ++i) {
    out += fmt17(report.t_samples[i]) + ',' + fmt17(report.I_values[i]) + ',' +
           fmt17(report.I_prime_closed[i]) + ',' + fmt17(report.I_prime_fd[i]) + ',' +
           fmt17(report.I_second_closed[i]) + ',' + fmt17(report.I_second_fd[i]) + '\n';
  }
  return out;
}

std::string to_json(const FlowReport& report) {
  nlohmann::ordered_json j;
  j["area"] = report.area;
  j["perimeter"] = report.perimeter;
  j["t"] = report.t_samples;
  j["I"] = report.I_values;
  j["dI_closed"] = report.I_prime_closed;
  j["dI_fd"] = report.I_prime_fd;
  j["d2I_closed"] = report.I_second_closed;
  j["d2I_fd"] = report.I_second_fd;
  j["max_residual"] = report.max_residual;
  j["max_geometric_residual"] = report.max_geometric_residual;
  return j.dump(2);
}

}  // namespace isoflow
