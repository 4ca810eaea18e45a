#include "isoflow/variational.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

constexpr double kDiskTolerance = 1e-10;
constexpr double kFirstVariationTolerance = 1e-6;
constexpr double kSecondVariationTolerance = 1e-5;
constexpr double kZeroMeanTolerance = 1e-10;
constexpr double kCertificateSlack = 1e-10;
constexpr double kCertificateResidual = 1e-8;
constexpr double kProfileTolerance = 1e-6;

enum class Rule { Fourier, Spectral, Circumscribed };

Rule rule_of(const SupportBody& body) {
  if (const auto* g = std::get_if<GridSupport>(&body)) {
    return g->quadrature() == GridQuadrature::Spectral ? Rule::Spectral : Rule::Circumscribed;
  }
  return Rule::Fourier;
}

std::size_t sup_grid_size(std::size_t degree) {
  std::size_t m = std::max<std::size_t>(512, 8 * (2 * degree + 1));
  return m + (m % 2);
}

PeriodicGrid to_grid(const SupportField& f) {
  if (const auto* s = std::get_if<TrigSeries>(&f)) return s->sample(sup_grid_size(s->degree()));
  return std::get<PeriodicGrid>(f);
}

SupportField combine(double a, const SupportField& f, double b, const SupportField& g) {
  if (f.index() != g.index()) throw InvalidArgument("support fields have different representations");
  if (const auto* fs = std::get_if<TrigSeries>(&f)) {
    return a * *fs + b * std::get<TrigSeries>(g);
  }
  const auto& fg = std::get<PeriodicGrid>(f);
  const auto& gg = std::get<PeriodicGrid>(g);
  if (fg.size() != gg.size()) throw InvalidArgument("support fields have different grid sizes");
  std::vector<double> v(fg.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a * fg[j] + b * gg[j];
  return PeriodicGrid(std::move(v));
}

SupportField scaled(double a, const SupportField& f) {
  if (const auto* fs = std::get_if<TrigSeries>(&f)) return a * *fs;
  const auto& fg = std::get<PeriodicGrid>(f);
  std::vector<double> v(fg.values().begin(), fg.values().end());
  for (double& x : v) x *= a;
  return PeriodicGrid(std::move(v));
}

SupportField plus_constant(const SupportField& f, double c) {
  if (const auto* fs = std::get_if<TrigSeries>(&f)) {
    TrigSeries out = *fs;
    out.a0 += c;
    return out;
  }
  const auto& fg = std::get<PeriodicGrid>(f);
  std::vector<double> v(fg.values().begin(), fg.values().end());
  for (double& x : v) x += c;
  return PeriodicGrid(std::move(v));
}

double integral(Rule rule, const SupportField& f) {
  switch (rule) {
    case Rule::Fourier:
      return kTwoPi * std::get<TrigSeries>(f).a0;
    case Rule::Spectral:
      return trapezoid_integrate(std::get<PeriodicGrid>(f));
    case Rule::Circumscribed:
      return circumscribed_perimeter(std::get<PeriodicGrid>(f));
  }
  return 0.0;
}

// Symmetric form with cross(p, p) = 2 * area(p) under each rule:
// int (f g - f' g') dtheta, or its circumscribed-polygon analogue.
double cross_form(Rule rule, const SupportField& f, const SupportField& g) {
  switch (rule) {
    case Rule::Fourier: {
      const auto& a = std::get<TrigSeries>(f);
      const auto& b = std::get<TrigSeries>(g);
      double sum = kTwoPi * a.a0 * b.a0;
      for (std::size_t i = 0; i < std::min(a.degree(), b.degree()); ++i) {
        const double k = static_cast<double>(i + 1);
        sum += kPi * (1.0 - k * k) * (a.cos[i] * b.cos[i] + a.sin[i] * b.sin[i]);
      }
      return sum;
    }
    case Rule::Spectral: {
      const auto& a = std::get<PeriodicGrid>(f);
      const auto& b = std::get<PeriodicGrid>(g);
      const PeriodicGrid da = spectral_derivative(a, 1);
      const PeriodicGrid db = spectral_derivative(b, 1);
      CompensatedSum sum;
      for (std::size_t j = 0; j < a.size(); ++j) sum.add(a[j] * b[j] - da[j] * db[j]);
      return a.spacing() * sum.value();
    }
    case Rule::Circumscribed:
      return circumscribed_cross(std::get<PeriodicGrid>(f), std::get<PeriodicGrid>(g));
  }
  return 0.0;
}

std::array<double, 2> first_harmonic(const SupportField& f) {
  if (const auto* s = std::get_if<TrigSeries>(&f)) {
    if (s->degree() == 0) return {0.0, 0.0};
    return {s->cos[0], s->sin[0]};
  }
  const TrigSeries c = trig_coefficients(std::get<PeriodicGrid>(f));
  return {c.cos[0], c.sin[0]};
}

double sup_norm(const SupportField& f) { return to_grid(f).max_abs(); }

// Sup-norm distance from span{1, cos, sin}.
double rigid_distance(const SupportField& f) {
  if (const auto* s = std::get_if<TrigSeries>(&f)) {
    TrigSeries rest = *s;
    rest.a0 = 0.0;
    if (rest.degree() > 0) rest.cos[0] = rest.sin[0] = 0.0;
    return sup_norm(rest);
  }
  const auto& g = std::get<PeriodicGrid>(f);
  const TrigSeries c = trig_coefficients(g);
  double worst = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double t = g.node(j);
    const double rigid = c.a0 + c.cos[0] * std::cos(t) + c.sin[0] * std::sin(t);
    worst = std::max(worst, std::abs(g[j] - rigid));
  }
  return worst;
}

SupportBody make_body(const SupportField& f, Rule rule) {
  if (rule == Rule::Fourier) return FourierSupport(std::get<TrigSeries>(f));
  return GridSupport(std::get<PeriodicGrid>(f), rule == Rule::Spectral ? GridQuadrature::Spectral
                                                                       : GridQuadrature::Circumscribed);
}

double ratio_of(const SupportBody& body) { return summary(body).ratio; }

struct RatioDerivatives {
  double first = 0.0;
  double second = 0.0;
};

// Derivatives of l^2 / (4 pi A) from those of l and A.
RatioDerivatives quotient_rule(double l0, double l1, double l2, double A0, double A1, double A2) {
  const double N = l0 * l0, N1 = 2.0 * l0 * l1, N2 = 2.0 * l1 * l1 + 2.0 * l0 * l2;
  const double D = 4.0 * kPi * A0, D1 = 4.0 * kPi * A1, D2 = 4.0 * kPi * A2;
  RatioDerivatives r;
  r.first = (N1 * D - N * D1) / (D * D);
  r.second = N2 / D - 2.0 * N1 * D1 / (D * D) - N * D2 / (D * D) + 2.0 * N * D1 * D1 / (D * D * D);
  return r;
}

// Radius of the disk p(., 0), or a throw if the family does not start at one.
double starting_disk_radius(const SupportBody& body0) {
  const SupportField f = field_of(body0);
  double radius = 0.0;
  double deviation = 0.0;
  if (const auto* s = std::get_if<TrigSeries>(&f)) {
    radius = s->a0;
    for (std::size_t i = 0; i < s->degree(); ++i) {
      deviation = std::max({deviation, std::abs(s->cos[i]), std::abs(s->sin[i])});
    }
  } else {
    const auto& g = std::get<PeriodicGrid>(f);
    radius = g.mean();
    for (double v : g.values()) deviation = std::max(deviation, std::abs(v - radius));
  }
  if (!(radius > 0.0) || deviation > kDiskTolerance * radius) {
    std::ostringstream os;
    os << "variation does not start at a disk: deviation " << deviation << " from radius " << radius;
    throw InvalidArgument(os.str());
  }
  return radius;
}

}  // namespace

SupportField field_of(const SupportBody& body) {
  if (const auto* f = std::get_if<FourierSupport>(&body)) return f->series();
  return std::get<GridSupport>(body).samples();
}

VariationFamily build_neighborhood_variation(const SupportBody& body) {
  const IsoperimetricSummary s = summary(body);
  const double A = s.area;
  const double l = s.perimeter;
  const SupportField q = field_of(body);
  const Rule rule = rule_of(body);
  const double rho = std::sqrt(A / kPi);

  VariationFamily family;
  family.description = std::holds_alternative<FourierSupport>(body)
                           ? "neighborhood flow of fourier body"
                           : "neighborhood flow of grid body";
  family.support_at = [q, rule, A, l](double t) -> SupportBody {
    const double g = A * t * t + l * t + kPi;
    if (!(g > 0.0)) throw DomainError("neighborhood variation evaluated outside its domain");
    const double scale = std::sqrt(A / g);
    return make_body(plus_constant(scaled(scale * t, q), scale), rule);
  };
  // d/dt at 0: rho (q - l / 2pi);  d2/dt2 at 0: rho (3 l^2 / 4pi^2 - A/pi - (l/pi) q).
  family.dt1 = plus_constant(scaled(rho, q), -rho * l / kTwoPi);
  family.dt2 = plus_constant(scaled(-rho * l / kPi, q),
                             rho * (3.0 * l * l / (4.0 * kPi * kPi) - A / kPi));
  return family;
}

VariationFamily build_translation_variation(double a0, double a1) {
  if (a0 == 0.0 && a1 == 0.0) throw InvalidArgument("translation direction must be nonzero");
  if (!std::isfinite(a0) || !std::isfinite(a1)) throw InvalidArgument("translation must be finite");
  VariationFamily family;
  std::ostringstream os;
  os << "translation (" << a0 << ", " << a1 << ")";
  family.description = os.str();
  family.support_at = [a0, a1](double t) -> SupportBody {
    return FourierSupport(1.0, {t * a0}, {t * a1});
  };
  family.dt1 = TrigSeries(0.0, {a0}, {a1});
  family.dt2 = TrigSeries(0.0, {0.0}, {0.0});
  return family;
}

VariationFamily build_scaling_variation(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("scaling rate must be positive");
  VariationFamily family;
  std::ostringstream os;
  os << "scaling " << c;
  family.description = os.str();
  family.support_at = [c](double t) -> SupportBody {
    return FourierSupport(1.0 + t * c, {}, {});
  };
  family.dt1 = TrigSeries(c, {}, {});
  family.dt2 = TrigSeries(0.0, {}, {});
  return family;
}

double unit_disk_second_variation(double l1, double l2, double A1, double A2) {
  const double d = 2.0 * A1 - l1;
  return (d * d + kTwoPi * (l2 - A2)) / (2.0 * kPi * kPi);
}

VariationDerivatives variation_derivatives(const VariationFamily& family, double h) {
  if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  const SupportBody body0 = family.support_at(0.0);
  const Rule rule = rule_of(body0);
  const double radius = starting_disk_radius(body0);

  SupportField stencil[4];
  const double offsets[4] = {-2.0, -1.0, 1.0, 2.0};
  for (int i = 0; i < 4; ++i) {
    try {
      stencil[i] = field_of(family.support_at(offsets[i] * h));
    } catch (const Error& e) {
      throw InvalidArgument(std::string("variation stencil evaluation failed: ") + e.what());
    }
  }
  const SupportField f0 = field_of(body0);
  // Fourth-order central differences applied to the whole field.
  const SupportField fd1 = scaled(
      1.0 / (12.0 * h),
      combine(1.0, combine(1.0, stencil[0], -8.0, stencil[1]), 1.0,
              combine(8.0, stencil[2], -1.0, stencil[3])));
  const SupportField fd2 = scaled(
      1.0 / (12.0 * h * h),
      combine(1.0,
              combine(-1.0, stencil[0], 16.0, stencil[1]), 1.0,
              combine(1.0, combine(-30.0, f0, 16.0, stencil[2]), -1.0, stencil[3])));

  VariationDerivatives d;
  d.disk_radius = radius;
  SupportField dt1 = family.dt1.value_or(fd1);
  SupportField dt2 = family.dt2.value_or(fd2);
  if (family.dt1 && family.dt2) {
    d.field_residual = std::max(sup_norm(combine(1.0, dt1, -1.0, fd1)),
                                sup_norm(combine(1.0, dt2, -1.0, fd2)));
  }

  // Rescale to the unit disk; the ratio is scale-invariant.
  const SupportField p0 = scaled(1.0 / radius, f0);
  dt1 = scaled(1.0 / radius, dt1);
  dt2 = scaled(1.0 / radius, dt2);

  const double l0 = integral(rule, p0);
  const double A0 = 0.5 * cross_form(rule, p0, p0);
  d.l1 = integral(rule, dt1);
  d.l2 = integral(rule, dt2);
  d.A1 = cross_form(rule, p0, dt1);
  d.A2 = cross_form(rule, dt1, dt1) + cross_form(rule, p0, dt2);
  const RatioDerivatives ratio = quotient_rule(l0, d.l1, d.l2, A0, d.A1, d.A2);
  d.I1 = ratio.first;
  d.I2 = ratio.second;
  d.rigid_residual = rigid_distance(dt1);

  const auto direct = [&family](double t) { return ratio_of(family.support_at(t)); };
  d.I1_direct = central_diff(direct, 0.0, h, 1);
  d.I2_direct = central_diff(direct, 0.0, h, 2);

  const double e1 = std::abs(d.I1 - d.I1_direct);
  const double e2 = std::abs(d.I2 - d.I2_direct);
  if (e1 > kFirstVariationTolerance ||
      e2 > kSecondVariationTolerance * std::max(1.0, std::abs(d.I2))) {
    std::ostringstream os;
    os.precision(17);
    os << family.description << ": assembled and direct variations disagree (I1 " << d.I1
       << " vs " << d.I1_direct << ", I2 " << d.I2 << " vs " << d.I2_direct << ")";
    throw ConsistencyError(os.str());
  }
  return d;
}

std::string to_json(const VariationDerivatives& d, std::optional<double> source_deficit) {
  nlohmann::ordered_json j;
  j["l1"] = d.l1;
  j["l2"] = d.l2;
  j["A1"] = d.A1;
  j["A2"] = d.A2;
  j["I1"] = d.I1;
  j["I2"] = d.I2;
  j["I1_direct"] = d.I1_direct;
  j["I2_direct"] = d.I2_direct;
  j["disk_radius"] = d.disk_radius;
  j["field_residual"] = d.field_residual;
  j["rigid_residual"] = d.rigid_residual;
  if (source_deficit) {
    j["source_deficit"] = *source_deficit;
    j["identity_residual"] = std::abs(2.0 * kPi * kPi * d.I2 - *source_deficit);
  }
  return j.dump(2);
}

namespace {

void require_zero_mean(double mean_integral) {
  if (std::abs(mean_integral) > kZeroMeanTolerance) {
    std::ostringstream os;
    os << "wirtinger_check needs a zero-mean function; integral is " << mean_integral;
    throw InvalidArgument(os.str());
  }
}

void check_certificate(const WirtingerReport& r) {
  if (r.certificate && r.certificate_residual > kCertificateResidual) {
    std::ostringstream os;
    os << "equality certificate residual " << r.certificate_residual << " exceeds "
       << kCertificateResidual;
    throw ConsistencyError(os.str());
  }
}

}  // namespace

WirtingerReport wirtinger_check(const TrigSeries& phi) {
  require_zero_mean(kTwoPi * phi.a0);
  WirtingerReport r;
  r.lhs = kPi * phi.weighted_energy(1, 2);
  r.rhs = kPi * phi.weighted_energy(1, 0);
  r.slack = r.lhs - r.rhs;
  if (r.slack <= kCertificateSlack) {
    const auto c = first_harmonic(phi);
    r.certificate = c;
    r.certificate_residual = kPi * phi.weighted_energy(2, 0);
  }
  check_certificate(r);
  return r;
}

WirtingerReport wirtinger_check(const PeriodicGrid& phi) {
  require_zero_mean(trapezoid_integrate(phi));
  const PeriodicGrid dphi = spectral_derivative(phi, 1);
  WirtingerReport r;
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    lhs += dphi[j] * dphi[j];
    rhs += phi[j] * phi[j];
  }
  r.lhs = phi.spacing() * lhs;
  r.rhs = phi.spacing() * rhs;
  r.slack = r.lhs - r.rhs;
  if (r.slack <= kCertificateSlack) {
    const auto c = first_harmonic(phi);
    r.certificate = c;
    double res = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j) {
      const double t = phi.node(j);
      const double e = phi[j] - c[0] * std::cos(t) - c[1] * std::sin(t);
      res += e * e;
    }
    r.certificate_residual = phi.spacing() * res;
  }
  check_certificate(r);
  return r;
}

double wirtinger_slack_closed_form(const TrigSeries& phi) {
  double sum = 0.0;
  for (std::size_t i = 0; i < phi.degree(); ++i) {
    const double k = static_cast<double>(i + 1);
    sum += (k * k - 1.0) * (phi.cos[i] * phi.cos[i] + phi.sin[i] * phi.sin[i]);
  }
  return kPi * sum;
}

std::string to_json(const WirtingerReport& r) {
  nlohmann::ordered_json j;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  if (r.certificate) {
    j["equality_certificate"] = {(*r.certificate)[0], (*r.certificate)[1]};
    j["certificate_residual"] = r.certificate_residual;
  } else {
    j["equality_certificate"] = nullptr;
  }
  return j.dump(2);
}

DiskRecovery recover_disk_center(const SupportBody& body, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  const IsoperimetricSummary s = summary(body);
  DiskRecovery out;
  out.deficit = s.deficit;
  if (std::abs(s.deficit) > tol * s.perimeter * s.perimeter) return out;

  const Rule rule = rule_of(body);
  const double rho = std::sqrt(s.area / kPi);
  // Body rescaled to area pi; its perimeter is then 2 pi up to the deficit.
  const SupportField q = scaled(1.0 / rho, field_of(body));
  const double l = s.perimeter / rho;

  const double samples[4] = {0.0, 0.5, 1.0, 2.0};
  double c0[4], c1[4];
  for (int k = 0; k < 4; ++k) {
    const double t = samples[k];
    // p(theta, t) = s(t) (q t + 1) with s = sqrt(pi / g), g = pi t^2 + l t + pi.
    const double g = kPi * t * t + l * t + kPi;
    const double g1 = kTwoPi * t + l;
    const double g2 = kTwoPi;
    const double sp = std::sqrt(kPi);
    const double s0 = sp / std::sqrt(g);
    const double s1 = -0.5 * sp * std::pow(g, -1.5) * g1;
    const double s2 = 0.75 * sp * std::pow(g, -2.5) * g1 * g1 - 0.5 * sp * std::pow(g, -1.5) * g2;
    const SupportField qt1 = plus_constant(scaled(t, q), 1.0);
    const SupportField dp = combine(s1, qt1, s0, q);
    const SupportField ddp = combine(s2, qt1, 2.0 * s1, q);

    const double l_prime = integral(rule, dp);
    const double l_second = integral(rule, ddp);
    // With l'' = 0 the second area derivative reduces to int (p_t^2 - p_t_theta^2).
    const double a_second = cross_form(rule, dp, dp);
    if (std::abs(l_prime) > kProfileTolerance || std::abs(l_second) > kProfileTolerance ||
        std::abs(a_second) > kProfileTolerance) {
      std::ostringstream os;
      os << "zero-deficit body fails the neighborhood-flow identities at t=" << t << " (l'=" << l_prime
         << ", l''=" << l_second << ", A''=" << a_second << ")";
      throw ConsistencyError(os.str());
    }
    const auto harmonic = first_harmonic(dp);
    c0[k] = harmonic[0];
    c1[k] = harmonic[1];
  }

  // Least-squares fit c_i(t) = d_i w(t), w = (t + 1)^-2.
  double ww = 0.0, w0 = 0.0, w1 = 0.0, cc = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double w = 1.0 / ((samples[k] + 1.0) * (samples[k] + 1.0));
    ww += w * w;
    w0 += w * c0[k];
    w1 += w * c1[k];
    cc += c0[k] * c0[k] + c1[k] * c1[k];
  }
  const double d0 = w0 / ww;
  const double d1 = w1 / ww;
  double res = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double w = 1.0 / ((samples[k] + 1.0) * (samples[k] + 1.0));
    res += (c0[k] - d0 * w) * (c0[k] - d0 * w) + (c1[k] - d1 * w) * (c1[k] - d1 * w);
  }
  out.profile_residual = std::sqrt(res) / std::max(1.0, std::sqrt(cc));
  if (out.profile_residual > kProfileTolerance) {
    std::ostringstream os;
    os << "first-harmonic profile is not (t+1)^-2: relative residual " << out.profile_residual;
    throw ConsistencyError(os.str());
  }
  out.accepted = true;
  out.radius = rho;
  out.center = {rho * d0, rho * d1};
  return out;
}

std::string to_json(const DiskRecovery& r) {
  nlohmann::ordered_json j;
  if (r.accepted) {
    j["center"] = {r.center.x, r.center.y};
    j["radius"] = r.radius;
    j["deficit"] = r.deficit;
    j["profile_residual"] = r.profile_residual;
  } else {
    j["rejected"] = true;
    j["deficit"] = r.deficit;
  }
  return j.dump(2);
}

}  // namespace isoflow
