#include "isoflow/numerics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

// FFTW planning is not thread-safe; plans are created once per size under a
// lock and executed through the new-array interface afterwards.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.backward);
    }
  }

  PlanPair get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<double> real(n);
    std::vector<std::complex<double>> spec(n / 2 + 1);
    const int size = static_cast<int>(n);
    auto* spec_ptr = reinterpret_cast<fftw_complex*>(spec.data());
    PlanPair plans;
    plans.forward = fftw_plan_dft_r2c_1d(size, real.data(), spec_ptr,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.backward = fftw_plan_dft_c2r_1d(size, spec_ptr, real.data(),
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(n, plans);
    return plans;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

std::vector<std::complex<double>> forward_dft(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<double> in(values.begin(), values.end());
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_execute_dft_r2c(plan_cache().get(n).forward, in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

// c2r destroys its input, so the spectrum is taken by value.
std::vector<double> inverse_dft(std::vector<std::complex<double>> spectrum, std::size_t n) {
  std::vector<double> out(n);
  fftw_execute_dft_c2r(plan_cache().get(n).backward,
                       reinterpret_cast<fftw_complex*>(spectrum.data()), out.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
  return out;
}

void validate_grid_size(std::size_t n) {
  if (n < 8 || n % 2 != 0) {
    throw InvalidArgument("periodic grid needs an even sample count >= 8, got " +
                          std::to_string(n));
  }
}

}  // namespace

PeriodicGrid::PeriodicGrid(std::vector<double> values) : values_(std::move(values)) {
  validate_grid_size(values_.size());
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j])) {
      throw InvalidArgument("periodic grid sample " + std::to_string(j) + " is not finite");
    }
  }
}

PeriodicGrid PeriodicGrid::sample(std::size_t n, const std::function<double(double)>& f) {
  validate_grid_size(n);
  std::vector<double> values(n);
  const double h = kTwoPi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) values[j] = f(h * static_cast<double>(j));
  return PeriodicGrid(std::move(values));
}

double PeriodicGrid::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double PeriodicGrid::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

TrigSeries::TrigSeries(double a0_, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
    : a0(a0_), cos(std::move(cos_coeffs)), sin(std::move(sin_coeffs)) {
  const std::size_t n = std::max(cos.size(), sin.size());
  cos.resize(n, 0.0);
  sin.resize(n, 0.0);
}

double TrigSeries::eval(double theta) const { return eval_derivative(theta, 0); }

double TrigSeries::eval_derivative(double theta, int order) const {
  double sum = order == 0 ? a0 : 0.0;
  for (std::size_t i = 0; i < cos.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    const double c = std::cos(k * theta);
    const double s = std::sin(k * theta);
    // d^m/dtheta^m of (a cos + b sin) cycles through (a, b) rotations.
    double a = cos[i];
    double b = sin[i];
    for (int m = 0; m < order; ++m) {
      const double na = k * b;
      const double nb = -k * a;
      a = na;
      b = nb;
    }
    sum += a * c + b * s;
  }
  return sum;
}

PeriodicGrid TrigSeries::sample(std::size_t n, int order) const {
  validate_grid_size(n);
  if (order < 0) throw InvalidArgument("derivative order must be >= 0");
  if (degree() >= n / 2) {
    return PeriodicGrid::sample(n, [this, order](double t) { return eval_derivative(t, order); });
  }
  const double dn = static_cast<double>(n);
  std::vector<std::complex<double>> spec(n / 2 + 1, 0.0);
  spec[0] = order == 0 ? a0 * dn : 0.0;
  for (std::size_t i = 0; i < degree(); ++i) {
    const double k = static_cast<double>(i + 1);
    spec[i + 1] = std::complex<double>(cos[i], -sin[i]) * (0.5 * dn) *
                  std::pow(std::complex<double>(0.0, k), order);
  }
  return PeriodicGrid(inverse_dft(std::move(spec), n));
}

double TrigSeries::weighted_energy(std::size_t from_mode, int power) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < cos.size(); ++i) {
    const std::size_t k = i + 1;
    if (k < from_mode) continue;
    sum += std::pow(static_cast<double>(k), power) * (cos[i] * cos[i] + sin[i] * sin[i]);
  }
  return sum;
}

TrigSeries operator+(const TrigSeries& a, const TrigSeries& b) {
  const std::size_t n = std::max(a.degree(), b.degree());
  std::vector<double> c(n, 0.0), s(n, 0.0);
  for (std::size_t i = 0; i < a.degree(); ++i) {
    c[i] += a.cos[i];
    s[i] += a.sin[i];
  }
  for (std::size_t i = 0; i < b.degree(); ++i) {
    c[i] += b.cos[i];
    s[i] += b.sin[i];
  }
  return TrigSeries(a.a0 + b.a0, std::move(c), std::move(s));
}

TrigSeries operator*(double s, const TrigSeries& a) {
  TrigSeries out = a;
  out.a0 *= s;
  for (double& v : out.cos) v *= s;
  for (double& v : out.sin) v *= s;
  return out;
}

double trapezoid_integrate(const PeriodicGrid& g) {
  CompensatedSum sum;
  for (double v : g.values()) sum.add(v);
  return g.spacing() * sum.value();
}

PeriodicGrid spectral_derivative(const PeriodicGrid& g, int order) {
  if (order < 1) throw InvalidArgument("derivative order must be >= 1");
  const std::size_t n = g.size();
  auto spec = forward_dft(g.values());
  const std::size_t nyquist = n / 2;
  for (std::size_t k = 0; k <= nyquist; ++k) {
    if (k == nyquist && order % 2 == 1) {
      spec[k] = 0.0;
      continue;
    }
    spec[k] *= std::pow(std::complex<double>(0.0, static_cast<double>(k)), order);
  }
  return PeriodicGrid(inverse_dft(std::move(spec), n));
}

TrigSeries trig_coefficients(const PeriodicGrid& g) {
  const std::size_t n = g.size();
  const auto spec = forward_dft(g.values());
  const double inv_n = 1.0 / static_cast<double>(n);
  const std::size_t nyquist = n / 2;
  std::vector<double> c(nyquist), s(nyquist);
  for (std::size_t k = 1; k < nyquist; ++k) {
    c[k - 1] = 2.0 * spec[k].real() * inv_n;
    s[k - 1] = -2.0 * spec[k].imag() * inv_n;
  }
  c[nyquist - 1] = spec[nyquist].real() * inv_n;
  s[nyquist - 1] = 0.0;
  return TrigSeries(spec[0].real() * inv_n, std::move(c), std::move(s));
}

double trig_interpolate(const PeriodicGrid& g, double theta) {
  return trig_coefficients(g).eval(theta);
}

PeriodicGrid subsample(const PeriodicGrid& g) {
  std::vector<double> half(g.size() / 2);
  for (std::size_t j = 0; j < half.size(); ++j) half[j] = g[2 * j];
  return PeriodicGrid(std::move(half));
}

RefinementCheck check_derivative_refinement(const std::function<double(double)>& f,
                                            std::size_t n, int order, double tolerance) {
  const PeriodicGrid coarse = spectral_derivative(PeriodicGrid::sample(n, f), order);
  const PeriodicGrid fine = spectral_derivative(PeriodicGrid::sample(2 * n, f), order);
  double diff = 0.0;
  for (std::size_t j = 0; j < n; ++j) diff = std::max(diff, std::abs(coarse[j] - fine[2 * j]));
  RefinementCheck check;
  check.residual = diff / std::max(1.0, fine.max_abs());
  check.converged = check.residual <= tolerance;
  return check;
}

double central_diff(const std::function<double(double)>& f, double t0, double h, int order) {
  if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  if (order != 1 && order != 2) throw InvalidArgument("central_diff supports order 1 or 2");
  double v[5];
  for (int i = 0; i < 5; ++i) {
    const double t = t0 + static_cast<double>(i - 2) * h;
    try {
      v[i] = f(t);
    } catch (const std::exception& e) {
      throw InvalidArgument("evaluation failed inside stencil at t=" + std::to_string(t) +
                            ": " + e.what());
    }
    if (!std::isfinite(v[i])) {
      throw InvalidArgument("non-finite value inside stencil at t=" + std::to_string(t));
    }
  }
  if (order == 1) return (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h);
  return (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h);
}

QuadraticRoots quadratic_roots(double a, double b, double c) {
  if (a == 0.0) throw InvalidArgument("quadratic_roots: leading coefficient is zero");
  QuadraticRoots roots;
  roots.discriminant = b * b - 4.0 * a * c;
  if (roots.discriminant < 0.0) {
    const double re = -b / (2.0 * a);
    const double im = std::sqrt(-roots.discriminant) / (2.0 * std::abs(a));
    roots.first = {re, -im};
    roots.second = {re, im};
    return roots;
  }
  // Cancellation-free form: q = -(b + sign(b) sqrt(D)) / 2.
  const double sq = std::sqrt(roots.discriminant);
  const double q = -0.5 * (b + std::copysign(sq, b));
  double r1, r2;
  if (q == 0.0) {
    r1 = r2 = 0.0;
  } else {
    r1 = q / a;
    r2 = c / q;
  }
  if (r1 > r2) std::swap(r1, r2);
  roots.first = r1;
  roots.second = r2;
  return roots;
}

}  // namespace isoflow
