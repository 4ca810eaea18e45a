#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace isoflow {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Default sample count for periodic grids.
inline constexpr std::size_t kDefaultGridSize = 256;
/// Relative change allowed between a grid and its refinement.
inline constexpr double kRefinementTolerance = 1e-8;
/// Default step for finite differences along the flow parameter.
inline constexpr double kFlowStep = 1e-4;

/// Neumaier summation. Long grid sums feed finite differences of the
/// ratio, where plain accumulation error is amplified by 1/h^2.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Samples of a 2pi-periodic function at theta_j = 2 pi j / n.
/// n is even and at least 8; all values are finite.
class PeriodicGrid {
 public:
  explicit PeriodicGrid(std::vector<double> values);

  static PeriodicGrid sample(std::size_t n, const std::function<double(double)>& f);

  std::size_t size() const { return values_.size(); }
  double spacing() const { return kTwoPi / static_cast<double>(values_.size()); }
  double node(std::size_t j) const { return spacing() * static_cast<double>(j); }
  double operator[](std::size_t j) const { return values_[j]; }
  std::span<const double> values() const { return values_; }

  double max_abs() const;
  double mean() const;

 private:
  std::vector<double> values_;
};

/// Truncated trigonometric series a0 + sum_k a_k cos(k theta) + b_k sin(k theta).
/// No validity constraints; cos and sin are stored with equal length.
struct TrigSeries {
  double a0 = 0.0;
  std::vector<double> cos;
  std::vector<double> sin;

  TrigSeries() = default;
  TrigSeries(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  std::size_t degree() const { return cos.size(); }
  double eval(double theta) const;
  /// d^order/dtheta^order of the series at theta.
  double eval_derivative(double theta, int order) const;
  /// Samples of the series (or of its order-th derivative) on an n-point
  /// periodic grid. Modes at or above n/2 are evaluated directly.
  PeriodicGrid sample(std::size_t n, int order = 0) const;

  /// sum over k >= from_mode of k^power (a_k^2 + b_k^2)
  double weighted_energy(std::size_t from_mode, int power) const;
};

TrigSeries operator+(const TrigSeries& a, const TrigSeries& b);
TrigSeries operator*(double s, const TrigSeries& a);

/// (2 pi / n) sum_j g_j. Exact for trigonometric polynomials of degree < n/2.
double trapezoid_integrate(const PeriodicGrid& g);

/// Derivative of the trigonometric interpolant of g, sampled on the same grid.
/// order may be 1 or 2 (or higher); the Nyquist mode is dropped for odd orders.
PeriodicGrid spectral_derivative(const PeriodicGrid& g, int order = 1);

/// Coefficients of the trigonometric interpolant; the Nyquist term is stored
/// as cos[n/2 - 1] with its sin partner set to zero.
TrigSeries trig_coefficients(const PeriodicGrid& g);

/// Value of the trigonometric interpolant at an arbitrary angle.
double trig_interpolate(const PeriodicGrid& g, double theta);

/// Every other sample of g (grid of size n/2).
PeriodicGrid subsample(const PeriodicGrid& g);

struct RefinementCheck {
  double residual = 0.0;
  bool converged = false;
};

/// Compares the spectral derivative of f sampled at n and at 2n on the
/// common nodes. The residual is relative to max(1, |f'|).
RefinementCheck check_derivative_refinement(const std::function<double(double)>& f,
                                            std::size_t n, int order = 1,
                                            double tolerance = kRefinementTolerance);

/// Fourth-order central difference estimate of f' (order 1) or f'' (order 2).
double central_diff(const std::function<double(double)>& f, double t0, double h, int order);

struct QuadraticRoots {
  std::complex<double> first;
  std::complex<double> second;
  double discriminant = 0.0;

  bool real() const { return discriminant >= 0.0; }
};

/// Roots of a t^2 + b t + c. Real roots are sorted ascending.
QuadraticRoots quadratic_roots(double a, double b, double c);

}  // namespace isoflow
