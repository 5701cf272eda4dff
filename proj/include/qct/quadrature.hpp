#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qct/packets.hpp"

namespace qct {

/// Uniform grid of `n` nodes spanning [lo, hi] inclusive.
struct UniformGrid {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t n = 2;

  double spacing() const { return (hi - lo) / static_cast<double>(n - 1); }
  double operator[](std::size_t i) const {
    return i + 1 == n ? hi : lo + static_cast<double>(i) * spacing();
  }
  std::vector<double> nodes() const;

  friend bool operator==(const UniformGrid&, const UniformGrid&) = default;
};

/// Position grid on the half-line [x_min, x_max] with x_max = 0 at the wall.
struct SpatialGrid {
  double x_min = -60.0;
  double x_max = 0.0;
  std::size_t n_points = 2048;

  UniformGrid axis() const { return {x_min, x_max, n_points}; }
  double spacing() const { return axis().spacing(); }
  std::vector<double> nodes() const { return axis().nodes(); }

  friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;
};

/// Throws DomainError unless x_min < x_max and n_points >= 64.
void validate(const SpatialGrid& grid);

/// Neumaier-compensated running sum; order of `add` calls fixes the result.
template <class T>
class CompensatedSum {
 public:
  void add(T value) {
    const T next = sum_ + value;
    compensation_ += error_term(sum_, value, next);
    sum_ = next;
  }
  T value() const { return sum_ + compensation_; }

 private:
  static double neumaier(double a, double b, double s) {
    return (a < 0 ? -a : a) >= (b < 0 ? -b : b) ? (a - s) + b : (b - s) + a;
  }
  static double error_term(double a, double b, double s) { return neumaier(a, b, s); }
  static Complex error_term(Complex a, Complex b, Complex s) {
    return {neumaier(a.real(), b.real(), s.real()), neumaier(a.imag(), b.imag(), s.imag())};
  }

  T sum_{};
  T compensation_{};
};

/// Composite-rule weights for `n` uniform samples at spacing h: Simpson when n
/// is odd, trapezoid otherwise. Throws DomainError for n < 3.
std::vector<double> quadrature_weights(std::size_t n, double h);

double integrate_uniform(std::span<const double> f, double h);
Complex integrate_uniform(std::span<const Complex> f, double h);

/// Integrates tabulated (x, f(x)) pairs; x must be uniformly spaced and increasing.
double quad_integrate(std::span<const std::pair<double, double>> samples);

}  // namespace qct
