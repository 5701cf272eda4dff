#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "qct/ensemble.hpp"
#include "qct/packets.hpp"

namespace qct::testing {

// m = 1, hbar = 1, p0b = -p0a = 2, sigma0 = 1, x0a = -5, x0b = -15.
inline GaussianPacket packet_a() { return {1.0, -5.0, -2.0, 1.0}; }
inline GaussianPacket packet_b() { return {1.0, -15.0, 2.0, 1.0}; }

inline EnsembleSpec reference_spec(EnsembleKind kind) {
  return {kind, packet_a(), packet_b(), Boundary::hard_wall};
}

inline Ensemble reference_ensemble(EnsembleKind kind, double epsilon) {
  return Ensemble(reference_spec(kind), Regime(epsilon, 1.0));
}

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

// Plain midpoint-free Riemann sum on a fine grid. Exponentially accurate for
// the smooth, rapidly decaying integrands used here; independent of the
// library quadrature.
inline double riemann(const std::function<double(double)>& f, double lo, double hi, double h) {
  const auto n = static_cast<long>(std::ceil((hi - lo) / h));
  const double step = (hi - lo) / static_cast<double>(n);
  double sum = 0.5 * (f(lo) + f(hi));
  for (long i = 1; i < n; ++i) sum += f(lo + static_cast<double>(i) * step);
  return sum * step;
}

inline std::complex<double> riemann_c(const std::function<std::complex<double>(double)>& f,
                                      double lo, double hi, double h) {
  const auto n = static_cast<long>(std::ceil((hi - lo) / h));
  const double step = (hi - lo) / static_cast<double>(n);
  std::complex<double> sum = 0.5 * (f(lo) + f(hi));
  for (long i = 1; i < n; ++i) sum += f(lo + static_cast<double>(i) * step);
  return sum * step;
}

}  // namespace qct::testing
