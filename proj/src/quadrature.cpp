#include "qct/quadrature.hpp"

#include <cmath>
#include <string>

#include "qct/errors.hpp"

namespace qct {

std::vector<double> UniformGrid::nodes() const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (*this)[i];
  return out;
}

void validate(const SpatialGrid& grid) {
  if (!(grid.x_min < grid.x_max)) throw DomainError("spatial grid needs x_min < x_max");
  if (grid.n_points < 64) throw DomainError("spatial grid needs at least 64 points");
}

std::vector<double> quadrature_weights(std::size_t n, double h) {
  if (n < 3) throw DomainError("quadrature needs at least 3 samples, got " + std::to_string(n));
  std::vector<double> w(n);
  if (n % 2 == 1) {
    for (std::size_t i = 0; i < n; ++i) w[i] = (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
    w.front() = w.back() = h / 3.0;
  } else {
    for (auto& wi : w) wi = h;
    w.front() = w.back() = 0.5 * h;
  }
  return w;
}

namespace {

template <class T>
T integrate_impl(std::span<const T> f, double h) {
  const std::vector<double> w = quadrature_weights(f.size(), h);
  CompensatedSum<T> sum;
  for (std::size_t i = 0; i < f.size(); ++i) sum.add(w[i] * f[i]);
  return sum.value();
}

}  // namespace

double integrate_uniform(std::span<const double> f, double h) { return integrate_impl(f, h); }

Complex integrate_uniform(std::span<const Complex> f, double h) { return integrate_impl(f, h); }

double quad_integrate(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 3) throw DomainError("quadrature needs at least 3 samples");
  const double h = (samples.back().first - samples.front().first) /
                   static_cast<double>(samples.size() - 1);
  if (!(h > 0.0)) throw DomainError("quadrature abscissae must be increasing");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double step = samples[i].first - samples[i - 1].first;
    if (std::abs(step - h) > 1e-9 * std::abs(h)) {
      throw DomainError("quadrature abscissae must be uniformly spaced");
    }
  }
  std::vector<double> f(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) f[i] = samples[i].second;
  return integrate_uniform(f, h);
}

}  // namespace qct
