#include "qct/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qct/errors.hpp"

namespace qct {

Moments position_moments(const Ensemble& ensemble, double t, const SpatialGrid& grid) {
  const BranchSamples s = sample_branches(ensemble, t, grid);
  const std::size_t n = s.x.size();
  std::vector<double> rho(n, 0.0);
  for (std::size_t k = 0; k < s.count; ++k) {
    for (std::size_t i = 0; i < n; ++i) rho[i] += s.weights[k] * std::norm(s.jets[k][i].value);
  }
  const double h = grid.spacing();
  const double norm = integrate_uniform(rho, h);
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = s.x[i] * rho[i];
  const double mean = integrate_uniform(f, h) / norm;
  for (std::size_t i = 0; i < n; ++i) f[i] = (s.x[i] - mean) * (s.x[i] - mean) * rho[i];
  const double variance = integrate_uniform(f, h) / norm;
  return {mean, std::sqrt(std::max(variance, 0.0))};
}

Moments momentum_moments(const Ensemble& ensemble, double t, const SpatialGrid& grid) {
  const BranchSamples s = sample_branches(ensemble, t, grid);
  const std::size_t n = s.x.size();
  const double hbar = ensemble.regime().hbar_tilde();
  std::vector<double> first(n, 0.0);
  std::vector<double> second(n, 0.0);
  std::vector<double> norm(n, 0.0);
  for (std::size_t k = 0; k < s.count; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const Jet& phi = s.jets[k][i];
      first[i] += s.weights[k] * (std::conj(phi.value) * phi.gradient).imag();
      second[i] += s.weights[k] * std::norm(phi.gradient);
      norm[i] += s.weights[k] * std::norm(phi.value);
    }
  }
  const double h = grid.spacing();
  const double total = integrate_uniform(norm, h);
  const double mean = hbar * integrate_uniform(first, h) / total;
  const double mean_sq = hbar * hbar * integrate_uniform(second, h) / total;
  return {mean, std::sqrt(std::max(mean_sq - mean * mean, 0.0))};
}

double effective_force(const Ensemble& ensemble, double t) {
  if (ensemble.spec().boundary == Boundary::free) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < ensemble.branch_count(); ++k) {
    sum += ensemble.branch_weight(k) * std::norm(ensemble.branch(k, 0.0, t).gradient);
  }
  const double hbar = ensemble.regime().hbar_tilde();
  return -hbar * hbar / (2.0 * ensemble.mass()) * sum;
}

ObservableRecord observe(const Ensemble& ensemble, double t, const SpatialGrid& grid) {
  const Moments x = position_moments(ensemble, t, grid);
  const Moments p = momentum_moments(ensemble, t, grid);
  return {t, x.mean, p.mean, x.sd, p.sd, x.sd * p.sd, effective_force(ensemble, t)};
}

EhrenfestResidual ehrenfest_residual(const Ensemble& ensemble, double t, const SpatialGrid& grid,
                                     double dt_fd) {
  if (!(dt_fd > 0.0)) throw DomainError("finite-difference step must be positive");
  auto mean_x = [&](double s) { return position_moments(ensemble, s, grid).mean; };
  auto mean_p = [&](double s) { return momentum_moments(ensemble, s, grid).mean; };

  double dx_dt = 0.0;
  double dp_dt = 0.0;
  if (t >= dt_fd) {
    dx_dt = (mean_x(t + dt_fd) - mean_x(t - dt_fd)) / (2.0 * dt_fd);
    dp_dt = (mean_p(t + dt_fd) - mean_p(t - dt_fd)) / (2.0 * dt_fd);
  } else {
    dx_dt = (-3.0 * mean_x(t) + 4.0 * mean_x(t + dt_fd) - mean_x(t + 2.0 * dt_fd)) / (2.0 * dt_fd);
    dp_dt = (-3.0 * mean_p(t) + 4.0 * mean_p(t + dt_fd) - mean_p(t + 2.0 * dt_fd)) / (2.0 * dt_fd);
  }
  return {dx_dt - mean_p(t) / ensemble.mass(), dp_dt - effective_force(ensemble, t)};
}

HeisenbergCheck heisenberg_check(const ObservableRecord& record, const Regime& regime) {
  const double margin = record.uncertainty_product - 0.5 * regime.hbar_tilde();
  return {margin >= -1e-9, margin};
}

std::size_t count_local_maxima(std::span<const double> values) {
  std::size_t count = 0;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] > values[i - 1] && values[i] > values[i + 1]) ++count;
  }
  return count;
}

namespace {

// Extremum of the parabola through three equally spaced samples.
double parabolic_extremum(double left, double centre, double right) {
  const double curvature = left - 2.0 * centre + right;
  if (curvature == 0.0) return centre;
  const double offset = 0.5 * (left - right) / curvature;
  return centre - 0.25 * (left - right) * offset;
}

}  // namespace

double fringe_visibility(const Ensemble& ensemble, double t, double x_lo, double x_hi,
                         double resolution) {
  if (!(x_lo < x_hi)) throw DomainError("visibility window needs x_lo < x_hi");
  if (!(resolution >= 0.0)) throw DomainError("detector resolution must be non-negative");

  // Sample finely enough for the shortest fringe and the kernel.
  const double hbar = ensemble.regime().hbar_tilde();
  const double p_max = std::max(std::abs(ensemble.spec().a.p0), std::abs(ensemble.spec().b.p0));
  const double fringe = std::numbers::pi * hbar / std::max(p_max, 1e-300);
  const double h = resolution > 0.0 ? std::min(resolution / 8.0, fringe / 32.0) : fringe / 32.0;
  const double reach = 5.0 * resolution;
  const double lo = x_lo - reach;
  const double hi = x_hi + reach;
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / h)) + 1;
  const UniformGrid fine{lo, hi, n};
  const double step = fine.spacing();

  std::vector<double> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = fine[i];
    raw[i] = (ensemble.spec().boundary == Boundary::hard_wall && x > 0.0)
                 ? 0.0
                 : ensemble.position_density(x, t);
  }

  std::vector<double> smooth;
  if (resolution == 0.0) {
    smooth = raw;
  } else {
    const auto half = static_cast<std::ptrdiff_t>(std::ceil(reach / step));
    std::vector<double> kernel(2 * half + 1);
    double kernel_sum = 0.0;
    for (std::ptrdiff_t k = -half; k <= half; ++k) {
      const double d = static_cast<double>(k) * step / resolution;
      kernel[k + half] = std::exp(-0.5 * d * d);
      kernel_sum += kernel[k + half];
    }
    for (auto& k : kernel) k /= kernel_sum;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = fine[i];
      if (x < x_lo || x > x_hi) continue;
      double v = 0.0;
      for (std::ptrdiff_t k = -half; k <= half; ++k) {
        const auto j = static_cast<std::ptrdiff_t>(i) + k;
        if (j >= 0 && j < static_cast<std::ptrdiff_t>(n)) v += kernel[k + half] * raw[j];
      }
      smooth.push_back(v);
    }
  }

  // Fringes are minima bracketed by two significant maxima; envelope tails
  // meeting in the window are not fringes.
  const double top = *std::max_element(smooth.begin(), smooth.end());
  const double significant = 1e-2 * top;
  std::vector<std::size_t> maxima;
  for (std::size_t i = 1; i + 1 < smooth.size(); ++i) {
    if (smooth[i] > smooth[i - 1] && smooth[i] >= smooth[i + 1] && smooth[i] >= significant) {
      maxima.push_back(i);
    }
  }
  if (maxima.size() < 2) return 0.0;
  double peak = 0.0;
  for (std::size_t i : maxima) peak = std::max(peak, parabolic_extremum(smooth[i - 1], smooth[i], smooth[i + 1]));
  double valley = std::numeric_limits<double>::infinity();
  for (std::size_t i = maxima.front() + 1; i < maxima.back(); ++i) {
    if (smooth[i] < smooth[i - 1] && smooth[i] <= smooth[i + 1]) {
      valley = std::min(valley, std::max(0.0, parabolic_extremum(smooth[i - 1], smooth[i], smooth[i + 1])));
    }
  }
  if (!std::isfinite(valley)) return 0.0;
  return (peak - valley) / (peak + valley);
}

}  // namespace qct
