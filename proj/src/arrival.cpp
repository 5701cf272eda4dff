#include "qct/arrival.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qct/errors.hpp"
#include "qct/hydrodynamics.hpp"

namespace qct {

ArrivalStatistics arrival_distribution(const Ensemble& ensemble, double detector_x,
                                       const UniformGrid& t_grid) {
  if (!(detector_x < 0.0)) throw DomainError("detector must sit at x < 0");
  if (t_grid.n < 3 || !(t_grid.lo >= 0.0) || !(t_grid.hi > t_grid.lo)) {
    throw DomainError("arrival window must be an increasing grid of >= 3 times from t >= 0");
  }

  ArrivalStatistics stats;
  stats.detector_x = detector_x;
  stats.t_grid = t_grid.nodes();
  const std::size_t n = t_grid.n;
  const double h = t_grid.spacing();

  std::vector<double> flux(n);
  for (std::size_t i = 0; i < n; ++i) flux[i] = std::abs(current(ensemble, detector_x, stats.t_grid[i]));

  const double total = integrate_uniform(flux, h);
  if (!(total >= 1e-12)) {
    throw NumericalGuardError("current never reaches the detector (integral " +
                              std::to_string(total) + ")");
  }
  stats.pdf.resize(n);
  for (std::size_t i = 0; i < n; ++i) stats.pdf[i] = flux[i] / total;

  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = stats.t_grid[i] * stats.pdf[i];
  stats.mean_t = integrate_uniform(f, h);
  for (std::size_t i = 0; i < n; ++i) f[i] = stats.t_grid[i] * stats.t_grid[i] * stats.pdf[i];
  const double second = integrate_uniform(f, h);
  stats.sd_t = std::sqrt(std::max(second - stats.mean_t * stats.mean_t, 0.0));

  const double peak = *std::max_element(flux.begin(), flux.end());
  stats.tail_ratio = flux.back() / peak;
  return stats;
}

std::vector<ArrivalSummary> arrival_sweep(const EnsembleSpec& spec, std::span<const Regime> regimes,
                                          double detector_x, const UniformGrid& t_grid) {
  if (regimes.size() > 1) {
    const bool up = regimes[1].epsilon() > regimes[0].epsilon();
    for (std::size_t i = 1; i < regimes.size(); ++i) {
      const double a = regimes[i - 1].epsilon();
      const double b = regimes[i].epsilon();
      if (up ? !(b > a) : !(b < a)) {
        throw std::invalid_argument("arrival sweep regimes must be strictly ordered by epsilon");
      }
    }
  }
  std::vector<ArrivalSummary> out;
  out.reserve(regimes.size());
  for (const Regime& regime : regimes) {
    const ArrivalStatistics s = arrival_distribution(Ensemble(spec, regime), detector_x, t_grid);
    out.push_back({regime.epsilon(), regime.hbar(), s.mean_t, s.sd_t});
  }
  return out;
}

}  // namespace qct
