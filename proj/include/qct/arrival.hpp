#pragma once

#include <span>
#include <vector>

#include "qct/ensemble.hpp"

namespace qct {

/// Arrival-time distribution at a kinematic detector: the normalized modulus of
/// the probability current, Pi(X, t) = |j(X, t)| / Int |j(X, t')| dt'.
struct ArrivalStatistics {
  double detector_x = 0.0;
  std::vector<double> t_grid;
  std::vector<double> pdf;
  double mean_t = 0.0;
  double sd_t = 0.0;
  /// |j| at the last time over its peak on the grid; large values mean the
  /// window truncates the distribution.
  double tail_ratio = 0.0;
};

/// Default window for the hard-wall scattering setup.
inline UniformGrid default_arrival_window() { return {0.0, 40.0, 4001}; }

/// Throws DomainError for detector_x >= 0, NumericalGuardError when the current
/// never reaches the detector (normalization below 1e-12).
ArrivalStatistics arrival_distribution(const Ensemble& ensemble, double detector_x,
                                       const UniformGrid& t_grid);

struct ArrivalSummary {
  double epsilon = 0.0;
  double hbar = 0.0;
  double mean_t = 0.0;
  double sd_t = 0.0;
};

/// One summary per regime; regimes must be strictly monotone in epsilon.
std::vector<ArrivalSummary> arrival_sweep(const EnsembleSpec& spec, std::span<const Regime> regimes,
                                          double detector_x, const UniformGrid& t_grid);

}  // namespace qct
