#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qct/ensemble.hpp"

namespace qct {

/// Below this diagonal density the velocity field is undefined.
inline constexpr double density_floor = 1e-12;

/// Diagonal density and probability current at one point.
struct FlowSample {
  double density = 0.0;
  double current = 0.0;
};

FlowSample flow(const Ensemble& ensemble, double x, double t);

/// j(x, t) = (hbar_tilde / m) Im[ d/dx rho(x, y, t) |_{y = x} ].
double current(const Ensemble& ensemble, double x, double t);

/// v = j / rho. Throws LowDensityError below `density_floor`.
double velocity(const Ensemble& ensemble, double x, double t);
/// As `velocity`, but empty below the floor or outside x <= 0.
std::optional<double> try_velocity(const Ensemble& ensemble, double x, double t);

enum class TrajectoryStatus { completed, stalled_low_density };

struct TrajectorySample {
  double t;
  double x;
};

struct Trajectory {
  double initial_position = 0.0;
  std::vector<TrajectorySample> samples;
  TrajectoryStatus status = TrajectoryStatus::completed;
};

inline constexpr double default_trajectory_step = 1e-3;

/// Fixed-step classical RK4 on dx/dt = v(x, t) from (0, x_initial) to t_end.
/// A step whose stages hit the density floor, or that would cross the wall,
/// is discarded and the trajectory ends as `stalled_low_density`.
Trajectory integrate_trajectory(const Ensemble& ensemble, double x_initial, double t_end,
                                double dt = default_trajectory_step);

/// One trajectory per seed; seeds must be strictly increasing.
std::vector<Trajectory> trajectory_fan(const Ensemble& ensemble,
                                       std::span<const double> initial_positions, double t_end,
                                       double dt = default_trajectory_step);

/// `count` evenly spaced seeds over [lo, hi].
std::vector<double> uniform_seeds(double lo, double hi, std::size_t count);

/// Seeds at the (k + 1/2)/count quantiles of rho(x, x, 0) on `grid`.
std::vector<double> born_seeds(const Ensemble& ensemble, const SpatialGrid& grid,
                               std::size_t count);

}  // namespace qct
