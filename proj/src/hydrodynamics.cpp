#include "qct/hydrodynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qct/errors.hpp"

namespace qct {

FlowSample flow(const Ensemble& ensemble, double x, double t) {
  FlowSample out;
  double flux = 0.0;
  for (std::size_t k = 0; k < ensemble.branch_count(); ++k) {
    const Jet phi = ensemble.branch(k, x, t);
    const double w = ensemble.branch_weight(k);
    out.density += w * std::norm(phi.value);
    flux += w * (phi.gradient * std::conj(phi.value)).imag();
  }
  out.current = ensemble.regime().hbar_tilde() / ensemble.mass() * flux;
  return out;
}

double current(const Ensemble& ensemble, double x, double t) { return flow(ensemble, x, t).current; }

std::optional<double> try_velocity(const Ensemble& ensemble, double x, double t) {
  if (x > 0.0) return std::nullopt;
  const FlowSample f = flow(ensemble, x, t);
  if (!(f.density >= density_floor)) return std::nullopt;
  return f.current / f.density;
}

double velocity(const Ensemble& ensemble, double x, double t) {
  const FlowSample f = flow(ensemble, x, t);
  if (!(f.density >= density_floor)) throw LowDensityError(x, t, f.density);
  return f.current / f.density;
}

Trajectory integrate_trajectory(const Ensemble& ensemble, double x_initial, double t_end,
                                double dt) {
  if (!(x_initial < 0.0)) throw DomainError("trajectory must start at x < 0");
  if (!(dt > 0.0)) throw DomainError("trajectory step must be positive");
  if (!(t_end > 0.0)) throw DomainError("trajectory end time must be positive");

  const auto steps = static_cast<std::size_t>(std::llround(std::ceil(t_end / dt - 1e-9)));
  Trajectory traj;
  traj.initial_position = x_initial;
  traj.samples.reserve(steps + 1);
  traj.samples.push_back({0.0, x_initial});

  double x = x_initial;
  for (std::size_t i = 0; i < steps; ++i) {
    const double t0 = static_cast<double>(i) * dt;
    const double t1 = i + 1 == steps ? t_end : static_cast<double>(i + 1) * dt;
    const double h = t1 - t0;

    const auto k1 = try_velocity(ensemble, x, t0);
    if (!k1) break;
    const auto k2 = try_velocity(ensemble, x + 0.5 * h * *k1, t0 + 0.5 * h);
    if (!k2) break;
    const auto k3 = try_velocity(ensemble, x + 0.5 * h * *k2, t0 + 0.5 * h);
    if (!k3) break;
    const auto k4 = try_velocity(ensemble, x + h * *k3, t1);
    if (!k4) break;

    const double next = x + h * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4) / 6.0;
    if (next > 0.0) break;
    x = next;
    traj.samples.push_back({t1, x});
  }
  if (traj.samples.size() != steps + 1) traj.status = TrajectoryStatus::stalled_low_density;
  return traj;
}

std::vector<Trajectory> trajectory_fan(const Ensemble& ensemble,
                                       std::span<const double> initial_positions, double t_end,
                                       double dt) {
  for (std::size_t i = 1; i < initial_positions.size(); ++i) {
    if (!(initial_positions[i - 1] < initial_positions[i])) {
      throw std::invalid_argument("trajectory seeds must be strictly increasing");
    }
  }
  std::vector<Trajectory> out;
  out.reserve(initial_positions.size());
  for (double x0 : initial_positions) out.push_back(integrate_trajectory(ensemble, x0, t_end, dt));
  return out;
}

std::vector<double> uniform_seeds(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {0.5 * (lo + hi)};
  if (!(lo < hi)) throw std::invalid_argument("seed interval must satisfy lo < hi");
  return UniformGrid{lo, hi, count}.nodes();
}

std::vector<double> born_seeds(const Ensemble& ensemble, const SpatialGrid& grid,
                               std::size_t count) {
  validate(grid);
  const std::vector<double> x = grid.nodes();
  const double h = grid.spacing();
  // Cumulative trapezoid of the initial density.
  std::vector<double> cdf(x.size(), 0.0);
  double previous = ensemble.position_density(x[0], 0.0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double current_value = ensemble.position_density(x[i], 0.0);
    cdf[i] = cdf[i - 1] + 0.5 * h * (previous + current_value);
    previous = current_value;
  }
  const double total = cdf.back();
  std::vector<double> seeds;
  seeds.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double target = total * (static_cast<double>(k) + 0.5) / static_cast<double>(count);
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
    const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - cdf.begin(), 1));
    const double frac = (target - cdf[i - 1]) / (cdf[i] - cdf[i - 1]);
    seeds.push_back(x[i - 1] + frac * h);
  }
  return seeds;
}

}  // namespace qct
