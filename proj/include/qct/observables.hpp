#pragma once

#include <span>

#include "qct/ensemble.hpp"

namespace qct {

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

struct ObservableRecord {
  double t = 0.0;
  double mean_x = 0.0;
  double mean_p = 0.0;
  double sd_x = 0.0;
  double sd_p = 0.0;
  double uncertainty_product = 0.0;
  double f_nc = 0.0;
};

Moments position_moments(const Ensemble& ensemble, double t, const SpatialGrid& grid);

/// Momentum moments in the position representation:
///   <p>   = sum_k w_k hbar_tilde  Int Im[conj(phi_k) d phi_k/dx]
///   <p^2> = sum_k w_k hbar_tilde^2 Int |d phi_k/dx|^2
/// The second form relies on phi_k vanishing at the wall and at x_min.
Moments momentum_moments(const Ensemble& ensemble, double t, const SpatialGrid& grid);

/// Non-classical effective force -(hbar_tilde^2 / 2m) sum_k w_k |d phi_k/dx (0, t)|^2,
/// i.e. d<p>/dt generated by the wall. Identically zero without a wall.
double effective_force(const Ensemble& ensemble, double t);

ObservableRecord observe(const Ensemble& ensemble, double t, const SpatialGrid& grid);

struct EhrenfestResidual {
  double velocity = 0.0;  ///< d<x>/dt - <p>/m
  double force = 0.0;     ///< d<p>/dt - f_nc
};

inline constexpr double default_ehrenfest_step = 1e-3;

/// Central differences in time with step `dt_fd` (one-sided second order when t < dt_fd).
EhrenfestResidual ehrenfest_residual(const Ensemble& ensemble, double t, const SpatialGrid& grid,
                                     double dt_fd = default_ehrenfest_step);

struct HeisenbergCheck {
  bool satisfied = false;
  double margin = 0.0;  ///< sd_x sd_p - hbar_tilde / 2
};

HeisenbergCheck heisenberg_check(const ObservableRecord& record, const Regime& regime);

/// Number of strict interior local maxima.
std::size_t count_local_maxima(std::span<const double> values);

/// Contrast (max - min)/(max + min) of the interference fringes of rho(x, x, t)
/// on [x_lo, x_hi]. `max` is the largest local maximum and `min` the smallest
/// local minimum lying between two maxima above 1% of the window peak; zero
/// when there are fewer than two such maxima. The wall node at x = 0 and
/// meeting envelope tails are not fringes. A positive `resolution` first
/// smooths the profile with a Gaussian detector response of that width.
double fringe_visibility(const Ensemble& ensemble, double t, double x_lo, double x_hi,
                         double resolution = 0.0);

}  // namespace qct
