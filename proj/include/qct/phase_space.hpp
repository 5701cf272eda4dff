#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qct/ensemble.hpp"

namespace qct {

/// Quadrature of the relative coordinate r over [-half_width, half_width].
struct RelativeSpan {
  /// Defaults to 12 sigma0 (largest of the two packets).
  std::optional<double> half_width;
  /// Odd counts use Simpson's rule.
  std::size_t n_points = 2401;
};

/// Scaled Wigner function sampled on an (R, u) grid, row-major in R.
struct WignerField {
  std::vector<double> R_grid;
  std::vector<double> u_grid;
  std::vector<double> values;
  double t = 0.0;
  Regime regime{1.0, 1.0};

  double at(std::size_t i_R, std::size_t j_u) const { return values[i_R * u_grid.size() + j_u]; }
};

/// W(R, u, t) = (1 / 2 pi hbar_tilde) Int dr exp(-i u r / hbar_tilde) rho(R + r/2, R - r/2, t),
/// by direct quadrature at every grid point. The wall support clips x, y <= 0
/// through rho itself.
/// Throws NumericalGuardError if |rho| at the span edge exceeds 1e-6 or the
/// imaginary residue exceeds 1e-8 of the peak; DomainError if the r step
/// under-resolves the kernel exp(-i u r / hbar_tilde).
WignerField wigner_transform(const Ensemble& ensemble, double t, const UniformGrid& R_grid,
                             const UniformGrid& u_grid, const RelativeSpan& span = {});

/// Int W du at each R.
std::vector<double> wigner_position_marginal(const WignerField& field);

/// Int Int W dR du.
double wigner_norm(const WignerField& field);

/// Largest |W| over u at the R node nearest `R`.
double wigner_ridge_amplitude(const WignerField& field, double R);

/// max over interior nodes of |(W1 - W0)/dt + (u/m) dW_mid/dR| / max|W|, with
/// central differences in R. Free transport makes this pure discretization error.
/// Throws std::invalid_argument on grid or regime mismatch, DomainError unless
/// the ensemble ignores the wall.
double free_liouville_residual(const WignerField& field_t0, const WignerField& field_t1,
                               const EnsembleSpec& spec, const Regime& regime);

}  // namespace qct
