#include "qct/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qct/errors.hpp"

namespace qct {

WignerField wigner_transform(const Ensemble& ensemble, double t, const UniformGrid& R_grid,
                             const UniformGrid& u_grid, const RelativeSpan& span) {
  using namespace std::complex_literals;
  const double hbar = ensemble.regime().hbar_tilde();
  const double sigma = std::max(ensemble.spec().a.sigma0, ensemble.spec().b.sigma0);
  const double half_width = span.half_width.value_or(12.0 * sigma);
  if (!(half_width > 0.0)) throw DomainError("relative span must be positive");
  if (R_grid.n < 3 || u_grid.n < 3) throw DomainError("Wigner grids need at least 3 nodes");

  const UniformGrid r_grid{-half_width, half_width, span.n_points};
  const double dr = r_grid.spacing();
  const bool walled = ensemble.spec().boundary == Boundary::hard_wall;
  const std::size_t n_u = u_grid.n;
  const double du = u_grid.spacing();
  const double u_max = std::max(std::abs(u_grid.lo), std::abs(u_grid.hi));
  if (dr * u_max / hbar > 0.5 * std::numbers::pi) {
    throw DomainError("relative step too coarse for the momentum grid");
  }
  WignerField field;
  field.R_grid = R_grid.nodes();
  field.u_grid = u_grid.nodes();
  field.values.assign(R_grid.n * n_u, 0.0);
  field.t = t;
  field.regime = ensemble.regime();

  const double scale = 1.0 / (2.0 * std::numbers::pi * hbar);
  double edge = 0.0;
  double peak = 0.0;
  double hermitian_residue = 0.0;
  std::vector<Complex> integrand;
  std::vector<Complex> phase;
  std::vector<Complex> rotate;

  for (std::size_t i = 0; i < R_grid.n; ++i) {
    const double R = field.R_grid[i];
    // Behind a wall the support in r ends where either argument reaches x = 0.
    double reach = half_width;
    bool clipped = false;
    if (walled) {
      if (R >= 0.0) continue;
      if (2.0 * -R < half_width) reach = 2.0 * -R, clipped = true;
    }
    const std::size_t n_r =
        clipped ? 2 * static_cast<std::size_t>(std::ceil(reach / dr)) + 1 : r_grid.n;
    const UniformGrid local{-reach, reach, std::max<std::size_t>(n_r, 3)};
    const std::vector<double> r = local.nodes();
    const std::vector<double> wr = quadrature_weights(r.size(), local.spacing());

    // rho(R - r/2, R + r/2) = conj rho(R + r/2, R - r/2): only r >= 0 is summed.
    const std::size_t c = r.size() / 2;
    const std::size_t n_half = r.size() - c;
    integrand.resize(n_half);
    phase.resize(n_half);
    rotate.resize(n_half);
    for (std::size_t k = 0; k < n_half; ++k) {
      const double rk = r[c + k];
      const Complex fwd = ensemble.density(R + 0.5 * rk, R - 0.5 * rk, t);
      const Complex bwd = ensemble.density(R - 0.5 * rk, R + 0.5 * rk, t);
      hermitian_residue = std::max(hermitian_residue, std::abs(fwd - std::conj(bwd)));
      integrand[k] = (k == 0 ? 1.0 : 2.0) * wr[c + k] * fwd;
      phase[k] = std::polar(1.0, -u_grid.lo * rk / hbar);
      rotate[k] = std::polar(1.0, -du * rk / hbar);
    }
    if (!clipped) edge = std::max(edge, std::abs(integrand.back()) / (2.0 * wr.back()));

    for (std::size_t j = 0; j < n_u; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < n_half; ++k) {
        sum += integrand[k].real() * phase[k].real() - integrand[k].imag() * phase[k].imag();
        phase[k] *= rotate[k];
      }
      const double w = scale * sum;
      field.values[i * n_u + j] = w;
      peak = std::max(peak, std::abs(w));
    }
  }

  if (edge > 1e-6) {
    throw NumericalGuardError("relative span truncates the density matrix (edge magnitude " +
                              std::to_string(edge) + ")");
  }
  if (hermitian_residue > 1e-8 * std::max(peak, 1.0)) {
    throw NumericalGuardError("density matrix is not Hermitian (residue " +
                              std::to_string(hermitian_residue) + ")");
  }
  return field;
}

std::vector<double> wigner_position_marginal(const WignerField& field) {
  const std::size_t n_u = field.u_grid.size();
  const double du = (field.u_grid.back() - field.u_grid.front()) / static_cast<double>(n_u - 1);
  std::vector<double> out(field.R_grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = integrate_uniform(std::span<const double>(field.values.data() + i * n_u, n_u), du);
  }
  return out;
}

double wigner_norm(const WignerField& field) {
  const std::vector<double> marginal = wigner_position_marginal(field);
  const double dR = (field.R_grid.back() - field.R_grid.front()) /
                    static_cast<double>(field.R_grid.size() - 1);
  return integrate_uniform(marginal, dR);
}

double wigner_ridge_amplitude(const WignerField& field, double R) {
  const auto it = std::min_element(field.R_grid.begin(), field.R_grid.end(), [R](double a, double b) {
    return std::abs(a - R) < std::abs(b - R);
  });
  const auto i = static_cast<std::size_t>(it - field.R_grid.begin());
  double amplitude = 0.0;
  for (std::size_t j = 0; j < field.u_grid.size(); ++j) amplitude = std::max(amplitude, std::abs(field.at(i, j)));
  return amplitude;
}

double free_liouville_residual(const WignerField& field_t0, const WignerField& field_t1,
                               const EnsembleSpec& spec, const Regime& regime) {
  if (field_t0.R_grid != field_t1.R_grid || field_t0.u_grid != field_t1.u_grid) {
    throw std::invalid_argument("Wigner fields live on different grids");
  }
  if (!(field_t0.regime == regime) || !(field_t1.regime == regime)) {
    throw std::invalid_argument("Wigner fields were computed in a different regime");
  }
  if (spec.boundary != Boundary::free) {
    throw DomainError("Liouville transport check needs a wall-free ensemble");
  }
  const double dt = field_t1.t - field_t0.t;
  if (!(dt > 0.0)) throw std::invalid_argument("second Wigner field must be later than the first");

  const std::size_t n_R = field_t0.R_grid.size();
  const std::size_t n_u = field_t0.u_grid.size();
  const double dR = (field_t0.R_grid.back() - field_t0.R_grid.front()) / static_cast<double>(n_R - 1);
  const double mass = spec.a.mass;

  double peak = 0.0;
  for (std::size_t k = 0; k < field_t0.values.size(); ++k) {
    peak = std::max({peak, std::abs(field_t0.values[k]), std::abs(field_t1.values[k])});
  }
  auto mid = [&](std::size_t i, std::size_t j) { return 0.5 * (field_t0.at(i, j) + field_t1.at(i, j)); };

  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < n_R; ++i) {
    for (std::size_t j = 0; j < n_u; ++j) {
      const double dW_dt = (field_t1.at(i, j) - field_t0.at(i, j)) / dt;
      const double dW_dR = (mid(i + 1, j) - mid(i - 1, j)) / (2.0 * dR);
      worst = std::max(worst, std::abs(dW_dt + field_t0.u_grid[j] / mass * dW_dR));
    }
  }
  return worst / peak;
}

}  // namespace qct
