#include "qct/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qct/errors.hpp"

namespace qct {

namespace {

// Fine grid covering the initial support, used only to fix the normalization.
UniformGrid normalization_grid(const EnsembleSpec& spec, double hbar) {
  const double sigma = std::max(spec.a.sigma0, spec.b.sigma0);
  const double sigma_min = std::min(spec.a.sigma0, spec.b.sigma0);
  const double lo = std::min(spec.a.x0, spec.b.x0) - 14.0 * sigma;
  double hi = 0.0;
  if (spec.boundary == Boundary::free) hi = std::max(spec.a.x0, spec.b.x0) + 14.0 * sigma;
  // Highest wavenumber among cross and image terms.
  const double k_max = (std::abs(spec.a.p0) + std::abs(spec.b.p0) +
                        2.0 * std::max(std::abs(spec.a.p0), std::abs(spec.b.p0))) / hbar +
                       1.0 / sigma_min;
  const double h = std::min(sigma_min / 16.0, std::numbers::pi / (4.0 * k_max));
  auto n = static_cast<std::size_t>(std::ceil((hi - lo) / h)) + 1;
  if (n % 2 == 0) ++n;
  return {lo, hi, std::max<std::size_t>(n, 65)};
}

}  // namespace

EnsembleSpec single_packet(const GaussianPacket& packet, Boundary boundary) {
  return {EnsembleKind::pure, packet, packet, boundary};
}

Ensemble::Ensemble(EnsembleSpec spec, Regime regime) : spec_(spec), regime_(regime) {
  validate(spec_.a);
  validate(spec_.b);
  if (spec_.a.mass != spec_.b.mass) throw DomainError("ensemble packets must share the mass");

  const UniformGrid grid = normalization_grid(spec_, regime_.hbar_tilde());
  std::vector<double> f(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const Complex a = component(spec_.a, grid[i], 0.0).value;
    const Complex b = component(spec_.b, grid[i], 0.0).value;
    f[i] = kind() == EnsembleKind::pure ? 0.5 * std::norm(a + b)
                                        : 0.5 * (std::norm(a) + std::norm(b));
  }
  raw_trace_ = integrate_uniform(f, grid.spacing());
  if (!(raw_trace_ > 0.0)) throw NumericalGuardError("ensemble has vanishing initial norm");
  norm_ = 1.0 / std::sqrt(raw_trace_);
}

Jet Ensemble::component(const GaussianPacket& packet, double x, double t) const {
  return spec_.boundary == Boundary::hard_wall ? wall_jet(packet, regime_, x, t)
                                               : free_jet(packet, regime_, x, t);
}

Jet Ensemble::branch(std::size_t k, double x, double t) const {
  if (kind() == EnsembleKind::pure) {
    const Jet a = component(spec_.a, x, t);
    const Jet b = component(spec_.b, x, t);
    const double scale = norm_ / std::numbers::sqrt2;
    return {scale * (a.value + b.value), scale * (a.gradient + b.gradient)};
  }
  const Jet c = component(k == 0 ? spec_.a : spec_.b, x, t);
  return {norm_ * c.value, norm_ * c.gradient};
}

Complex Ensemble::density(double x, double y, double t) const {
  Complex rho{};
  for (std::size_t k = 0; k < branch_count(); ++k) {
    rho += branch_weight(k) * branch(k, x, t).value * std::conj(branch(k, y, t).value);
  }
  return rho;
}

double Ensemble::position_density(double x, double t) const {
  const Complex rho = density(x, x, t);
  if (std::abs(rho.imag()) > 1e-9) {
    throw NumericalGuardError("diagonal density has imaginary residue " +
                              std::to_string(rho.imag()));
  }
  return rho.real();
}

Complex pure_density(const Ensemble& ensemble, double x, double y, double t) {
  if (ensemble.kind() != EnsembleKind::pure) throw std::invalid_argument("ensemble is not pure");
  return ensemble.density(x, y, t);
}

Complex mixed_density(const Ensemble& ensemble, double x, double y, double t) {
  if (ensemble.kind() != EnsembleKind::mixed) throw std::invalid_argument("ensemble is not mixed");
  return ensemble.density(x, y, t);
}

double position_density(const Ensemble& ensemble, double x, double t) {
  return ensemble.position_density(x, t);
}

BranchSamples sample_branches(const Ensemble& ensemble, double t, const SpatialGrid& grid) {
  validate(grid);
  BranchSamples out;
  out.x = grid.nodes();
  out.count = ensemble.branch_count();
  for (std::size_t k = 0; k < out.count; ++k) {
    out.weights[k] = ensemble.branch_weight(k);
    out.jets[k].resize(out.x.size());
    for (std::size_t i = 0; i < out.x.size(); ++i) out.jets[k][i] = ensemble.branch(k, out.x[i], t);
  }
  return out;
}

double trace(const Ensemble& ensemble, double t, const SpatialGrid& grid) {
  const BranchSamples s = sample_branches(ensemble, t, grid);
  std::vector<double> f(s.x.size(), 0.0);
  for (std::size_t k = 0; k < s.count; ++k) {
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += s.weights[k] * std::norm(s.jets[k][i].value);
  }
  return integrate_uniform(f, grid.spacing());
}

double purity(const Ensemble& ensemble, double t, const SpatialGrid& grid) {
  const BranchSamples s = sample_branches(ensemble, t, grid);
  const std::size_t n = s.x.size();
  const std::vector<double> w = quadrature_weights(n, grid.spacing());

  auto rho = [&](std::size_t i, std::size_t j) {
    Complex v{};
    for (std::size_t k = 0; k < s.count; ++k) {
      v += s.weights[k] * s.jets[k][i].value * std::conj(s.jets[k][j].value);
    }
    return v;
  };

  // Row sums first, then a compensated sum over rows: fixed order, reproducible.
  CompensatedSum<double> total;
  for (std::size_t i = 0; i < n; ++i) {
    CompensatedSum<double> row;
    for (std::size_t j = 0; j < n; ++j) row.add(w[j] * (rho(i, j) * rho(j, i)).real());
    total.add(w[i] * row.value());
  }
  return total.value();
}

}  // namespace qct
