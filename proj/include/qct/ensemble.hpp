#pragma once

#include <array>
#include <cstddef>

#include "qct/packets.hpp"
#include "qct/quadrature.hpp"
#include "qct/regime.hpp"

namespace qct {

enum class EnsembleKind { pure, mixed };

/// `hard_wall` evolves each packet with the image propagator on x < 0;
/// `free` ignores the wall (used to check transport identities).
enum class Boundary { hard_wall, free };

/// Two-packet state: the superposition (a + b)/sqrt(2) or the equal-weight
/// mixture of |a><a| and |b><b|.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::pure;
  GaussianPacket a;
  GaussianPacket b;
  Boundary boundary = Boundary::hard_wall;

  friend bool operator==(const EnsembleSpec&, const EnsembleSpec&) = default;
};

/// Both slots hold the same packet; as a pure state this is that packet alone.
EnsembleSpec single_packet(const GaussianPacket& packet, Boundary boundary = Boundary::hard_wall);

/// Normalized two-packet density matrix written as a weighted sum of branches,
/// rho(x, y, t) = sum_k w_k phi_k(x, t) conj(phi_k(y, t)).
/// The pure state has one branch N (psi_a + psi_b)/sqrt(2); the mixture has
/// two branches psi_a, psi_b of weight 1/2, both divided by sqrt(trace at t=0).
/// The normalization is fixed once at t = 0.
class Ensemble {
 public:
  Ensemble(EnsembleSpec spec, Regime regime);

  const EnsembleSpec& spec() const noexcept { return spec_; }
  const Regime& regime() const noexcept { return regime_; }
  EnsembleKind kind() const noexcept { return spec_.kind; }
  double mass() const noexcept { return spec_.a.mass; }

  /// N for the pure state; 1/sqrt(trace at t=0) for the mixture.
  double norm_constant() const noexcept { return norm_; }
  /// Trace of the unnormalized state at t = 0 (1 minus the wall-tail defect).
  double raw_initial_trace() const noexcept { return raw_trace_; }

  std::size_t branch_count() const noexcept { return kind() == EnsembleKind::pure ? 1 : 2; }
  double branch_weight(std::size_t k) const noexcept {
    return kind() == EnsembleKind::pure ? 1.0 : (k < 2 ? 0.5 : 0.0);
  }
  /// Normalized branch amplitude and gradient.
  Jet branch(std::size_t k, double x, double t) const;

  Complex density(double x, double y, double t) const;
  /// Real diagonal rho(x, x, t); throws NumericalGuardError if the imaginary
  /// residue exceeds 1e-9.
  double position_density(double x, double t) const;

 private:
  Jet component(const GaussianPacket& packet, double x, double t) const;

  EnsembleSpec spec_;
  Regime regime_;
  double norm_ = 1.0;
  double raw_trace_ = 1.0;
};

/// Kind-checked views of `Ensemble::density`; throw std::invalid_argument on mismatch.
Complex pure_density(const Ensemble& ensemble, double x, double y, double t);
Complex mixed_density(const Ensemble& ensemble, double x, double y, double t);
double position_density(const Ensemble& ensemble, double x, double t);

/// Branch amplitudes sampled on a grid, the shared input of all grid quadratures.
struct BranchSamples {
  std::vector<double> x;
  std::array<std::vector<Jet>, 2> jets;
  std::array<double, 2> weights{};
  std::size_t count = 0;
};
BranchSamples sample_branches(const Ensemble& ensemble, double t, const SpatialGrid& grid);

/// Integral of rho(x, x, t) over the grid.
double trace(const Ensemble& ensemble, double t, const SpatialGrid& grid);

/// tr(rho^2) = integral of rho(x, y) rho(y, x) over the grid squared.
double purity(const Ensemble& ensemble, double t, const SpatialGrid& grid);

}  // namespace qct
