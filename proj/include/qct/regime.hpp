#pragma once

namespace qct {

/// Dynamical regime between quantum (epsilon = 1) and classical (epsilon -> 0)
/// mechanics. Every formula downstream reads only `hbar_tilde()`, so
/// Regime(eps, hbar) and Regime(1, sqrt(eps) * hbar) are interchangeable.
class Regime {
 public:
  /// Throws DomainError unless 0 < epsilon <= 1 and hbar > 0.
  Regime(double epsilon, double hbar);

  double epsilon() const noexcept { return epsilon_; }
  double hbar() const noexcept { return hbar_; }
  /// Scaled Planck constant sqrt(epsilon) * hbar.
  double hbar_tilde() const noexcept { return hbar_tilde_; }

  friend bool operator==(const Regime&, const Regime&) = default;

 private:
  double epsilon_;
  double hbar_;
  double hbar_tilde_;
};

Regime make_regime(double epsilon, double hbar);

}  // namespace qct
