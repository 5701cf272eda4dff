#include "qct/regime.hpp"

#include <cmath>
#include <string>

#include "qct/errors.hpp"

namespace qct {

LowDensityError::LowDensityError(double x, double t, double density)
    : NumericalGuardError("density " + std::to_string(density) + " below floor at x=" +
                          std::to_string(x) + ", t=" + std::to_string(t)),
      x_(x),
      t_(t),
      density_(density) {}

ConfigError::ConfigError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

Regime::Regime(double epsilon, double hbar) : epsilon_(epsilon), hbar_(hbar) {
  if (!(epsilon > 0.0) || !(epsilon <= 1.0)) {
    throw DomainError("epsilon must lie in (0, 1], got " + std::to_string(epsilon));
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw DomainError("hbar must be positive, got " + std::to_string(hbar));
  }
  hbar_tilde_ = std::sqrt(epsilon) * hbar;
}

Regime make_regime(double epsilon, double hbar) { return Regime(epsilon, hbar); }

}  // namespace qct
