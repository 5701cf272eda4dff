#pragma once

#include <stdexcept>
#include <string>

namespace qct {

/// Argument outside the mathematical domain of a formula (epsilon <= 0, sigma0 <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical tripwire fired: accuracy guard, truncation estimate, or an
/// identity that should hold to rounding did not.
class NumericalGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Density fell below the floor where the velocity field is undefined.
class LowDensityError : public NumericalGuardError {
 public:
  LowDensityError(double x, double t, double density);

  double x() const noexcept { return x_; }
  double t() const noexcept { return t_; }
  double density() const noexcept { return density_; }

 private:
  double x_;
  double t_;
  double density_;
};

/// Invalid experiment configuration. `path()` names the offending field
/// as a JSON pointer-like path, e.g. "/packets/0/sigma0".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message);

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace qct
