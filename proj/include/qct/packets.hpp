#pragma once

#include <complex>

#include "qct/regime.hpp"

namespace qct {

using Complex = std::complex<double>;

/// Minimum-uncertainty Gaussian at t = 0:
///   psi(x, 0) = (2 pi sigma0^2)^(-1/4) exp[-(x - x0)^2 / (4 sigma0^2) + i p0 x / hbar_tilde]
struct GaussianPacket {
  double sigma0 = 1.0;
  double x0 = -5.0;
  double p0 = 0.0;
  double mass = 1.0;

  friend bool operator==(const GaussianPacket&, const GaussianPacket&) = default;
};

/// Throws DomainError unless sigma0 > 0, mass > 0, x0 < 0 and |x0| >= 3 sigma0.
void validate(const GaussianPacket& packet);

/// Amplitude together with its spatial derivative.
struct Jet {
  Complex value;
  Complex gradient;
};

/// s_t = sigma0 (1 + i hbar_tilde t / (2 m sigma0^2)).
Complex complex_width(const GaussianPacket& packet, const Regime& regime, double t);

/// x_t = x0 + p0 t / m.
double packet_center(const GaussianPacket& packet, double t);

/// Free evolution of the full (untruncated) Gaussian.
Jet free_jet(const GaussianPacket& packet, const Regime& regime, double x, double t);
Complex free_amplitude(const GaussianPacket& packet, const Regime& regime, double x, double t);
Complex free_amplitude_gradient(const GaussianPacket& packet, const Regime& regime, double x,
                                double t);

/// Hard wall at the origin by the method of images: psi_f(x) - psi_f(-x) for x < 0,
/// zero for x >= 0. The gradient at x = 0 is the one-sided limit from the left.
Jet wall_jet(const GaussianPacket& packet, const Regime& regime, double x, double t);
Complex wall_amplitude(const GaussianPacket& packet, const Regime& regime, double x, double t);
Complex wall_amplitude_gradient(const GaussianPacket& packet, const Regime& regime, double x,
                                double t);

}  // namespace qct
