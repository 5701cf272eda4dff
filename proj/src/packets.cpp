#include "qct/packets.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qct/errors.hpp"

namespace qct {

namespace {

void require_time(double t) {
  if (!(t >= 0.0)) throw DomainError("time must be non-negative, got " + std::to_string(t));
}

// Free Gaussian without the time check; shared by the image construction.
Jet evaluate_free(const GaussianPacket& packet, double hbar, double x, double t) {
  using namespace std::complex_literals;
  const double sigma = packet.sigma0;
  const Complex width = sigma * (1.0 + 1i * (hbar * t / (2.0 * packet.mass * sigma * sigma)));
  const double center = packet_center(packet, t);
  const double dx = x - center;

  // (2 pi s_t^2)^(-1/4) with the principal branch; Re s_t > 0 keeps it continuous.
  const Complex prefactor = 1.0 / (std::pow(2.0 * std::numbers::pi, 0.25) * std::sqrt(width));
  const double phase = packet.p0 * dx / hbar + packet.p0 * packet.p0 * t / (2.0 * packet.mass * hbar) +
                       packet.p0 * packet.x0 / hbar;
  const Complex exponent = -dx * dx / (4.0 * sigma * width) + 1i * phase;
  const Complex value = prefactor * std::exp(exponent);
  const Complex log_derivative = -dx / (2.0 * sigma * width) + 1i * (packet.p0 / hbar);
  return {value, value * log_derivative};
}

}  // namespace

void validate(const GaussianPacket& packet) {
  if (!(packet.sigma0 > 0.0) || !std::isfinite(packet.sigma0)) {
    throw DomainError("packet sigma0 must be positive");
  }
  if (!(packet.mass > 0.0) || !std::isfinite(packet.mass)) {
    throw DomainError("packet mass must be positive");
  }
  if (!std::isfinite(packet.p0)) throw DomainError("packet p0 must be finite");
  if (!(packet.x0 < 0.0)) throw DomainError("packet x0 must lie left of the wall (x0 < 0)");
  if (std::abs(packet.x0) < 3.0 * packet.sigma0) {
    throw DomainError("packet must start at least 3 sigma0 from the wall");
  }
}

Complex complex_width(const GaussianPacket& packet, const Regime& regime, double t) {
  require_time(t);
  const double sigma = packet.sigma0;
  return {sigma, regime.hbar_tilde() * t / (2.0 * packet.mass * sigma)};
}

double packet_center(const GaussianPacket& packet, double t) {
  return packet.x0 + packet.p0 / packet.mass * t;
}

Jet free_jet(const GaussianPacket& packet, const Regime& regime, double x, double t) {
  require_time(t);
  return evaluate_free(packet, regime.hbar_tilde(), x, t);
}

Complex free_amplitude(const GaussianPacket& packet, const Regime& regime, double x, double t) {
  return free_jet(packet, regime, x, t).value;
}

Complex free_amplitude_gradient(const GaussianPacket& packet, const Regime& regime, double x,
                                double t) {
  return free_jet(packet, regime, x, t).gradient;
}

Jet wall_jet(const GaussianPacket& packet, const Regime& regime, double x, double t) {
  require_time(t);
  if (x > 0.0) return {};
  const double hbar = regime.hbar_tilde();
  const Jet direct = evaluate_free(packet, hbar, x, t);
  if (x == 0.0) {
    // Image cancels the value exactly; derivatives add.
    return {Complex{}, 2.0 * direct.gradient};
  }
  const Jet image = evaluate_free(packet, hbar, -x, t);
  return {direct.value - image.value, direct.gradient + image.gradient};
}

Complex wall_amplitude(const GaussianPacket& packet, const Regime& regime, double x, double t) {
  return wall_jet(packet, regime, x, t).value;
}

Complex wall_amplitude_gradient(const GaussianPacket& packet, const Regime& regime, double x,
                                double t) {
  return wall_jet(packet, regime, x, t).gradient;
}

}  // namespace qct
