#include "doctest.h"
#include "qct/errors.hpp"
#include "qct/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace qct;

namespace {
std::vector<std::pair<double, double>> tabulate(double lo, double hi, std::size_t n, double (*f)(double)) {
  std::vector<std::pair<double, double>> s;
  const UniformGrid g{lo, hi, n};
  for (std::size_t i = 0; i < n; ++i) s.emplace_back(g[i], f(g[i]));
  return s;
}
}  // namespace

TEST_CASE("Simpson examples") {
  CHECK(quad_integrate(tabulate(0, 1, 101, [](double) { return 1.0; })) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(quad_integrate(tabulate(0, 1, 101, [](double x) { return x * x; })) - 1.0 / 3.0) < 1e-10);
  CHECK(std::abs(quad_integrate(tabulate(0, 2, 11, [](double x) { return x * x * x; })) - 4.0) < 1e-12);
}

TEST_CASE("standard normal against the error function") {
  auto phi = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); };
  const double expected = std::erf(8.0 / std::sqrt(2.0));
  const double got = quad_integrate(tabulate(-8, 8, 801, +phi));
  CHECK(std::abs(got - expected) < 1e-8);
}

TEST_CASE("even counts fall back to the trapezoid rule") {
  const auto w = quadrature_weights(4, 1.0);
  CHECK(w[0] == 0.5);
  CHECK(w[1] == 1.0);
  CHECK(w[3] == 0.5);
  // Trapezoid is exact on lines.
  CHECK(quad_integrate(tabulate(0, 3, 4, [](double x) { return 2 * x + 1; })) == doctest::Approx(12.0));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(quadrature_weights(2, 0.1), DomainError);
  std::vector<std::pair<double, double>> two{{0, 1}, {1, 1}};
  CHECK_THROWS_AS(quad_integrate(two), DomainError);
  std::vector<std::pair<double, double>> uneven{{0, 1}, {0.1, 1}, {0.5, 1}};
  CHECK_THROWS_AS(quad_integrate(uneven), DomainError);
  CHECK_THROWS_AS(validate(SpatialGrid{-10, 0, 32}), DomainError);
}

TEST_CASE("compensated summation is order-exact on a cancelling series") {
  CompensatedSum<double> s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);
}
