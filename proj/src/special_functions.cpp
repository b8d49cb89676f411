#include "sfhp/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "sfhp/errors.hpp"

namespace sfhp {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Valid for x >= 0.5.
double lanczos_gamma(double x) {
  x -= 1.0;
  double series = kLanczosCoefficients[0];
  for (std::size_t i = 1; i < kLanczosCoefficients.size(); ++i) {
    series += kLanczosCoefficients[i] / (x + static_cast<double>(i));
  }
  const double t = x + kLanczosG + 0.5;
  // t^(x+1/2) is split in two halves so that arguments up to 170 do not overflow.
  const double half_power = std::pow(t, 0.5 * (x + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) * series;
}

}  // namespace

double gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("gamma: argument must be positive, got " + std::to_string(x));
  }
  if (x > 170.0) {
    throw OverflowError("gamma: argument " + std::to_string(x) + " overflows double precision");
  }
  if (x <= 20.0 && x == std::floor(x)) {
    double factorial = 1.0;
    for (double k = 2.0; k < x; k += 1.0) factorial *= k;
    return factorial;
  }
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  }
  return lanczos_gamma(x);
}

double digamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("digamma: argument must be positive, got " + std::to_string(x));
  }
  double result = 0.0;
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Bernoulli terms B_2k / (2k x^2k), k = 1..7
  const double tail =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 -
                                      inv2 * (1.0 / 132.0 -
                                              inv2 * (691.0 / 32760.0 - inv2 * (1.0 / 12.0)))))));
  return result + std::log(x) - 0.5 * inv - tail;
}

}  // namespace sfhp
