#include "sfhp/wiener.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sfhp/errors.hpp"

namespace sfhp {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const std::uint64_t key = splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
  const std::uint64_t bits = splitmix64(key + counter * 0x9E3779B97F4A7C15ULL);
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const double u1 = counter_uniform(seed, stream, 2 * index);
  const double u2 = counter_uniform(seed, stream, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

WienerPath wiener_path(std::uint64_t seed, double h, std::size_t N, std::uint64_t stream) {
  if (!(h > 0.0)) {
    throw ConfigError("h", "time step must be positive");
  }
  if (N < 1) {
    throw ConfigError("N", "at least one step is required");
  }
  WienerPath path{seed, stream, h, N, std::vector<double>(N)};
  const double scale = std::sqrt(h);
  for (std::size_t n = 0; n < N; ++n) {
    path.increments[n] = scale * counter_normal(seed, stream, n);
  }
  return path;
}

WienerPath WienerPath::coarsen(std::size_t factor) const {
  if (factor == 0 || N % factor != 0) {
    throw GridMismatchError("coarsen: factor " + std::to_string(factor) + " does not divide N = " +
                            std::to_string(N));
  }
  WienerPath out{seed, stream, h * static_cast<double>(factor), N / factor,
                 std::vector<double>(N / factor, 0.0)};
  for (std::size_t n = 0; n < N; ++n) {
    out.increments[n / factor] += increments[n];
  }
  return out;
}

}  // namespace sfhp
