#pragma once

#include <cstdint>
#include <vector>

namespace sfhp {

/// Counter-based uniform generator.
///
/// A draw is a pure function of (seed, stream, counter): the key
/// k = mix(seed ^ mix(stream + 0x632BE59BD9B4E019)) is combined with the counter as
/// mix(k + counter * 0x9E3779B97F4A7C15), where mix is the SplitMix64 finalizer.
/// The top 53 bits give a uniform in (0, 1]. No state is carried between draws, so
/// streams for different trajectories need no coordination.
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

/// Standard normal draw number `index` of a stream (Box-Muller on counters 2i, 2i+1).
double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Increments dW_n = w((n+1)h) - w(nh), n = 0..N-1, of a scalar Wiener process.
struct WienerPath {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  double h = 0.0;
  std::size_t N = 0;
  std::vector<double> increments;

  /// Path on the grid with step factor*h whose increments are sums of this path's.
  WienerPath coarsen(std::size_t factor) const;
};

/// Draws N independent Normal(0, h) increments: dW_n = sqrt(h) * counter_normal(seed, stream, n).
WienerPath wiener_path(std::uint64_t seed, double h, std::size_t N, std::uint64_t stream = 0);

}  // namespace sfhp
