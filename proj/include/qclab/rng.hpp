#pragma once

#include <cstdint>

namespace qclab {

/// Counter-based deterministic random stream.
///
/// Each draw mixes (seed, counter) through the SplitMix64 finalizer:
///   z = seed + (counter + 1) * 0x9E3779B97F4A7C15
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z =  z ^ (z >> 31)
/// and advances the counter. The sequence is a pure function of
/// (seed, counter): identical across platforms, trivially splittable,
/// and any draw can be reproduced from its index alone.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t counter = 0;

  static RngStream from_seed(std::uint64_t seed) { return RngStream{seed, 0}; }

  /// Independent stream derived from (seed, key); used to give every
  /// sample / scan point / epoch its own reproducible substream.
  RngStream substream(std::uint64_t key) const;

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double next_double();

  /// Uniform in [lo, hi). Throws ValidationError if lo >= hi.
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller; consumes two draws.
  double normal();

  /// Uniform integer in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);
};

}  // namespace qclab
