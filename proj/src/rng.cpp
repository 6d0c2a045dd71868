#include "qclab/rng.hpp"

#include <cmath>
#include <numbers>

#include "qclab/errors.hpp"

namespace qclab {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

RngStream RngStream::substream(std::uint64_t key) const {
  // Decorrelate the child from both the parent seed and the key.
  return RngStream{mix64(seed ^ mix64(key + 0x6A09E667F3BCC909ull)), 0};
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
  ++counter;
  return mix64(z);
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  if (!(lo < hi)) {
    throw ValidationError("rng_uniform: requires lo < hi");
  }
  double v = lo + next_double() * (hi - lo);
  if (v >= hi) {  // guard against round-up at the open end
    v = std::nextafter(hi, lo);
  }
  return v;
}

double RngStream::normal() {
  const double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
  const double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) {
    throw ValidationError("rng below: n must be positive");
  }
  return static_cast<std::uint64_t>(
      (static_cast<__uint128_t>(next_u64()) * n) >> 64);
}

}  // namespace qclab
