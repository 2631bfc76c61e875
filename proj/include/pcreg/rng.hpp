#pragma once

#include <cmath>
#include <cstdint>

namespace pcreg {

// Counter-based generator: the state is derived from (seed, stream, index),
// so any draw can be reproduced independently of evaluation order or
// parallel chunking.  Mixing uses the murmur3/splitmix64 finalizer.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    state_ = mix(mix(seed + 0x9E3779B97F4A7C15ull * (stream + 1)) +
                 0xBF58476D1CE4E5B9ull * (index + 1));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  // Uniform on [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on [-halfwidth, halfwidth).
  double next_uniform(double halfwidth) { return (2.0 * next_unit() - 1.0) * halfwidth; }

  bool next_bit() { return (next_u64() >> 63) != 0; }

  // Standard normal via Box-Muller; always consumes two uniforms.
  double next_gaussian() {
    double u1 = next_unit();
    const double u2 = next_unit();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(6.283185307179586476925287 * u2);
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xFF51AFD7ED558CCDull;
    z ^= z >> 33;
    z *= 0xC4CEB9FE1A85EC53ull;
    z ^= z >> 33;
    return z;
  }

  std::uint64_t state_ = 0;
};

}  // namespace pcreg
