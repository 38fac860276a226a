#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace binom {

/// Seeded generator with fixed transforms, so a seed reproduces the same
/// stream on every platform. Bits come from mt19937_64; uniforms take the
/// top 53 bits; integers use rejection; normals use the Marsaglia polar
/// method.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1).
  double uniform_open() {
    for (;;) {
      const double u = uniform();
      if (u > 0.0) return u;
    }
  }

  /// Uniform integer on [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(engine_());
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x < limit) return lo + static_cast<std::int64_t>(x % range);
    }
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    for (;;) {
      const double u = 2.0 * uniform() - 1.0;
      const double v = 2.0 * uniform() - 1.0;
      const double s = u * u + v * v;
      if (s >= 1.0 || s == 0.0) continue;
      const double m = std::sqrt(-2.0 * std::log(s) / s);
      spare_ = v * m;
      has_spare_ = true;
      return u * m;
    }
  }

  /// Rate-1 exponential.
  double exponential() { return -std::log(uniform_open()); }

  /// Density e^{-|t|}/2.
  double laplace() { return (engine_() & 1u) ? exponential() : -exponential(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Seed for trial `trial` of cell `cell`; disjoint across cells for fewer
/// than 2^32 trials.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t trial) {
  return base + (cell << 32) + trial;
}

}  // namespace binom
