#pragma once

#include <cstdint>
#include <random>

namespace qsca {

// Seeded generator with distributions implemented here rather than through
// <random>'s distribution classes, whose algorithms are implementation
// defined. Output streams are therefore identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi] (inclusive), unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Uniform real in [lo, hi) with 53 random bits.
  double uniform_real(double lo, double hi);

  double uniform01();

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal via Box-Muller; the spare value is cached.
  double normal();

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

} // namespace qsca
