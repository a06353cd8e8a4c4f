#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sirs {

// Deterministic 64-bit generator. A (seed, stream) pair identifies an
// independent sequence; std::seed_seq and std::mt19937_64 are fully specified
// by the standard, so sequences are reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in (0, 1]; never returns 0 so -log(u) is finite.
  double uniform_open_closed() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Exp(rate) by inverse CDF.
  double exponential(double rate) { return -std::log(uniform_open_closed()) / rate; }

 private:
  std::mt19937_64 engine_;
};

// Seed for replica `index` of an ensemble rooted at `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace sirs
