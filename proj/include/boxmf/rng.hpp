#pragma once

#include <cstdint>
#include <random>

namespace boxmf {

/// SplitMix64 finalizer (Steele, Lea & Flood 2014).
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for replicate `index` under `master_seed`:
///   splitmix64(splitmix64(master_seed) ^ (index + 1) * 0x9E3779B97F4A7C15)
/// Each replicate owns an independent stream, so results do not depend on
/// which worker runs which replicate.
std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t index);

/// Portable random source: std::mt19937_64 (bit-exact across standard
/// libraries) plus hand-written bounded/uniform/normal draws, because the
/// std distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound) by Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal by Box-Muller; the second variate is cached.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace boxmf
