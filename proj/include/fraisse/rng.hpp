#pragma once

#include <cstdint>
#include <random>

namespace fraisse {

/// Deterministic random source used by every sampling path.
///
/// Engine: std::mt19937_64 (its output sequence is fixed by the C++ standard).
/// Stream splitting: stream `s` of master seed `m` is seeded with
/// splitmix64(m ^ splitmix64(s + 1)). The process uses one stream per stage
/// and the Monte Carlo harness one master seed per run, so stages and runs can
/// be replayed independently. Bounded draws use rejection sampling rather than
/// std::uniform_int_distribution, whose output is implementation-defined.
class RandomSource {
 public:
  static constexpr const char* kName = "mt19937_64+splitmix64 v1";

  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t splitmix64(std::uint64_t x);
  static std::uint64_t derive(std::uint64_t master, std::uint64_t stream);
  static RandomSource substream(std::uint64_t master, std::uint64_t stream) {
    return RandomSource(derive(master, stream));
  }

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, n); n must be positive.
  std::uint64_t uniform(std::uint64_t n);
  /// Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fraisse
