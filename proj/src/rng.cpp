#include "fraisse/rng.hpp"

#include <stdexcept>

namespace fraisse {

std::uint64_t RandomSource::splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t RandomSource::derive(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 1));
}

std::uint64_t RandomSource::uniform(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform(0)");
  if ((n & (n - 1)) == 0) return engine_() & (n - 1);
  // Largest multiple of n representable; draws above it are rejected.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n + 1) % n;
  std::uint64_t r = 0;
  do {
    r = engine_();
  } while (r > limit);
  return r % n;
}

}  // namespace fraisse
