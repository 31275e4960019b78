#pragma once

#include <cstdint>
#include <vector>

namespace mgcurl {

// splitmix64: tiny, seedable, reproducible across platforms.
struct SplitMix64 {
  std::uint64_t state = 0;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform in [0,1).
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

// Uniform in [-1,1)^n.
inline std::vector<double> random_vector(std::uint64_t seed, int n) {
  SplitMix64 rng(seed);
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = 2.0 * rng.uniform() - 1.0;
  return v;
}

}  // namespace mgcurl
