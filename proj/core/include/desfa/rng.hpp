#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace desfa {

// All randomness flows through mt19937_64 plus the helpers below. The standard
// pins down the engine but not the distributions, so sampling is done by hand
// to keep experiment output identical across standard library versions.

using Rng = std::mt19937_64;

constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derive an independent sub-seed from (seed, stream).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ mix64(stream ^ 0xd1b54a32d192ed03ULL));
}

/// Unbiased integer in [0, n). n must be nonzero.
inline std::uint64_t bounded(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = n * (UINT64_MAX / n);
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

/// Uniform double in (0, 1].
inline double unit_open(Rng& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

/// Standard normal deviate (Box-Muller, cosine branch).
inline double normal(Rng& rng) {
  const double u1 = unit_open(rng);
  const double u2 = unit_open(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[bounded(rng, i)]);
  }
}

}  // namespace desfa
