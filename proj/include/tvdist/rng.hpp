#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace tvdist {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of stream `index` under base seed `seed`:
//   mix64(seed ^ mix64(index + 1))
// Streams are identified by this value alone, so a run is reproducible from
// (seed, stream layout) regardless of which thread consumes a stream.
constexpr std::uint64_t derive_stream_seed(std::uint64_t seed,
                                           std::uint64_t index) {
  return mix64(seed ^ mix64(index + 1));
}

// mt19937_64 with a fixed double conversion (top 53 bits), so draws are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

// Inverse-CDF draw in ascending index order from unnormalized weights with
// total `total`. Rounding residue goes to the last positive-weight category,
// so zero-weight categories are never returned.
inline std::size_t inverse_cdf(std::span<const double> weights, double total,
                               double u) {
  const double target = u * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    if (weights[c] <= 0.0) continue;
    cumulative += weights[c];
    last_positive = c;
    if (target < cumulative) return c;
  }
  return last_positive;
}

}  // namespace tvdist
