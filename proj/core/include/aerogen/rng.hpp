#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace aerogen {

// SplitMix64 finalizer. Used to spread seeds and derive per-image streams.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based split of a dataset seed: image k gets an independent stream
// no matter which worker generates it or in what order.
inline uint64_t derive_stream_id(uint64_t seed, uint64_t index) {
  return mix64(seed ^ mix64(index + 0x632be59bd9b4e019ull));
}

// Deterministic random stream. The engine (mt19937_64) is fully specified by
// the standard; the samplers below avoid std::*_distribution, whose output is
// implementation-defined, so identical seeds give identical draws everywhere.
class RngStream {
 public:
  explicit RngStream(uint64_t stream_id) : engine_(stream_id) {}

  static RngStream for_image(uint64_t seed, uint64_t index) {
    return RngStream(derive_stream_id(seed, index));
  }

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  // Unbiased integer in [0, n). Lemire multiply-shift with rejection.
  uint64_t uniform_int(uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto lo = static_cast<uint64_t>(m);
    if (lo < n) {
      const uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * n;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  // Box-Muller, cosine branch; two uniforms per draw.
  double normal(double mean, double stddev) {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(6.283185307179586 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace aerogen
