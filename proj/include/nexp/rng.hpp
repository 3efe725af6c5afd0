#pragma once

#include <cstdint>
#include <random>

namespace nexp {

// Finalizing mix of the splitmix64 generator. Used to spread nearby seed
// values across the full 64-bit range.
inline uint64_t splitmix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed for stream `index` of a run seeded with `base`. Each grid point of a
// sweep draws from its own stream, so a run is reproducible row by row and
// rows stay independent of the grid size.
inline uint64_t derive_stream_seed(uint64_t base, uint64_t index) {
  return splitmix64(base ^ splitmix64(index));
}

// Deterministic generator with a portable uniform double. The raw engine is
// mt19937_64, whose output sequence the C++ standard fixes bit for bit;
// doubles take the top 53 bits of one draw, so the stream of uniforms is
// identical on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nexp
