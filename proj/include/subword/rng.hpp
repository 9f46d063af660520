#pragma once

#include <cstdint>
#include <random>

namespace subword {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed for one (run seed, epoch, utterance ordinal) triple. Streams derive a
// fresh generator per utterance so output does not depend on consumption order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t epoch,
                                 std::uint64_t ordinal) noexcept {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ epoch);
  h = splitmix64(h ^ ordinal);
  return h;
}

// Deterministic generator. The engine's output sequence is fixed by the
// standard; the conversions below avoid std::*_distribution, whose results
// are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace subword
