#pragma once

#include <cstdint>

namespace zoseg {

// Counter-based pseudo-random generator in the splitmix64 family.  The state
// is just (seed, counter); draw k is a pure function of both, so streams can
// be replayed, split, and compared across platforms bit-for-bit.  We avoid
// std::normal_distribution and friends on purpose: their draw sequences are
// implementation-defined, which would make golden-value tests meaningless.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  // Next raw 64-bit word: mix64(seed + counter * golden gamma).
  std::uint64_t next_u64() {
    counter_ += 1;
    return mix64(seed_ + counter_ * kGoldenGamma);
  }

  // Uniform on [0, 1) with 53 random bits (the full double mantissa).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller.  Consumes exactly two raw draws and
  // keeps no cached spare, so the counter advance per call is fixed.
  double normal();

  // Derived independent stream; children with distinct indices do not
  // collide with each other or with the parent.
  Rng substream(std::uint64_t index) const {
    return Rng(mix64(seed_ ^ mix64(index + kGoldenGamma)));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t position() const { return counter_; }

  // Stafford/splitmix64 finalizer; public because substream derivation and
  // tests both want it.
  static std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
  }

 private:
  static constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace zoseg
