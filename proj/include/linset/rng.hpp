#ifndef LINSET_RNG_HPP
#define LINSET_RNG_HPP

// xorshift64* (Vigna): state s != 0,
//   s ^= s >> 12; s ^= s << 25; s ^= s >> 27; return s * 0x2545F4914F6CDD1D.
// Seeds pass through one splitmix64 step so that small seeds are usable.
// The sequence is fully specified here so sweeps are reproducible across
// implementations.

#include <cstdint>

namespace linset {

class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed) : s_(splitmix(seed)) {
    if (s_ == 0) s_ = 0x9E3779B97F4A7C15ull;
  }

  std::uint64_t next() {
    s_ ^= s_ >> 12;
    s_ ^= s_ << 25;
    s_ ^= s_ >> 27;
    return s_ * 0x2545F4914F6CDD1Dull;
  }

  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return x % bound;
  }

  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

 private:
  static std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t s_;
};

}  // namespace linset

#endif  // LINSET_RNG_HPP
