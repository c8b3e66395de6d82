#ifndef D2D_RNG_H_
#define D2D_RNG_H_

#include <cstdint>
#include <random>

namespace d2d {

// mt19937_64 with a fixed bits-to-double mapping, so draws do not depend on
// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t SplitMix64(std::uint64_t x);

// Per-(m, instance) seed; adding algorithms or cells never shifts another
// cell's scenario.
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t m, std::uint64_t instance);

}  // namespace d2d

#endif  // D2D_RNG_H_
