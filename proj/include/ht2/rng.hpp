#ifndef HT2_RNG_HPP
#define HT2_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ht2 {

// SplitMix64 finalizer; full 64-bit avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/**
 * Counter-based uniform generator (splitmix64 sequence).
 *
 * A stream is fully determined by (seed, stream): replication r of a run
 * always sees the same draws no matter which worker executes it or in what
 * order. Normal variates come from Box-Muller with one cached spare.
 */
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(mix64(seed + kGolden)) {}

  RandomStream(std::uint64_t seed, std::uint64_t stream)
      : state_(mix64(seed + kGolden) ^ mix64(stream * kGolden + 0x6a09e667f3bcc909ULL)) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += kGolden);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on (0, 1]; never returns 0, so log() below is safe.
  double next_unit() { return ((next_u64() >> 11) + 1) * 0x1.0p-53; }

  // Uniform integer in [0, n) by 128-bit multiply.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(next_unit()));
    const double theta = 2.0 * std::numbers::pi * next_unit();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ht2

#endif  // HT2_RNG_HPP
