#pragma once

#include <cmath>
#include <cstdint>

namespace holo {

// SplitMix64 (Steele, Lea & Flood). The whole state is one 64-bit word, so a
// stream is fully determined by its seed on every platform.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kMul1 = 0xBF58476D1CE4E5B9ULL;
  static constexpr std::uint64_t kMul2 = 0x94D049BB133111EBULL;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGamma;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * kMul1;
    z = (z ^ (z >> 27)) * kMul2;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) from the top 53 bits.
  constexpr double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). Plain modulo; the bias is below 2^-40 for
  // every bound this project uses.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept { return next() % bound; }

  // Standard normal via Box-Muller (one value per call, the sine branch dropped).
  double normal() noexcept {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace holo
