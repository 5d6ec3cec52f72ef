#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "holo/encoding.hpp"

namespace holo {

struct CorruptionSpec {
  enum class Kind { None, Occlusion, SaltPepper };
  Kind kind = Kind::None;
  double amount = 0.0;  // occluded fraction or noise rate, in [0,1]
  std::uint64_t seed = 0;

  static CorruptionSpec none() { return {}; }
  static CorruptionSpec occlusion(double fraction, std::uint64_t seed);
  static CorruptionSpec salt_pepper(double rate, std::uint64_t seed);

  // "none", "occlude:0.25:seed=42", "sp:0.6:seed=7". The seed part may be
  // omitted when parsing (defaults to 0).
  static CorruptionSpec parse(std::string_view text);
  std::string to_string() const;
  // Same as to_string() without the seed; used to label sweep rows.
  std::string descriptor() const;

  CorruptionSpec with_seed(std::uint64_t s) const {
    CorruptionSpec c = *this;
    c.seed = s;
    return c;
  }

  friend bool operator==(const CorruptionSpec&, const CorruptionSpec&) = default;
};

struct Rect {
  std::size_t x0, y0, width, height;
};

// The rectangle occlude() blacks out. Its aspect ratio follows the image and
// its area is within one row or column of round(f*W*H).
Rect occlusion_rect(std::size_t width, std::size_t height, double fraction, std::uint64_t seed);

ImageRaw occlude(const ImageRaw& img, double fraction, std::uint64_t seed);
ImageRaw salt_pepper(const ImageRaw& img, double rate, std::uint64_t seed);
ImageRaw apply(const ImageRaw& img, const CorruptionSpec& spec);

}  // namespace holo
