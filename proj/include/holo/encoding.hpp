#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "holo/linalg.hpp"

namespace holo {

/// 8-bit grayscale image, row-major.
struct ImageRaw {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  ImageRaw() = default;
  ImageRaw(std::size_t w, std::size_t h, std::vector<std::uint8_t> px);
  ImageRaw(std::size_t w, std::size_t h, std::uint8_t fill);

  std::size_t size() const noexcept { return pixels.size(); }
  std::uint8_t& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
  std::uint8_t at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }

  friend bool operator==(const ImageRaw&, const ImageRaw&) = default;
};

/// Zero-mean, unit-L2-norm real pattern derived from an image.
class PatternVector {
 public:
  // Takes values as-is; use preprocess() to build one from an image.
  explicit PatternVector(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  double max_abs() const noexcept;

 private:
  std::vector<double> values_;
};

enum class EncodingMode : std::uint8_t { Amplitude = 0, Phase = 1 };

std::string_view to_string(EncodingMode mode);
EncodingMode parse_mode(std::string_view name);

/// Encoding parameters. In phase mode every component has modulus
/// `amplitude` = 1/sqrt(N) and phase `phase_scale * value`.
struct EncodingParams {
  EncodingMode mode = EncodingMode::Amplitude;
  double amplitude = 1.0;
  double phase_scale = 0.0;

  static EncodingParams amplitude_mode();
  static EncodingParams phase_mode(std::size_t n, double phase_scale);
  // Phase scale chosen so the largest |value| over the whole set maps to pi/2.
  static EncodingParams for_dataset(EncodingMode mode, std::span<const PatternVector> patterns);

  friend bool operator==(const EncodingParams&, const EncodingParams&) = default;
};

struct WaveState {
  CVec amplitudes;
  EncodingMode mode;
  EncodingParams params;

  std::size_t size() const noexcept { return amplitudes.size(); }
};

PatternVector preprocess(const ImageRaw& img);

WaveState encode(const PatternVector& p, const EncodingParams& params);

// Like encode(), but for recall keys: a corrupted query may exceed the
// stored set's value range, so phases up to +-pi are accepted and anything
// beyond is saturated at +-pi instead of raising PhaseOverflow.
WaveState encode_query(const PatternVector& p, const EncodingParams& params);

std::vector<double> decode(const WaveState& w, const EncodingParams& params);

ImageRaw to_image(std::span<const double> values, std::size_t width, std::size_t height);

}  // namespace holo
