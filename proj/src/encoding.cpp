#include "holo/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "holo/error.hpp"

namespace holo {

ImageRaw::ImageRaw(std::size_t w, std::size_t h, std::vector<std::uint8_t> px)
    : width(w), height(h), pixels(std::move(px)) {
  if (w == 0 || h == 0) throw Error(ErrorCode::InvalidArgument, "image must be nonempty");
  if (pixels.size() != w * h)
    throw Error(ErrorCode::DimensionMismatch,
                "pixel count " + std::to_string(pixels.size()) + " != " + std::to_string(w) +
                    "x" + std::to_string(h));
}

ImageRaw::ImageRaw(std::size_t w, std::size_t h, std::uint8_t fill)
    : ImageRaw(w, h, std::vector<std::uint8_t>(w * h, fill)) {}

PatternVector::PatternVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::InvalidArgument, "empty pattern");
}

double PatternVector::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

std::string_view to_string(EncodingMode mode) {
  return mode == EncodingMode::Phase ? "phase" : "amplitude";
}

EncodingMode parse_mode(std::string_view name) {
  if (name == "amplitude") return EncodingMode::Amplitude;
  if (name == "phase") return EncodingMode::Phase;
  throw Error(ErrorCode::InvalidArgument, "unknown encoding mode '" + std::string(name) + "'");
}

EncodingParams EncodingParams::amplitude_mode() { return {}; }

EncodingParams EncodingParams::phase_mode(std::size_t n, double phase_scale) {
  if (n == 0 || !(phase_scale > 0.0) || !std::isfinite(phase_scale))
    throw Error(ErrorCode::InvalidArgument, "phase mode needs n >= 1 and a positive phase scale");
  return {EncodingMode::Phase, 1.0 / std::sqrt(static_cast<double>(n)), phase_scale};
}

EncodingParams EncodingParams::for_dataset(EncodingMode mode,
                                           std::span<const PatternVector> patterns) {
  if (patterns.empty()) throw Error(ErrorCode::EmptyPatternSet, "no patterns");
  if (mode == EncodingMode::Amplitude) return amplitude_mode();
  double max_abs = 0.0;
  for (const auto& p : patterns) {
    if (p.size() != patterns.front().size())
      throw Error(ErrorCode::DimensionMismatch, "patterns differ in length");
    max_abs = std::max(max_abs, p.max_abs());
  }
  if (max_abs == 0.0) throw Error(ErrorCode::InvalidArgument, "all patterns are zero");
  return phase_mode(patterns.front().size(), (std::numbers::pi / 2) / max_abs);
}

PatternVector preprocess(const ImageRaw& img) {
  if (img.pixels.empty()) throw Error(ErrorCode::InvalidArgument, "empty image");
  const auto n = static_cast<double>(img.size());
  double sum = 0.0;
  for (auto px : img.pixels) sum += px;
  const double mean = sum / n;

  std::vector<double> v(img.size());
  double sq = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = static_cast<double>(img.pixels[j]) - mean;
    sq += v[j] * v[j];
  }
  if (sq == 0.0) throw Error(ErrorCode::ConstantImage, "all pixels are equal");

  // Re-centre after scaling; the float mean of the scaled vector is then
  // zero to within a few ulps.
  const double inv = 1.0 / std::sqrt(sq);
  double resid = 0.0;
  for (double& x : v) {
    x *= inv;
    resid += x;
  }
  resid /= n;
  for (double& x : v) x -= resid;
  return PatternVector(std::move(v));
}

namespace {

WaveState encode_impl(const PatternVector& p, const EncodingParams& params, double phase_limit,
                      bool saturate) {
  CVec amps(p.size());
  if (params.mode == EncodingMode::Amplitude) {
    for (std::size_t j = 0; j < p.size(); ++j) amps[j] = p[j];
    return {std::move(amps), params.mode, params};
  }
  const double expected_amp = 1.0 / std::sqrt(static_cast<double>(p.size()));
  if (std::abs(params.amplitude - expected_amp) > 1e-15 * expected_amp)
    throw Error(ErrorCode::DimensionMismatch,
                "phase-mode amplitude does not match 1/sqrt(" + std::to_string(p.size()) + ")");
  for (std::size_t j = 0; j < p.size(); ++j) {
    double phi = params.phase_scale * p[j];
    if (std::abs(phi) > phase_limit) {
      if (!saturate)
        throw Error(ErrorCode::PhaseOverflow, "phase " + std::to_string(phi) + " at component " +
                                                  std::to_string(j) + " exceeds pi/2");
      phi = std::copysign(phase_limit, phi);
    }
    amps[j] = std::polar(params.amplitude, phi);
  }
  return {std::move(amps), params.mode, params};
}

}  // namespace

WaveState encode(const PatternVector& p, const EncodingParams& params) {
  // A hair of slack so the pattern that defines the dataset maximum passes.
  return encode_impl(p, params, std::numbers::pi / 2 * (1.0 + 1e-12), false);
}

WaveState encode_query(const PatternVector& p, const EncodingParams& params) {
  return encode_impl(p, params, std::numbers::pi, true);
}

std::vector<double> decode(const WaveState& w, const EncodingParams& params) {
  std::vector<double> out(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const cplx z = w.amplitudes[j];
    if (params.mode == EncodingMode::Amplitude) {
      out[j] = z.real();
    } else {
      out[j] = std::abs(z) < 1e-12 ? 0.0 : std::arg(z) / params.phase_scale;
    }
  }
  return out;
}

ImageRaw to_image(std::span<const double> values, std::size_t width, std::size_t height) {
  if (values.size() != width * height)
    throw Error(ErrorCode::DimensionMismatch, std::to_string(values.size()) + " values for " +
                                                  std::to_string(width) + "x" +
                                                  std::to_string(height) + " image");
  if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); }))
    throw Error(ErrorCode::InvalidArgument, "non-finite value in to_image");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  ImageRaw img(width, height, std::uint8_t{128});
  if (*hi == *lo) return img;
  const double scale = 255.0 / (*hi - *lo);
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double g = std::floor((values[j] - *lo) * scale + 0.5);
    img.pixels[j] = static_cast<std::uint8_t>(std::clamp(g, 0.0, 255.0));
  }
  return img;
}

}  // namespace holo
