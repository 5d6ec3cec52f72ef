#include "holo/corruption.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "holo/error.hpp"
#include "holo/rng.hpp"

namespace holo {
namespace {

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0))
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must lie in [0,1]");
}

std::string format_amount(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_amount(std::string_view s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error(ErrorCode::InvalidArgument, "bad corruption amount '" + std::string(s) + "'");
  return v;
}

}  // namespace

CorruptionSpec CorruptionSpec::occlusion(double fraction, std::uint64_t seed) {
  check_unit(fraction, "occlusion fraction");
  return {Kind::Occlusion, fraction, seed};
}

CorruptionSpec CorruptionSpec::salt_pepper(double rate, std::uint64_t seed) {
  check_unit(rate, "salt-and-pepper rate");
  return {Kind::SaltPepper, rate, seed};
}

CorruptionSpec CorruptionSpec::parse(std::string_view text) {
  if (text == "none" || text.empty()) return none();
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos)
    throw Error(ErrorCode::InvalidArgument, "bad corruption spec '" + std::string(text) + "'");
  const auto kind = text.substr(0, c1);
  auto rest = text.substr(c1 + 1);
  std::uint64_t seed = 0;
  if (const auto c2 = rest.find(':'); c2 != std::string_view::npos) {
    auto seed_part = rest.substr(c2 + 1);
    rest = rest.substr(0, c2);
    if (!seed_part.starts_with("seed="))
      throw Error(ErrorCode::InvalidArgument, "expected seed=<n> in '" + std::string(text) + "'");
    seed_part.remove_prefix(5);
    auto res = std::from_chars(seed_part.data(), seed_part.data() + seed_part.size(), seed);
    if (res.ec != std::errc{} || res.ptr != seed_part.data() + seed_part.size())
      throw Error(ErrorCode::InvalidArgument, "bad seed in '" + std::string(text) + "'");
  }
  const double amount = parse_amount(rest);
  if (kind == "occlude") return occlusion(amount, seed);
  if (kind == "sp") return salt_pepper(amount, seed);
  throw Error(ErrorCode::InvalidArgument, "unknown corruption kind '" + std::string(kind) + "'");
}

std::string CorruptionSpec::descriptor() const {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::Occlusion: return "occlude:" + format_amount(amount);
    case Kind::SaltPepper: return "sp:" + format_amount(amount);
  }
  return "none";
}

std::string CorruptionSpec::to_string() const {
  if (kind == Kind::None) return "none";
  return descriptor() + ":seed=" + std::to_string(seed);
}

Rect occlusion_rect(std::size_t width, std::size_t height, double fraction, std::uint64_t seed) {
  check_unit(fraction, "occlusion fraction");
  const auto target = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(width) * static_cast<double>(height)));
  if (target == 0) return {0, 0, 0, 0};
  auto rh = static_cast<std::size_t>(std::llround(static_cast<double>(height) * std::sqrt(fraction)));
  rh = std::clamp<std::size_t>(rh, 1, height);
  auto rw = static_cast<std::size_t>(
      std::llround(static_cast<double>(target) / static_cast<double>(rh)));
  rw = std::clamp<std::size_t>(rw, 1, width);
  SplitMix64 rng(seed);
  const std::size_t x0 = rng.below(width - rw + 1);
  const std::size_t y0 = rng.below(height - rh + 1);
  return {x0, y0, rw, rh};
}

ImageRaw occlude(const ImageRaw& img, double fraction, std::uint64_t seed) {
  const Rect r = occlusion_rect(img.width, img.height, fraction, seed);
  ImageRaw out = img;
  for (std::size_t y = r.y0; y < r.y0 + r.height; ++y)
    for (std::size_t x = r.x0; x < r.x0 + r.width; ++x) out.at(x, y) = 0;
  return out;
}

ImageRaw salt_pepper(const ImageRaw& img, double rate, std::uint64_t seed) {
  check_unit(rate, "salt-and-pepper rate");
  SplitMix64 rng(seed);
  ImageRaw out = img;
  for (auto& px : out.pixels) {
    if (rng.uniform() < rate) px = (rng.next() & 1U) ? 255 : 0;
  }
  return out;
}

ImageRaw apply(const ImageRaw& img, const CorruptionSpec& spec) {
  switch (spec.kind) {
    case CorruptionSpec::Kind::None: return img;
    case CorruptionSpec::Kind::Occlusion: return occlude(img, spec.amount, spec.seed);
    case CorruptionSpec::Kind::SaltPepper: return salt_pepper(img, spec.amount, spec.seed);
  }
  return img;
}

}  // namespace holo
