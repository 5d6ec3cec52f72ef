#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "holo/encoding.hpp"

namespace holo {

struct Dataset {
  std::vector<std::string> names;
  std::vector<ImageRaw> images;

  std::size_t size() const noexcept { return images.size(); }
  std::size_t width() const { return images.at(0).width; }
  std::size_t height() const { return images.at(0).height; }
};

// Every *.pgm in `dir`, sorted by file name. All images must share one
// resolution. Throws DatasetEmpty when nothing is found.
Dataset load_dataset(const std::filesystem::path& dir);
// Writes img_000.pgm, img_001.pgm, ...
void save_dataset(const std::vector<ImageRaw>& images, const std::filesystem::path& dir);

enum class SyntheticKind {
  Noise,   // i.i.d. uniform pixels
  Ridges,  // oriented, warped sinusoidal ridges (fingerprint-like)
  Blocks,  // dark strokes on a light background (pictogram-like)
};

std::string_view to_string(SyntheticKind kind);
SyntheticKind parse_kind(std::string_view name);

struct SyntheticOptions {
  std::size_t count = 10;
  std::size_t width = 64;
  std::size_t height = 64;
  std::uint64_t seed = 1;
  SyntheticKind kind = SyntheticKind::Noise;
  // Weight in [0,1) of one field shared by the whole set; raises within-set
  // similarity.
  double shared = 0.0;
  // Gram-Schmidt the zero-mean fields before quantizing to 8 bits.
  bool orthogonalize = false;
};

// Each image is min-max stretched to the full [0,255] range.
std::vector<ImageRaw> generate_synthetic(const SyntheticOptions& opts);

// Modified Gram-Schmidt (two sweeps) on the rows of `vectors`, in place.
// Throws InvalidArgument when the set is numerically rank deficient.
void orthonormalize(std::vector<std::vector<double>>& vectors);

}  // namespace holo
