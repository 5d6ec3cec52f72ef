#include "holo/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "holo/error.hpp"
#include "holo/pgm.hpp"
#include "holo/rng.hpp"

namespace holo {

namespace fs = std::filesystem;

Dataset load_dataset(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw Error(ErrorCode::IoError, dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
  }
  if (files.empty()) throw Error(ErrorCode::DatasetEmpty, "no .pgm files in " + dir.string());
  std::sort(files.begin(), files.end());

  Dataset ds;
  for (const auto& f : files) {
    ImageRaw img = read_pgm(f);
    if (!ds.images.empty() && (img.width != ds.width() || img.height != ds.height()))
      throw Error(ErrorCode::DimensionMismatch,
                  f.string() + " is " + std::to_string(img.width) + "x" +
                      std::to_string(img.height) + ", dataset is " + std::to_string(ds.width()) +
                      "x" + std::to_string(ds.height()));
    ds.names.push_back(f.filename().string());
    ds.images.push_back(std::move(img));
  }
  return ds;
}

void save_dataset(const std::vector<ImageRaw>& images, const fs::path& dir) {
  fs::create_directories(dir);
  for (std::size_t i = 0; i < images.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "img_%03zu.pgm", i);
    write_pgm(images[i], dir / name);
  }
}

std::string_view to_string(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::Noise: return "noise";
    case SyntheticKind::Ridges: return "ridges";
    case SyntheticKind::Blocks: return "blocks";
  }
  return "noise";
}

SyntheticKind parse_kind(std::string_view name) {
  if (name == "noise") return SyntheticKind::Noise;
  if (name == "ridges") return SyntheticKind::Ridges;
  if (name == "blocks") return SyntheticKind::Blocks;
  throw Error(ErrorCode::InvalidArgument, "unknown synthetic kind '" + std::string(name) + "'");
}

namespace {

using Field = std::vector<double>;

Field noise_field(std::size_t w, std::size_t h, SplitMix64& rng) {
  Field f(w * h);
  for (auto& v : f) v = rng.uniform();
  return f;
}

Field ridge_field(std::size_t w, std::size_t h, SplitMix64& rng) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double theta = rng.uniform() * std::numbers::pi;
  const double period = 3.0 + 5.0 * rng.uniform();  // pixels per ridge
  const double phase = rng.uniform() * two_pi;
  const double warp = 2.0 + 4.0 * rng.uniform();
  const double warp_freq = (0.5 + rng.uniform()) / static_cast<double>(std::max(w, h));
  const double cx = rng.uniform() * static_cast<double>(w);
  const double cy = rng.uniform() * static_cast<double>(h);
  Field f(w * h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      const double dx = static_cast<double>(x) - cx, dy = static_cast<double>(y) - cy;
      const double along = dx * std::cos(theta) + dy * std::sin(theta);
      const double bend = warp * std::sin(two_pi * warp_freq * (dx * dx + dy * dy) / 8.0);
      f[y * w + x] = std::sin(two_pi * (along + bend) / period + phase) + 0.15 * rng.normal();
    }
  return f;
}

Field block_field(std::size_t w, std::size_t h, SplitMix64& rng) {
  Field f(w * h, 1.0);
  const std::size_t strokes = 4 + rng.below(5);
  const std::size_t thick = std::max<std::size_t>(1, std::min(w, h) / 16);
  for (std::size_t s = 0; s < strokes; ++s) {
    const bool horizontal = (rng.next() & 1U) != 0;
    const std::size_t len_max = horizontal ? w : h;
    const std::size_t len = len_max / 4 + rng.below(len_max / 2 + 1);
    const std::size_t sw = horizontal ? len : thick;
    const std::size_t sh = horizontal ? thick : len;
    const std::size_t x0 = rng.below(w - std::min(sw, w) + 1);
    const std::size_t y0 = rng.below(h - std::min(sh, h) + 1);
    for (std::size_t y = y0; y < std::min(h, y0 + sh); ++y)
      for (std::size_t x = x0; x < std::min(w, x0 + sw); ++x) f[y * w + x] = 0.0;
  }
  for (auto& v : f) v += 0.05 * rng.normal();
  return f;
}

Field make_field(SyntheticKind kind, std::size_t w, std::size_t h, SplitMix64& rng) {
  switch (kind) {
    case SyntheticKind::Noise: return noise_field(w, h, rng);
    case SyntheticKind::Ridges: return ridge_field(w, h, rng);
    case SyntheticKind::Blocks: return block_field(w, h, rng);
  }
  return noise_field(w, h, rng);
}

void center(Field& f) {
  double mean = 0.0;
  for (double v : f) mean += v;
  mean /= static_cast<double>(f.size());
  for (double& v : f) v -= mean;
}

}  // namespace

void orthonormalize(std::vector<std::vector<double>>& vectors) {
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    auto& v = vectors[i];
    const double before = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (std::size_t k = 0; k < i; ++k) {
        const auto& u = vectors[k];
        if (u.size() != v.size())
          throw Error(ErrorCode::DimensionMismatch, "orthonormalize: ragged input");
        const double d = std::inner_product(u.begin(), u.end(), v.begin(), 0.0);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= d * u[j];
      }
    }
    const double nrm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (!(nrm > 1e-10 * before) || nrm == 0.0)
      throw Error(ErrorCode::InvalidArgument,
                  "orthonormalize: vector " + std::to_string(i) + " is linearly dependent");
    for (double& x : v) x /= nrm;
  }
}

std::vector<ImageRaw> generate_synthetic(const SyntheticOptions& opts) {
  if (opts.count == 0 || opts.width == 0 || opts.height == 0)
    throw Error(ErrorCode::InvalidArgument, "synthetic dataset needs count, width, height >= 1");
  if (!(opts.shared >= 0.0 && opts.shared < 1.0))
    throw Error(ErrorCode::InvalidArgument, "shared weight must lie in [0,1)");
  const std::size_t n = opts.width * opts.height;
  if (opts.orthogonalize && opts.count >= n)
    throw Error(ErrorCode::InvalidArgument, "cannot orthogonalize more than N-1 zero-mean images");

  SplitMix64 rng(opts.seed);
  std::vector<Field> fields;
  Field base;
  if (opts.shared > 0.0) {
    base = make_field(opts.kind, opts.width, opts.height, rng);
    center(base);
  }
  for (std::size_t i = 0; i < opts.count; ++i) {
    Field f = make_field(opts.kind, opts.width, opts.height, rng);
    center(f);
    if (opts.shared > 0.0)
      for (std::size_t j = 0; j < n; ++j) f[j] = opts.shared * base[j] + (1.0 - opts.shared) * f[j];
    fields.push_back(std::move(f));
  }
  if (opts.orthogonalize) orthonormalize(fields);

  std::vector<ImageRaw> images;
  images.reserve(fields.size());
  for (const auto& f : fields) images.push_back(to_image(f, opts.width, opts.height));
  return images;
}

}  // namespace holo
