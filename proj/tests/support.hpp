#pragma once

// Test-only helpers: seeded random data and naive reference loops that stay
// independent of the SIMD kernels under test.

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "holo/encoding.hpp"
#include "holo/linalg.hpp"
#include "holo/rng.hpp"

namespace holo::test {

inline CVec random_cvec(std::size_t n, SplitMix64& rng) {
  CVec v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = {rng.normal(), rng.normal()};
  return v;
}

inline CVec random_unit_cvec(std::size_t n, SplitMix64& rng) {
  CVec v = random_cvec(n, rng);
  const double nrm = v.norm();
  for (auto& z : v.span()) z /= nrm;
  return v;
}

inline CMat random_hermitian(std::size_t n, SplitMix64& rng) {
  CMat m(n);
  for (std::size_t h = 0; h < n; ++h) {
    m(h, h) = rng.normal();
    for (std::size_t j = h + 1; j < n; ++j) {
      m(h, j) = {rng.normal(), rng.normal()};
      m(j, h) = std::conj(m(h, j));
    }
  }
  return m;
}

inline ImageRaw random_image(std::size_t w, std::size_t h, SplitMix64& rng) {
  std::vector<std::uint8_t> px(w * h);
  for (auto& p : px) p = static_cast<std::uint8_t>(rng.below(256));
  return ImageRaw(w, h, std::move(px));
}

inline PatternVector random_pattern(std::size_t n, SplitMix64& rng) {
  std::vector<double> v(n);
  double mean = 0.0;
  for (auto& x : v) {
    x = rng.normal();
    mean += x;
  }
  mean /= static_cast<double>(n);
  double sq = 0.0;
  for (auto& x : v) {
    x -= mean;
    sq += x * x;
  }
  for (auto& x : v) x /= std::sqrt(sq);
  return PatternVector(std::move(v));
}

// Plain double loop, std::complex arithmetic.
inline std::vector<cplx> naive_matvec(const CMat& m, const CVec& x) {
  std::vector<cplx> y(x.size());
  for (std::size_t h = 0; h < x.size(); ++h) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += m(h, j) * x[j];
    y[h] = acc;
  }
  return y;
}

inline cplx naive_inner(const CVec& a, const CVec& b) {
  cplx acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::conj(a[j]) * b[j];
  return acc;
}

inline double max_diff(const CVec& a, const CVec& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
  return worst;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() /
           ("holomem_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

}  // namespace holo::test
