#include "holo/metrics.hpp"

#include <cmath>
#include <string>

#include "holo/error.hpp"

namespace holo {

QualityScore psnr(const ImageRaw& original, const ImageRaw& reconstructed) {
  if (original.width != reconstructed.width || original.height != reconstructed.height ||
      original.size() != reconstructed.size())
    throw Error(ErrorCode::DimensionMismatch, "psnr: image sizes differ");
  if (original.size() == 0) throw Error(ErrorCode::EmptyInput, "psnr: empty images");
  double sq = 0.0;
  for (std::size_t j = 0; j < original.size(); ++j) {
    const double d = static_cast<double>(original.pixels[j]) - reconstructed.pixels[j];
    sq += d * d;
  }
  QualityScore q;
  q.rmse = std::sqrt(sq / static_cast<double>(original.size()));
  if (q.rmse > 0.0) q.psnr_db = 20.0 * std::log10(255.0 / q.rmse);
  return q;
}

GramStats gram_stats(std::span<const WaveState> states) {
  if (states.empty()) throw Error(ErrorCode::EmptyInput, "gram_stats: no states");
  const std::size_t p = states.size();
  for (const auto& s : states)
    if (s.size() != states.front().size())
      throw Error(ErrorCode::DimensionMismatch, "gram_stats: states differ in dimension");

  GramStats g;
  g.count = p;
  g.gram.resize(p * p);
  for (std::size_t k = 0; k < p; ++k) {
    g.gram[k * p + k] = inner(states[k].amplitudes, states[k].amplitudes);
    for (std::size_t l = k + 1; l < p; ++l) {
      const cplx v = inner(states[k].amplitudes, states[l].amplitudes);
      g.gram[k * p + l] = v;
      g.gram[l * p + k] = std::conj(v);
    }
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t l = 0; l < p; ++l) {
      if (k == l) continue;
      const double mag = std::abs(g.gram[k * p + l]);
      sum += mag;
      g.max_offdiag = std::max(g.max_offdiag, mag);
    }
  if (p > 1) g.mean_offdiag = sum / static_cast<double>(p * (p - 1));
  return g;
}

double selection_accuracy(std::span<const RecallReport> reports,
                          std::span<const std::size_t> truth) {
  if (reports.size() != truth.size())
    throw Error(ErrorCode::LengthMismatch, std::to_string(reports.size()) + " reports vs " +
                                               std::to_string(truth.size()) + " labels");
  if (reports.empty()) throw Error(ErrorCode::EmptyInput, "selection_accuracy: no reports");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < reports.size(); ++i)
    if (reports[i].selected_index == truth[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(reports.size());
}

PsnrSummary summarize_psnr(std::span<const double> values) {
  PsnrSummary s;
  double sum = 0.0;
  for (double v : values) {
    if (std::isinf(v)) {
      ++s.infinite;
    } else {
      ++s.finite;
      sum += v;
    }
  }
  if (s.finite == 0) {
    s.mean = std::numeric_limits<double>::infinity();
    return s;
  }
  s.mean = sum / static_cast<double>(s.finite);
  double var = 0.0;
  for (double v : values)
    if (!std::isinf(v)) var += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(var / static_cast<double>(s.finite));
  return s;
}

}  // namespace holo
