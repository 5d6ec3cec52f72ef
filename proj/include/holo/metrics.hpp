#pragma once

#include <limits>
#include <span>
#include <vector>

#include "holo/encoding.hpp"
#include "holo/linalg.hpp"
#include "holo/memory.hpp"

namespace holo {

struct QualityScore {
  double rmse = 0.0;
  // +infinity when the images are identical.
  double psnr_db = std::numeric_limits<double>::infinity();

  bool perfect() const noexcept { return rmse == 0.0; }
};

QualityScore psnr(const ImageRaw& original, const ImageRaw& reconstructed);

struct GramStats {
  std::size_t count = 0;
  std::vector<cplx> gram;  // count x count, row-major
  double max_offdiag = 0.0;
  double mean_offdiag = 0.0;

  cplx operator()(std::size_t k, std::size_t l) const { return gram[k * count + l]; }
};

GramStats gram_stats(std::span<const WaveState> states);

double selection_accuracy(std::span<const RecallReport> reports,
                          std::span<const std::size_t> truth);

// Mean/std over finite PSNR values; infinite entries are counted, not averaged.
// With no finite entries the mean is +infinity and the std 0.
struct PsnrSummary {
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t finite = 0;
  std::size_t infinite = 0;
};

PsnrSummary summarize_psnr(std::span<const double> values);

}  // namespace holo
