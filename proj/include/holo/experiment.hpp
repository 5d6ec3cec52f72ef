#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holo/corruption.hpp"
#include "holo/dataset.hpp"
#include "holo/memory.hpp"
#include "holo/metrics.hpp"

namespace holo {

struct RunConfig {
  std::filesystem::path dataset_dir;
  EncodingMode mode = EncodingMode::Amplitude;
  Backend backend = Backend::Factored;
  CorruptionSpec corruption;
  std::vector<std::size_t> p_values;
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path output_dir = ".";
  bool clean = false;
  int iters = 1;
  std::uint64_t dense_budget_bytes = kDefaultDenseBudgetBytes;

  // p_values ascending, each in [1, dataset_size]; seeds nonempty; iters >= 1.
  void validate(std::size_t dataset_size) const;
};

/// Ordered key=value record written next to every run's outputs.
class Metadata {
 public:
  void set(std::string key, std::string value);
  void set(std::string key, double value);
  void set(std::string key, std::uint64_t value);
  void write(const std::filesystem::path& path) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

void describe(const RunConfig& cfg, Metadata& md);

// preprocess -> dataset-wide encoding params -> encode -> store.
MemoryMatrix build_memory(std::span<const ImageRaw> images, EncodingMode mode, Backend backend,
                          std::uint64_t dense_budget_bytes = kDefaultDenseBudgetBytes);

// Query image through preprocess/encode_query and the recall variant the
// config selects (clean, iterated, or plain).
RecallReport recall_image(const MemoryMatrix& m, const ImageRaw& query, const RunConfig& cfg);

struct RecallOutcome {
  RecallReport report;
  ImageRaw corrupted_query;
  std::optional<QualityScore> quality;  // vs. truth, when given
};

// Uses `memory_path` when set, otherwise builds the memory from cfg.dataset_dir.
RecallOutcome run_recall(const RunConfig& cfg, const std::filesystem::path& query_path,
                         const std::optional<std::filesystem::path>& truth_path,
                         const std::optional<std::filesystem::path>& memory_path,
                         std::ostream& log);

struct SweepRow {
  std::size_t p = 0;
  std::string corruption;
  double psnr_mean = 0.0;
  double psnr_std = 0.0;
  double accuracy = 0.0;
  std::size_t seed_count = 0;
  std::size_t psnr_inf_count = 0;
};

inline constexpr const char* kSweepCsvHeader = "p,corruption,psnr_mean,psnr_std,accuracy,seed_count";

// In-memory sweep over already-loaded images; no files touched.
std::vector<SweepRow> sweep_images(std::span<const ImageRaw> images, const RunConfig& cfg);
std::string sweep_csv(const std::vector<SweepRow>& rows);
// Loads cfg.dataset_dir, sweeps, writes sweep.csv and sweep_metadata.txt into cfg.output_dir.
std::vector<SweepRow> run_sweep(const RunConfig& cfg, std::ostream& log);

struct MixedQuery {
  std::size_t set = 0;
  std::uint64_t seed = 0;
  std::size_t truth = 0;  // global index into the stored block layout
  std::size_t selected = 0;
  bool in_block = false;
  double psnr_db = 0.0;
};

struct MixedSetRow {
  std::size_t set = 0;
  std::size_t stored = 0;
  std::size_t queries = 0;
  double accuracy = 0.0;
  double in_block = 0.0;
  double psnr_mean = 0.0;
  double psnr_std = 0.0;
};

struct MixedReport {
  std::vector<std::size_t> block_offsets;  // first stored index of each set
  std::vector<MixedSetRow> sets;
  std::vector<MixedQuery> queries;
  std::vector<RecallReport> reports;
};

// Stores up to `per_set` images of every set back to back, then queries each
// set with corrupted versions of its own images (one query per seed).
MixedReport mixed_images(const std::vector<std::vector<ImageRaw>>& sets, const RunConfig& cfg,
                         std::size_t per_set = 10);
MixedReport run_mixed_set(const RunConfig& cfg,
                          const std::array<std::filesystem::path, 3>& set_dirs, std::ostream& log,
                          std::size_t per_set = 10);

// Six decimals, or "inf" for +infinity (the CSV convention).
std::string format_fixed(double v);

}  // namespace holo
