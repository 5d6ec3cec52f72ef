#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "holo/encoding.hpp"
#include "holo/linalg.hpp"

namespace holo {

enum class Backend { Dense, Factored };

std::string_view to_string(Backend backend);
Backend parse_backend(std::string_view name);

inline constexpr std::uint64_t kDefaultDenseBudgetBytes = 2ULL << 30;  // 2 GiB

struct ImageShape {
  std::size_t width;
  std::size_t height;
};

/// The hologram: either the dense Hermitian matrix G = sum_k psi_k psi_k^H
/// (plus the stored states, kept for overlaps), or just the P stored states.
/// Immutable once built.
class MemoryMatrix {
 public:
  static MemoryMatrix store(std::vector<WaveState> states, Backend backend,
                            std::uint64_t dense_budget_bytes = kDefaultDenseBudgetBytes);

  Backend backend() const noexcept { return backend_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t p() const noexcept { return states_.size(); }
  EncodingMode mode() const noexcept { return params_.mode; }
  const EncodingParams& params() const noexcept { return params_; }
  const std::vector<WaveState>& states() const noexcept { return states_; }
  // Only for the dense backend.
  const CMat& dense() const;

  // Binary "HMEM1" format; see README for the layout.
  void save(const std::filesystem::path& path) const;
  static MemoryMatrix load(const std::filesystem::path& path,
                           std::uint64_t dense_budget_bytes = kDefaultDenseBudgetBytes);

 private:
  MemoryMatrix(Backend backend, std::size_t n, EncodingParams params,
               std::vector<WaveState> states, std::optional<CMat> dense)
      : backend_(backend), n_(n), params_(params), states_(std::move(states)),
        dense_(std::move(dense)) {}

  Backend backend_;
  std::size_t n_;
  EncodingParams params_;
  std::vector<WaveState> states_;
  std::optional<CMat> dense_;
};

struct RecallReport {
  WaveState output;
  std::vector<cplx> overlaps;  // <psi_k | input> for the pass that produced `output`
  std::size_t selected_index = 0;
  std::vector<double> decoded;
  ImageRaw reconstructed;
  // recall_iterated only: the unnormalized first-pass output, and
  // |<psi_k0|x>| for the unit-normalized state entering each pass followed
  // by the final state.
  std::optional<CVec> single_pass_output;
  std::vector<double> selected_overlap_history;
};

/// Lowest index wins ties.
std::size_t argmax_magnitude(std::span<const cplx> values);

// `shape` sets the reconstructed image geometry; defaults to N x 1.
RecallReport recall(const MemoryMatrix& m, const WaveState& query,
                    std::optional<ImageShape> shape = std::nullopt);
// Winner-take-all: output is the stored state psi_k0 itself.
RecallReport recall_clean(const MemoryMatrix& m, const WaveState& query,
                          std::optional<ImageShape> shape = std::nullopt);
// Repeated recall with L2 renormalization between passes.
RecallReport recall_iterated(const MemoryMatrix& m, const WaveState& query, int iters,
                             std::optional<ImageShape> shape = std::nullopt);

}  // namespace holo
