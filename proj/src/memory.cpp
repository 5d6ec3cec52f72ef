#include "holo/memory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include "holo/error.hpp"
#include "holo/kernels.hpp"

namespace holo {

std::string_view to_string(Backend backend) {
  return backend == Backend::Dense ? "dense" : "factored";
}

Backend parse_backend(std::string_view name) {
  if (name == "dense") return Backend::Dense;
  if (name == "factored") return Backend::Factored;
  throw Error(ErrorCode::InvalidArgument, "unknown backend '" + std::string(name) + "'");
}

namespace {

void check_budget(std::size_t n, std::uint64_t budget) {
  const long double bytes = static_cast<long double>(n) * n * sizeof(cplx);
  if (bytes > static_cast<long double>(budget))
    throw Error(ErrorCode::MatrixTooLarge,
                "dense " + std::to_string(n) + "x" + std::to_string(n) + " matrix needs " +
                    std::to_string(static_cast<unsigned long long>(bytes)) +
                    " bytes, budget is " + std::to_string(budget) + "; use the factored backend");
}

// Row h of G accumulates psi_k[h] * conj(psi_k) for k = 0..P-1 in order,
// which is bit-for-bit what P successive outer_accumulate passes produce,
// but touches each row of G only once.
CMat build_dense(const std::vector<WaveState>& states, std::size_t n) {
  CMat g(n);
  const auto& k = kernels::active();
  for (std::size_t h = 0; h < n; ++h) {
    cplx* row = g.row(h).data();
    for (const auto& s : states) k.axpy_conj(s.amplitudes[h], s.amplitudes.span().data(), row, n);
  }
  return g;
}

void check_query(const MemoryMatrix& m, const WaveState& query) {
  if (query.size() != m.n())
    throw Error(ErrorCode::DimensionMismatch, "query has " + std::to_string(query.size()) +
                                                  " components, memory has " +
                                                  std::to_string(m.n()));
  if (query.mode != m.mode())
    throw Error(ErrorCode::MixedEncodingModes, "query is " + std::string(to_string(query.mode)) +
                                                   ", memory is " +
                                                   std::string(to_string(m.mode())));
}

std::vector<cplx> overlaps_of(const MemoryMatrix& m, const CVec& x) {
  std::vector<cplx> out;
  out.reserve(m.p());
  for (const auto& s : m.states()) out.push_back(inner(s.amplitudes, x));
  return out;
}

// One application of the recall map G x.
CVec apply(const MemoryMatrix& m, const CVec& x, const std::vector<cplx>& overlaps) {
  if (m.backend() == Backend::Dense) return matvec(m.dense(), x);
  CVec y(m.n());
  for (std::size_t k = 0; k < m.p(); ++k)
    kernels::axpy(overlaps[k], m.states()[k].amplitudes.span(), y.span());
  return y;
}

RecallReport empty_report(const MemoryMatrix& m) {
  return RecallReport{WaveState{CVec(m.n()), m.mode(), m.params()}, {}, 0, {}, {}, {}, {}};
}

void finish(const MemoryMatrix& m, RecallReport& r, std::optional<ImageShape> shape) {
  const ImageShape s = shape.value_or(ImageShape{m.n(), 1});
  r.decoded = decode(r.output, m.params());
  r.reconstructed = to_image(r.decoded, s.width, s.height);
}

}  // namespace

std::size_t argmax_magnitude(std::span<const cplx> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "argmax of empty list");
  std::size_t best = 0;
  double best_mag = std::abs(values[0]);
  for (std::size_t k = 1; k < values.size(); ++k) {
    const double mag = std::abs(values[k]);
    if (mag > best_mag) {
      best = k;
      best_mag = mag;
    }
  }
  return best;
}

MemoryMatrix MemoryMatrix::store(std::vector<WaveState> states, Backend backend,
                                 std::uint64_t dense_budget_bytes) {
  if (states.empty()) throw Error(ErrorCode::EmptyPatternSet, "nothing to store");
  const std::size_t n = states.front().size();
  const EncodingParams params = states.front().params;
  for (const auto& s : states) {
    if (s.size() != n)
      throw Error(ErrorCode::DimensionMismatch, "stored states differ in dimension");
    if (s.mode != params.mode || s.params != params)
      throw Error(ErrorCode::MixedEncodingModes, "stored states use different encodings");
    if (!s.amplitudes.all_finite())
      throw Error(ErrorCode::InvalidArgument, "stored state has non-finite components");
  }
  std::optional<CMat> dense;
  if (backend == Backend::Dense) {
    check_budget(n, dense_budget_bytes);
    dense = build_dense(states, n);
  }
  return MemoryMatrix(backend, n, params, std::move(states), std::move(dense));
}

const CMat& MemoryMatrix::dense() const {
  if (!dense_) throw Error(ErrorCode::InvalidArgument, "memory has no dense matrix");
  return *dense_;
}

RecallReport recall(const MemoryMatrix& m, const WaveState& query,
                    std::optional<ImageShape> shape) {
  check_query(m, query);
  RecallReport r = empty_report(m);
  r.overlaps = overlaps_of(m, query.amplitudes);
  r.selected_index = argmax_magnitude(r.overlaps);
  r.output.amplitudes = apply(m, query.amplitudes, r.overlaps);
  finish(m, r, shape);
  return r;
}

RecallReport recall_clean(const MemoryMatrix& m, const WaveState& query,
                          std::optional<ImageShape> shape) {
  check_query(m, query);
  RecallReport r = empty_report(m);
  r.overlaps = overlaps_of(m, query.amplitudes);
  r.selected_index = argmax_magnitude(r.overlaps);
  r.output = m.states()[r.selected_index];
  finish(m, r, shape);
  return r;
}

RecallReport recall_iterated(const MemoryMatrix& m, const WaveState& query, int iters,
                             std::optional<ImageShape> shape) {
  if (iters < 1) throw Error(ErrorCode::InvalidArgument, "iters must be >= 1");
  check_query(m, query);
  RecallReport r = empty_report(m);

  CVec x = query.amplitudes;
  std::optional<std::size_t> k0;
  for (int pass = 0; pass < iters; ++pass) {
    if (pass > 0) {
      const double nrm = x.norm();
      if (!(nrm >= 1e-300)) throw Error(ErrorCode::ZeroState, "state vanished before pass " +
                                                                  std::to_string(pass + 1));
      for (auto& z : x.span()) z /= nrm;
    }
    r.overlaps = overlaps_of(m, x);
    if (!k0) k0 = argmax_magnitude(r.overlaps);
    r.selected_overlap_history.push_back(std::abs(r.overlaps[*k0]) / x.norm());
    x = apply(m, x, r.overlaps);
    if (pass == 0) r.single_pass_output = x;
  }
  const double nrm = x.norm();
  if (!(nrm >= 1e-300)) throw Error(ErrorCode::ZeroState, "final state vanished");
  for (auto& z : x.span()) z /= nrm;
  r.selected_overlap_history.push_back(std::abs(inner(m.states()[*k0].amplitudes, x)));

  r.selected_index = argmax_magnitude(r.overlaps);
  r.output.amplitudes = std::move(x);
  finish(m, r, shape);
  return r;
}

// --- persistence -----------------------------------------------------------

namespace {

constexpr char kMagic[5] = {'H', 'M', 'E', 'M', '1'};

template <typename T>
void put_le(std::ostream& os, T value) {
  static_assert(sizeof(T) == 8);
  auto bits = std::bit_cast<std::uint64_t>(value);
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(bits >> (8 * i));
  os.write(reinterpret_cast<const char*>(buf), 8);
}

template <typename T>
T get_le(std::istream& is) {
  unsigned char buf[8];
  if (!is.read(reinterpret_cast<char*>(buf), 8))
    throw Error(ErrorCode::MalformedMemoryFile, "truncated memory file");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return std::bit_cast<T>(bits);
}

void put_vec(std::ostream& os, std::span<const cplx> v) {
  for (const cplx& z : v) {
    put_le(os, z.real());
    put_le(os, z.imag());
  }
}

void get_vec(std::istream& is, std::span<cplx> v) {
  for (cplx& z : v) {
    const double re = get_le<double>(is);
    const double im = get_le<double>(is);
    z = {re, im};
  }
}

}  // namespace

void MemoryMatrix::save(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  os.write(kMagic, sizeof kMagic);
  os.put(static_cast<char>(params_.mode));
  put_le<std::uint64_t>(os, n_);
  put_le<std::uint64_t>(os, states_.size());
  put_le<double>(os, params_.phase_scale);
  if (dense_) put_vec(os, dense_->data());
  for (const auto& s : states_) put_vec(os, s.amplitudes.span());
  if (!os) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

// The header carries no backend tag; the payload length tells the two
// layouts apart (n^2 + p*n pairs for dense, p*n for factored).
MemoryMatrix MemoryMatrix::load(const std::filesystem::path& path,
                                std::uint64_t dense_budget_bytes) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  char magic[5];
  if (!is.read(magic, 5) || std::memcmp(magic, kMagic, 5) != 0)
    throw Error(ErrorCode::MalformedMemoryFile, path.string() + ": bad magic");
  const int mode_byte = is.get();
  if (mode_byte != 0 && mode_byte != 1)
    throw Error(ErrorCode::MalformedMemoryFile, path.string() + ": bad mode byte");
  const auto mode = static_cast<EncodingMode>(mode_byte);
  const auto n = get_le<std::uint64_t>(is);
  const auto p = get_le<std::uint64_t>(is);
  const auto beta = get_le<double>(is);
  if (n == 0 || p == 0) throw Error(ErrorCode::MalformedMemoryFile, "zero n or p");

  const std::streamoff header = 5 + 1 + 8 + 8 + 8;
  is.seekg(0, std::ios::end);
  const auto payload = static_cast<unsigned long long>(static_cast<std::streamoff>(is.tellg()) - header);
  is.seekg(header);
  const unsigned long long pair = 16;
  const unsigned long long factored_bytes = pair * p * n;
  const unsigned long long dense_bytes = pair * n * n + factored_bytes;
  Backend backend;
  if (payload == factored_bytes) backend = Backend::Factored;
  else if (payload == dense_bytes) backend = Backend::Dense;
  else throw Error(ErrorCode::MalformedMemoryFile, path.string() + ": payload size " +
                                                        std::to_string(payload) + " fits neither layout");

  EncodingParams params = mode == EncodingMode::Phase ? EncodingParams::phase_mode(n, beta)
                                                      : EncodingParams{mode, 1.0, beta};
  std::optional<CMat> dense;
  if (backend == Backend::Dense) {
    check_budget(n, dense_budget_bytes);
    dense.emplace(n);
    get_vec(is, dense->data());
  }
  std::vector<WaveState> states;
  states.reserve(p);
  for (std::uint64_t k = 0; k < p; ++k) {
    CVec v(n);
    get_vec(is, v.span());
    states.push_back({std::move(v), mode, params});
  }
  return MemoryMatrix(backend, n, params, std::move(states), std::move(dense));
}

}  // namespace holo
