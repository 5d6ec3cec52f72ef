#include "holo/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <tuple>

#include "holo/error.hpp"
#include "holo/kernels.hpp"
#include "holo/pgm.hpp"
#include "holo/rng.hpp"

namespace holo {

namespace fs = std::filesystem;

void RunConfig::validate(std::size_t dataset_size) const {
  if (dataset_size == 0) throw Error(ErrorCode::DatasetEmpty, "dataset is empty");
  if (!std::is_sorted(p_values.begin(), p_values.end()))
    throw Error(ErrorCode::InvalidArgument, "p_values must be ascending");
  for (auto p : p_values)
    if (p < 1 || p > dataset_size)
      throw Error(ErrorCode::InvalidArgument, "p=" + std::to_string(p) + " outside [1, " +
                                                  std::to_string(dataset_size) + "]");
  if (seeds.empty()) throw Error(ErrorCode::InvalidArgument, "at least one seed is required");
  if (iters < 1) throw Error(ErrorCode::InvalidArgument, "iters must be >= 1");
}

std::string format_fixed(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void Metadata::set(std::string key, std::string value) {
  for (auto& [k, v] : entries_)
    if (k == key) {
      v = std::move(value);
      return;
    }
  entries_.emplace_back(std::move(key), std::move(value));
}

void Metadata::set(std::string key, double value) {
  char buf[64];
  if (std::isinf(value)) std::snprintf(buf, sizeof buf, "%s", value > 0 ? "inf" : "-inf");
  else std::snprintf(buf, sizeof buf, "%.17g", value);
  set(std::move(key), std::string(buf));
}

void Metadata::set(std::string key, std::uint64_t value) {
  set(std::move(key), std::to_string(value));
}

void Metadata::write(const fs::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
}

namespace {

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(xs[i]);
  }
  return s;
}

}  // namespace

void describe(const RunConfig& cfg, Metadata& md) {
  md.set("dataset_dir", cfg.dataset_dir.string());
  md.set("mode", std::string(to_string(cfg.mode)));
  md.set("backend", std::string(to_string(cfg.backend)));
  md.set("corruption", cfg.corruption.to_string());
  md.set("p_values", join(cfg.p_values));
  md.set("seeds", join(cfg.seeds));
  md.set("clean", std::string(cfg.clean ? "true" : "false"));
  md.set("iters", static_cast<std::uint64_t>(cfg.iters));
  md.set("dense_budget_bytes", cfg.dense_budget_bytes);
  md.set("simd", std::string(kernels::to_string(kernels::active().isa)));
}

MemoryMatrix build_memory(std::span<const ImageRaw> images, EncodingMode mode, Backend backend,
                          std::uint64_t dense_budget_bytes) {
  if (images.empty()) throw Error(ErrorCode::EmptyPatternSet, "no images to store");
  std::vector<PatternVector> patterns;
  patterns.reserve(images.size());
  for (const auto& img : images) patterns.push_back(preprocess(img));
  const EncodingParams params = EncodingParams::for_dataset(mode, patterns);
  std::vector<WaveState> states;
  states.reserve(patterns.size());
  for (const auto& p : patterns) states.push_back(encode(p, params));
  return MemoryMatrix::store(std::move(states), backend, dense_budget_bytes);
}

RecallReport recall_image(const MemoryMatrix& m, const ImageRaw& query, const RunConfig& cfg) {
  const WaveState q = encode_query(preprocess(query), m.params());
  const ImageShape shape{query.width, query.height};
  if (cfg.clean) return recall_clean(m, q, shape);
  if (cfg.iters > 1) return recall_iterated(m, q, cfg.iters, shape);
  return recall(m, q, shape);
}

RecallOutcome run_recall(const RunConfig& cfg, const fs::path& query_path,
                         const std::optional<fs::path>& truth_path,
                         const std::optional<fs::path>& memory_path, std::ostream& log) {
  if (cfg.iters < 1) throw Error(ErrorCode::InvalidArgument, "iters must be >= 1");
  Metadata md;
  describe(cfg, md);

  std::optional<MemoryMatrix> memory;
  std::vector<std::string> names;
  if (memory_path) {
    memory = MemoryMatrix::load(*memory_path, cfg.dense_budget_bytes);
    md.set("memory_file", memory_path->string());
  } else {
    Dataset ds = load_dataset(cfg.dataset_dir);
    names = ds.names;
    memory = build_memory(ds.images, cfg.mode, cfg.backend, cfg.dense_budget_bytes);
  }
  const ImageRaw query = read_pgm(query_path);
  if (query.size() != memory->n())
    throw Error(ErrorCode::DimensionMismatch,
                "query has " + std::to_string(query.size()) + " pixels, memory stores " +
                    std::to_string(memory->n()));

  ImageRaw corrupted = apply(query, cfg.corruption);
  RecallReport report = recall_image(*memory, corrupted, cfg);
  RecallOutcome out{std::move(report), std::move(corrupted), std::nullopt};
  if (truth_path) out.quality = psnr(read_pgm(*truth_path), out.report.reconstructed);

  fs::create_directories(cfg.output_dir);
  write_pgm(out.corrupted_query, cfg.output_dir / "query_corrupted.pgm");
  write_pgm(out.report.reconstructed, cfg.output_dir / "reconstructed.pgm");

  md.set("query", query_path.string());
  md.set("n", static_cast<std::uint64_t>(memory->n()));
  md.set("p", static_cast<std::uint64_t>(memory->p()));
  md.set("phase_scale", memory->params().phase_scale);
  md.set("selected_index", static_cast<std::uint64_t>(out.report.selected_index));
  if (!names.empty()) md.set("selected_name", names[out.report.selected_index]);
  if (cfg.corruption.kind == CorruptionSpec::Kind::Occlusion) {
    const Rect r = occlusion_rect(query.width, query.height, cfg.corruption.amount,
                                  cfg.corruption.seed);
    md.set("occlusion_rect", std::to_string(r.x0) + "," + std::to_string(r.y0) + "," +
                                 std::to_string(r.width) + "," + std::to_string(r.height));
  }
  if (out.quality) {
    md.set("rmse", out.quality->rmse);
    md.set("psnr_db", out.quality->psnr_db);
  }
  md.write(cfg.output_dir / "run_metadata.txt");

  log << "overlaps:\n";
  char buf[128];
  for (std::size_t k = 0; k < out.report.overlaps.size(); ++k) {
    const cplx z = out.report.overlaps[k];
    std::snprintf(buf, sizeof buf, "  %zu  %+.6e %+.6ei  |%.6e|\n", k, z.real(), z.imag(),
                  std::abs(z));
    log << buf;
  }
  log << "selected_index=" << out.report.selected_index;
  if (!names.empty()) log << " (" << names[out.report.selected_index] << ")";
  log << '\n';
  if (out.quality) log << "rmse=" << format_fixed(out.quality->rmse)
                       << " psnr_db=" << format_fixed(out.quality->psnr_db) << '\n';
  return out;
}

// --- sweep -----------------------------------------------------------------

std::vector<SweepRow> sweep_images(std::span<const ImageRaw> images, const RunConfig& cfg) {
  cfg.validate(images.size());
  std::vector<SweepRow> rows;
  for (const std::size_t p : cfg.p_values) {
    const MemoryMatrix m = build_memory(images.first(p), cfg.mode, cfg.backend,
                                        cfg.dense_budget_bytes);
    std::vector<double> psnrs;
    std::size_t hits = 0;
    for (const std::uint64_t seed : cfg.seeds) {
      SplitMix64 rng(seed);
      const std::size_t target = rng.below(p);
      const ImageRaw query = apply(images[target], cfg.corruption.with_seed(seed));
      const RecallReport r = recall_image(m, query, cfg);
      if (r.selected_index == target) ++hits;
      psnrs.push_back(psnr(images[target], r.reconstructed).psnr_db);
    }
    const PsnrSummary s = summarize_psnr(psnrs);
    rows.push_back({.p = p,
                    .corruption = cfg.corruption.descriptor(),
                    .psnr_mean = s.mean,
                    .psnr_std = s.stddev,
                    .accuracy = static_cast<double>(hits) / static_cast<double>(cfg.seeds.size()),
                    .seed_count = cfg.seeds.size(),
                    .psnr_inf_count = s.infinite});
  }
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.p, a.corruption) < std::tie(b.p, b.corruption);
  });
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows)
    os << r.p << ',' << r.corruption << ',' << format_fixed(r.psnr_mean) << ','
       << format_fixed(r.psnr_std) << ',' << format_fixed(r.accuracy) << ',' << r.seed_count
       << '\n';
  return os.str();
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg, std::ostream& log) {
  const Dataset ds = load_dataset(cfg.dataset_dir);
  RunConfig effective = cfg;
  if (effective.p_values.empty())
    for (std::size_t p = 1; p <= ds.size(); ++p) effective.p_values.push_back(p);
  const auto rows = sweep_images(ds.images, effective);

  fs::create_directories(cfg.output_dir);
  {
    std::ofstream csv(cfg.output_dir / "sweep.csv", std::ios::binary | std::ios::trunc);
    if (!csv) throw Error(ErrorCode::IoError, "cannot write sweep.csv");
    csv << sweep_csv(rows);
  }
  Metadata md;
  describe(effective, md);
  md.set("width", static_cast<std::uint64_t>(ds.width()));
  md.set("height", static_cast<std::uint64_t>(ds.height()));
  md.set("dataset_size", static_cast<std::uint64_t>(ds.size()));
  md.set("query_rule", std::string("target=splitmix64(seed).next()%p; corruption seed=seed"));
  for (const auto& r : rows)
    md.set("psnr_inf_count.p" + std::to_string(r.p), static_cast<std::uint64_t>(r.psnr_inf_count));
  md.write(cfg.output_dir / "sweep_metadata.txt");

  log << sweep_csv(rows);
  return rows;
}

// --- mixed set -------------------------------------------------------------

MixedReport mixed_images(const std::vector<std::vector<ImageRaw>>& sets, const RunConfig& cfg,
                         std::size_t per_set) {
  if (sets.empty()) throw Error(ErrorCode::DatasetEmpty, "no sets given");
  if (per_set == 0) throw Error(ErrorCode::InvalidArgument, "per_set must be >= 1");
  if (cfg.seeds.empty()) throw Error(ErrorCode::InvalidArgument, "at least one seed is required");

  MixedReport rep;
  std::vector<ImageRaw> stored;
  std::vector<std::size_t> counts;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    if (sets[s].empty())
      throw Error(ErrorCode::DatasetEmpty, "set " + std::to_string(s) + " is empty");
    rep.block_offsets.push_back(stored.size());
    const std::size_t take = std::min(per_set, sets[s].size());
    counts.push_back(take);
    for (std::size_t i = 0; i < take; ++i) {
      if (!stored.empty() && (sets[s][i].width != stored.front().width ||
                              sets[s][i].height != stored.front().height))
        throw Error(ErrorCode::DimensionMismatch, "sets differ in image resolution");
      stored.push_back(sets[s][i]);
    }
  }
  const MemoryMatrix m = build_memory(stored, cfg.mode, cfg.backend, cfg.dense_budget_bytes);

  for (std::size_t s = 0; s < sets.size(); ++s) {
    std::vector<double> psnrs;
    std::size_t hits = 0, in_block = 0;
    for (const std::uint64_t seed : cfg.seeds) {
      SplitMix64 rng(seed);
      const std::size_t local = rng.below(counts[s]);
      const std::size_t truth = rep.block_offsets[s] + local;
      const ImageRaw query = apply(stored[truth], cfg.corruption.with_seed(seed));
      RecallReport r = recall_image(m, query, cfg);
      const bool inside = r.selected_index >= rep.block_offsets[s] &&
                          r.selected_index < rep.block_offsets[s] + counts[s];
      const double db = psnr(stored[truth], r.reconstructed).psnr_db;
      hits += r.selected_index == truth;
      in_block += inside;
      psnrs.push_back(db);
      rep.queries.push_back({s, seed, truth, r.selected_index, inside, db});
      rep.reports.push_back(std::move(r));
    }
    const PsnrSummary sum = summarize_psnr(psnrs);
    const auto q = static_cast<double>(cfg.seeds.size());
    rep.sets.push_back({s, counts[s], cfg.seeds.size(), static_cast<double>(hits) / q,
                        static_cast<double>(in_block) / q, sum.mean, sum.stddev});
  }
  return rep;
}

MixedReport run_mixed_set(const RunConfig& cfg, const std::array<fs::path, 3>& set_dirs,
                          std::ostream& log, std::size_t per_set) {
  std::vector<std::vector<ImageRaw>> sets;
  for (const auto& dir : set_dirs) sets.push_back(load_dataset(dir).images);
  MixedReport rep = mixed_images(sets, cfg, per_set);

  fs::create_directories(cfg.output_dir);
  for (std::size_t i = 0; i < rep.queries.size(); ++i) {
    const auto& q = rep.queries[i];
    write_pgm(rep.reports[i].reconstructed,
              cfg.output_dir / ("mixed_set" + std::to_string(q.set) + "_seed" +
                                std::to_string(q.seed) + ".pgm"));
  }
  std::ostringstream csv;
  csv << "set,stored,queries,accuracy,in_block,psnr_mean,psnr_std\n";
  for (const auto& r : rep.sets)
    csv << r.set << ',' << r.stored << ',' << r.queries << ',' << format_fixed(r.accuracy) << ','
        << format_fixed(r.in_block) << ',' << format_fixed(r.psnr_mean) << ','
        << format_fixed(r.psnr_std) << '\n';
  {
    std::ofstream out(cfg.output_dir / "mixed.csv", std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write mixed.csv");
    out << csv.str();
  }
  Metadata md;
  describe(cfg, md);
  for (std::size_t s = 0; s < set_dirs.size(); ++s) {
    md.set("set" + std::to_string(s) + "_dir", set_dirs[s].string());
    md.set("set" + std::to_string(s) + "_offset", static_cast<std::uint64_t>(rep.block_offsets[s]));
  }
  md.set("per_set", static_cast<std::uint64_t>(per_set));
  md.write(cfg.output_dir / "mixed_metadata.txt");
  log << csv.str();
  return rep;
}

}  // namespace holo
