// holomem: command-line front end for the holographic associative memory.
//
//   holomem gen    --out DIR [--count 10 --width 64 --height 64 --seed 1 --kind noise]
//   holomem store  --dataset DIR --out FILE [--mode amplitude --backend factored]
//   holomem recall (--dataset DIR | --memory FILE) --query PGM [--truth PGM] --out-dir DIR
//   holomem sweep  --dataset DIR --p 1..10 --seeds 1..10 --corruption occlude:0.25 --out-dir DIR
//   holomem mixed  --sets A B C --corruption occlude:0.5 --seeds 1..10 --out-dir DIR
//
// Exit codes: 0 ok, 1 usage, 2 data error, 3 capacity (dense matrix over budget).

#include <CLI11.hpp>

#include <charconv>
#include <iostream>
#include <string>
#include <vector>

#include "holo/dataset.hpp"
#include "holo/error.hpp"
#include "holo/experiment.hpp"
#include "holo/kernels.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitCapacity = 3;

int exit_code_for(holo::ErrorCode code) {
  using holo::ErrorCode;
  switch (code) {
    case ErrorCode::MatrixTooLarge: return kExitCapacity;
    case ErrorCode::InvalidArgument: return kExitUsage;
    default: return kExitData;
  }
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw holo::Error(holo::ErrorCode::InvalidArgument, "not an unsigned integer: '" + s + "'");
  return v;
}

// "1,2,5" or "1..10" or a mix: "1..3,8".
std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                            : comma - start);
    if (const auto dots = item.find(".."); dots != std::string::npos) {
      const auto lo = parse_u64(item.substr(0, dots));
      const auto hi = parse_u64(item.substr(dots + 2));
      if (hi < lo) throw holo::Error(holo::ErrorCode::InvalidArgument, "empty range " + item);
      for (auto v = lo; v <= hi; ++v) out.push_back(v);
    } else if (!item.empty()) {
      out.push_back(parse_u64(item));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct CommonFlags {
  std::string mode = "amplitude";
  std::string backend = "factored";
  std::string corruption = "none";
  std::string seeds = "1";
  std::string out_dir = ".";
  bool clean = false;
  int iters = 1;
  double budget_mib = static_cast<double>(holo::kDefaultDenseBudgetBytes) / (1 << 20);
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_corruption) {
  cmd->add_option("--mode", f.mode, "Encoding: amplitude | phase")->capture_default_str();
  cmd->add_option("--backend", f.backend, "Memory backend: dense | factored")->capture_default_str();
  cmd->add_option("--budget-mib", f.budget_mib, "Byte budget for a dense matrix, in MiB")
      ->capture_default_str();
  if (with_corruption) {
    cmd->add_option("--corruption", f.corruption,
                    "none | occlude:<f>[:seed=<n>] | sp:<r>[:seed=<n>]")
        ->capture_default_str();
    cmd->add_flag("--clean", f.clean, "Winner-take-all output (no cross-talk)");
    cmd->add_option("--iters", f.iters, "Recall passes")->capture_default_str();
    cmd->add_option("--out-dir", f.out_dir, "Output directory")->capture_default_str();
  }
}

holo::RunConfig to_config(const CommonFlags& f) {
  holo::RunConfig cfg;
  cfg.mode = holo::parse_mode(f.mode);
  cfg.backend = holo::parse_backend(f.backend);
  cfg.corruption = holo::CorruptionSpec::parse(f.corruption);
  cfg.seeds = parse_list(f.seeds);
  cfg.output_dir = f.out_dir;
  cfg.clean = f.clean;
  cfg.iters = f.iters;
  if (!(f.budget_mib >= 0.0))
    throw holo::Error(holo::ErrorCode::InvalidArgument, "--budget-mib must be >= 0");
  cfg.dense_budget_bytes = static_cast<std::uint64_t>(f.budget_mib * (1 << 20));
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holographic (complex Hopfield) associative memory for grayscale images"};
  app.require_subcommand(1);
  std::string simd;
  app.add_option("--simd", simd, "Force kernel variant: scalar | avx2 | neon");

  // gen
  auto* gen = app.add_subcommand("gen", "Write a seeded synthetic dataset of PGM images");
  holo::SyntheticOptions gen_opts;
  std::string gen_out, gen_kind = "noise";
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--count", gen_opts.count)->capture_default_str();
  gen->add_option("--width", gen_opts.width)->capture_default_str();
  gen->add_option("--height", gen_opts.height)->capture_default_str();
  gen->add_option("--seed", gen_opts.seed)->capture_default_str();
  gen->add_option("--kind", gen_kind, "noise | ridges | blocks")->capture_default_str();
  gen->add_option("--shared", gen_opts.shared, "Weight of a set-wide shared field, [0,1)")
      ->capture_default_str();
  gen->add_flag("--orthogonalize", gen_opts.orthogonalize, "Gram-Schmidt before quantizing");

  // store
  auto* store = app.add_subcommand("store", "Build a memory from a dataset and save it");
  CommonFlags store_flags;
  std::string store_dataset, store_out;
  store->add_option("--dataset", store_dataset)->required();
  store->add_option("--out", store_out, "Memory file (HMEM1)")->required();
  add_common(store, store_flags, false);

  // recall
  auto* rec = app.add_subcommand("recall", "Recall the stored image closest to a query");
  CommonFlags rec_flags;
  std::string rec_dataset, rec_memory, rec_query, rec_truth;
  auto* ds_opt = rec->add_option("--dataset", rec_dataset);
  auto* mem_opt = rec->add_option("--memory", rec_memory, "Load a saved memory instead");
  ds_opt->excludes(mem_opt);
  rec->add_option("--query", rec_query)->required();
  rec->add_option("--truth", rec_truth, "Ground-truth image for PSNR");
  add_common(rec, rec_flags, true);

  // sweep
  auto* sw = app.add_subcommand("sweep", "PSNR/accuracy versus number of stored images");
  CommonFlags sw_flags;
  std::string sw_dataset, sw_p;
  sw->add_option("--dataset", sw_dataset)->required();
  sw->add_option("--p", sw_p, "Stored counts, e.g. 1..10 (default: all)");
  sw->add_option("--seeds", sw_flags.seeds, "Seeds, e.g. 1..10")->capture_default_str();
  add_common(sw, sw_flags, true);

  // mixed
  auto* mx = app.add_subcommand("mixed", "Store three sets together and query each");
  CommonFlags mx_flags;
  std::vector<std::string> mx_sets;
  std::size_t per_set = 10;
  mx->add_option("--sets", mx_sets, "Three dataset directories")->required()->expected(3);
  mx->add_option("--per-set", per_set)->capture_default_str();
  mx->add_option("--seeds", mx_flags.seeds, "Seeds, e.g. 1..10")->capture_default_str();
  add_common(mx, mx_flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (!simd.empty()) holo::kernels::set_active_isa(holo::kernels::parse_isa(simd));

    if (*gen) {
      gen_opts.kind = holo::parse_kind(gen_kind);
      const auto images = holo::generate_synthetic(gen_opts);
      holo::save_dataset(images, gen_out);
      std::cout << "wrote " << images.size() << " images to " << gen_out << '\n';
    } else if (*store) {
      const auto cfg = to_config(store_flags);
      const auto ds = holo::load_dataset(store_dataset);
      const auto m = holo::build_memory(ds.images, cfg.mode, cfg.backend, cfg.dense_budget_bytes);
      m.save(store_out);
      std::cout << "stored p=" << m.p() << " n=" << m.n() << " backend=" << to_string(m.backend())
                << " mode=" << to_string(m.mode()) << " -> " << store_out << '\n';
    } else if (*rec) {
      auto cfg = to_config(rec_flags);
      if (rec_dataset.empty() && rec_memory.empty())
        throw holo::Error(holo::ErrorCode::InvalidArgument, "need --dataset or --memory");
      cfg.dataset_dir = rec_dataset;
      std::optional<std::filesystem::path> truth, memory;
      if (!rec_truth.empty()) truth = rec_truth;
      if (!rec_memory.empty()) memory = rec_memory;
      holo::run_recall(cfg, rec_query, truth, memory, std::cout);
    } else if (*sw) {
      auto cfg = to_config(sw_flags);
      cfg.dataset_dir = sw_dataset;
      if (!sw_p.empty())
        for (auto p : parse_list(sw_p)) cfg.p_values.push_back(static_cast<std::size_t>(p));
      holo::run_sweep(cfg, std::cout);
    } else if (*mx) {
      auto cfg = to_config(mx_flags);
      holo::run_mixed_set(cfg, {mx_sets[0], mx_sets[1], mx_sets[2]}, std::cout, per_set);
    }
  } catch (const holo::Error& e) {
    std::cerr << "holomem: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "holomem: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
