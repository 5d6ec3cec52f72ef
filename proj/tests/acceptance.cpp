// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "holo/corruption.hpp"
#include "holo/dataset.hpp"
#include "holo/encoding.hpp"
#include "holo/experiment.hpp"
#include "holo/kernels.hpp"
#include "holo/memory.hpp"
#include "holo/metrics.hpp"
#include "holo/pgm.hpp"
#include "holo/rng.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace holo;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::uint64_t last) {
  std::vector<std::uint64_t> s;
  for (std::uint64_t v = first; v <= last; ++v) s.push_back(v);
  return s;
}

std::vector<ImageRaw> noise_dataset() {
  SyntheticOptions o;
  o.count = 10;
  o.width = 64;
  o.height = 64;
  o.seed = 1;
  o.kind = SyntheticKind::Noise;
  return generate_synthetic(o);
}

std::vector<WaveState> random_states(std::size_t n, std::size_t p, EncodingMode mode,
                                     SplitMix64& rng) {
  std::vector<PatternVector> pats;
  for (std::size_t k = 0; k < p; ++k) pats.push_back(test::random_pattern(n, rng));
  const EncodingParams params = EncodingParams::for_dataset(mode, pats);
  std::vector<WaveState> states;
  for (const auto& pv : pats) states.push_back(encode(pv, params));
  return states;
}

// Dense vs Factored recall on random instances.
Outcome reordering_identity() {
  SplitMix64 rng(101);
  double worst = 0.0;
  std::size_t k0_mismatch = 0, instances = 0;
  for (auto mode : {EncodingMode::Amplitude, EncodingMode::Phase}) {
    for (int t = 0; t < 100; ++t) {
      auto states = random_states(256, 10, mode, rng);
      const auto dense = MemoryMatrix::store(states, Backend::Dense);
      const auto fact = MemoryMatrix::store(states, Backend::Factored);
      const WaveState q = encode_query(test::random_pattern(256, rng), dense.params());
      const auto a = recall(dense, q);
      const auto b = recall(fact, q);
      worst = std::max(worst, test::max_diff(a.output.amplitudes, b.output.amplitudes));
      k0_mismatch += a.selected_index != b.selected_index;
      ++instances;
    }
  }
  return {worst < 1e-10 && k0_mismatch == 0,
          std::to_string(instances) + " instances, max |dense-factored| = " + fmt("%.3g", worst) +
              ", k0 mismatches = " + std::to_string(k0_mismatch)};
}

Outcome hermiticity() {
  SplitMix64 rng(202);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 16 + rng.below(241);
    const std::size_t p = 1 + rng.below(12);
    const auto mode = (t % 2) ? EncodingMode::Phase : EncodingMode::Amplitude;
    const auto m = MemoryMatrix::store(random_states(n, p, mode, rng), Backend::Dense);
    worst = std::max(worst, m.dense().hermitian_defect());
  }
  return {worst < 1e-12, "50 sets, max |G_hj - conj(G_jh)| = " + fmt("%.3g", worst)};
}

Outcome orthonormal_recall() {
  const std::size_t n = 1024, p = 32;
  SplitMix64 rng(303);
  std::vector<std::vector<double>> vecs(p, std::vector<double>(n));
  for (auto& v : vecs)
    for (auto& x : v) x = rng.normal();
  orthonormalize(vecs);
  std::vector<WaveState> states;
  for (auto& v : vecs) states.push_back(encode(PatternVector(v), EncodingParams::amplitude_mode()));
  const auto m = MemoryMatrix::store(states, Backend::Factored);
  double worst = 0.0;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < p; ++k) {
    const auto r = recall(m, states[k]);
    worst = std::max(worst, test::max_diff(r.output.amplitudes, states[k].amplitudes));
    hits += r.selected_index == k;
  }
  const double acc = static_cast<double>(hits) / static_cast<double>(p);
  return {worst < 1e-10 && acc == 1.0,
          "P=32 N=1024, max componentwise error = " + fmt("%.3g", worst) +
              ", accuracy = " + fmt("%.3f", acc)};
}

struct QueryStats {
  std::size_t queries = 0, hits = 0;
  double worst_psnr_on_hits = std::numeric_limits<double>::infinity();
  double accuracy() const { return static_cast<double>(hits) / static_cast<double>(queries); }
};

QueryStats query_dataset(const std::vector<ImageRaw>& images, const CorruptionSpec& spec,
                         bool clean, std::uint64_t seeds) {
  const auto m = build_memory(images, EncodingMode::Amplitude, Backend::Factored);
  RunConfig cfg;
  cfg.clean = clean;
  QueryStats st;
  for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
    const std::size_t target = SplitMix64(seed).below(images.size());
    const ImageRaw q = apply(images[target], spec.with_seed(seed));
    const auto r = recall_image(m, q, cfg);
    ++st.queries;
    if (r.selected_index == target) {
      ++st.hits;
      st.worst_psnr_on_hits =
          std::min(st.worst_psnr_on_hits, psnr(images[target], r.reconstructed).psnr_db);
    }
  }
  return st;
}

Outcome occlusion_recovery() {
  const auto images = noise_dataset();
  const auto a = query_dataset(images, CorruptionSpec::occlusion(0.25, 0), true, 20);
  const auto b = query_dataset(images, CorruptionSpec::occlusion(0.5, 0), true, 20);
  const bool ok = a.accuracy() == 1.0 && b.accuracy() >= 0.9 && a.worst_psnr_on_hits > 40.0 &&
                  b.worst_psnr_on_hits > 40.0;
  return {ok, "N=4096 P=10, f=0.25 accuracy " + fmt("%.3f", a.accuracy()) + " (min PSNR " +
                  fmt("%.2f", a.worst_psnr_on_hits) + " dB), f=0.5 accuracy " +
                  fmt("%.3f", b.accuracy()) + " (min PSNR " + fmt("%.2f", b.worst_psnr_on_hits) +
                  " dB)"};
}

Outcome noise_recovery() {
  const auto st = query_dataset(noise_dataset(), CorruptionSpec::salt_pepper(0.6, 0), false, 20);
  return {st.accuracy() >= 0.9,
          "salt-and-pepper r=0.6, 20 seeds, accuracy " + fmt("%.3f", st.accuracy())};
}

Outcome capacity_trend() {
  RunConfig cfg;
  cfg.corruption = CorruptionSpec::occlusion(0.25, 0);
  cfg.p_values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  cfg.seeds = seed_range(1, 10);
  const auto rows = sweep_images(noise_dataset(), cfg);
  double worst_rise = -std::numeric_limits<double>::infinity();
  std::string series;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    series += (i ? " " : "") + format_fixed(rows[i].psnr_mean);
    if (i > 0) worst_rise = std::max(worst_rise, rows[i].psnr_mean - rows[i - 1].psnr_mean);
  }
  const double first = rows.front().psnr_mean, last = rows.back().psnr_mean;
  const bool ok = worst_rise <= 1.0 && last >= first - 10.0;
  return {ok, "psnr_mean P=1..10: [" + series + "], max rise " + fmt("%.3f", worst_rise) +
                  " dB, P=10 vs P=1 - 10 dB: " + format_fixed(last) +
                  " >= " + format_fixed(first - 10.0)};
}

Outcome mixed_selectivity() {
  std::vector<std::vector<ImageRaw>> sets;
  std::uint64_t seed = 1;
  for (auto kind : {SyntheticKind::Ridges, SyntheticKind::Blocks, SyntheticKind::Noise}) {
    SyntheticOptions o;
    o.count = 10;
    o.kind = kind;
    o.seed = seed++;
    sets.push_back(generate_synthetic(o));
  }
  RunConfig cfg;
  cfg.corruption = CorruptionSpec::occlusion(0.5, 0);
  cfg.seeds = seed_range(1, 10);
  const auto rep = mixed_images(sets, cfg);
  std::size_t in_block = 0, hits = 0;
  for (const auto& q : rep.queries) {
    in_block += q.in_block;
    hits += q.selected == q.truth;
  }
  const double n = static_cast<double>(rep.queries.size());
  const double acc = static_cast<double>(hits) / n;
  std::string per_set;
  for (const auto& r : rep.sets) per_set += " " + fmt("%.2f", r.accuracy);
  return {in_block == rep.queries.size() && acc >= 0.9,
          std::to_string(rep.queries.size()) + " queries, in-block " + std::to_string(in_block) +
              "/" + std::to_string(rep.queries.size()) + ", within-set accuracy " +
              fmt("%.3f", acc) + " (per set:" + per_set + ")"};
}

Outcome crosstalk_scaling() {
  double prev = std::numeric_limits<double>::infinity();
  bool ok = true;
  std::string detail;
  for (std::size_t side : {16, 32, 64}) {
    const std::size_t n = side * side;
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      SplitMix64 rng(seed * 7919 + n);
      std::vector<WaveState> states;
      for (int k = 0; k < 10; ++k)
        states.push_back(encode(preprocess(test::random_image(side, side, rng)),
                                EncodingParams::amplitude_mode()));
      sum += gram_stats(states).mean_offdiag;
    }
    const double mean = sum / 20.0, bound = 2.0 / std::sqrt(static_cast<double>(n));
    ok = ok && mean < prev && mean < bound;
    prev = mean;
    detail += "N=" + std::to_string(n) + ": " + fmt("%.5f", mean) + " < " + fmt("%.5f", bound) + "; ";
  }
  return {ok, detail};
}

double median_seconds(const std::function<void()>& fn, int runs) {
  std::vector<double> t;
  for (int i = 0; i < runs; ++i) {
    const auto t0 = Clock::now();
    fn();
    t.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

// Runs in a child process: the dense 16384^2 matrix takes 4 GiB.
Outcome performance_timing() {
  int fds[2];
  if (pipe(fds) != 0) return {false, "pipe() failed"};
  const pid_t pid = fork();
  if (pid == 0) {
    close(fds[0]);
    std::string msg;
    try {
      SplitMix64 rng(909);
      auto states = random_states(16384, 10, EncodingMode::Amplitude, rng);
      const WaveState q = encode_query(test::random_pattern(16384, rng), states.front().params);
      const auto fact = MemoryMatrix::store(states, Backend::Factored);
      const auto dense = MemoryMatrix::store(std::move(states), Backend::Dense, 5ULL << 30);
      const double tf = median_seconds([&] { (void)recall(fact, q); }, 5);
      const double td = median_seconds([&] { (void)recall(dense, q); }, 5);
      msg = (td >= 2.0 * tf ? "1 " : "0 ") + std::string("factored ") + fmt("%.5f", tf) +
            " s, dense " + fmt("%.5f", td) + " s, speedup " + fmt("%.1f", td / tf) + "x";
    } catch (const std::exception& e) {
      msg = std::string("0 ") + e.what();
    }
    (void)!write(fds[1], msg.data(), msg.size());
    close(fds[1]);
    _exit(0);
  }
  close(fds[1]);
  std::string msg;
  char buf[256];
  ssize_t got;
  while ((got = read(fds[0], buf, sizeof buf)) > 0) msg.append(buf, static_cast<std::size_t>(got));
  close(fds[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  if (msg.size() < 2) return {false, "timing child died (status " + std::to_string(status) + ")"};
  return {msg[0] == '1', msg.substr(2)};
}

Outcome performance_contract() {
  const Outcome timing = performance_timing();
  const test::TempDir tmp("acc9");
  SyntheticOptions o;
  o.count = 10;
  o.width = 128;
  o.height = 128;
  save_dataset(generate_synthetic(o), tmp.path / "big");
  const std::string cmd = std::string("\"") + HOLOMEM_EXE + "\" store --dataset \"" +
                          (tmp.path / "big").string() + "\" --backend dense --out \"" +
                          (tmp.path / "g.hmem").string() + "\" > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {timing.pass && code == 3,
          "N=16384 P=10 median of 5: " + timing.detail + "; dense store over budget exit code " +
              std::to_string(code)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism_persistence() {
  const test::TempDir tmp("acc10");
  const auto images = noise_dataset();
  save_dataset(images, tmp.path / "data");

  RunConfig cfg;
  cfg.dataset_dir = tmp.path / "data";
  cfg.corruption = CorruptionSpec::salt_pepper(0.3, 0);
  cfg.p_values = {1, 5, 10};
  cfg.seeds = seed_range(1, 5);
  std::ostringstream log;
  cfg.output_dir = tmp.path / "run1";
  run_sweep(cfg, log);
  cfg.output_dir = tmp.path / "run2";
  run_sweep(cfg, log);
  const std::string a = slurp(tmp.path / "run1" / "sweep.csv");
  const bool csv_same = !a.empty() && a == slurp(tmp.path / "run2" / "sweep.csv");

  double worst = 0.0;
  for (auto mode : {EncodingMode::Amplitude, EncodingMode::Phase})
    for (auto backend : {Backend::Dense, Backend::Factored}) {
      const auto m = build_memory(images, mode, backend);
      const auto path = tmp.path / "m.hmem";
      m.save(path);
      const auto loaded = MemoryMatrix::load(path);
      const WaveState q =
          encode_query(preprocess(occlude(images[4], 0.25, 3)), m.params());
      worst = std::max(worst, test::max_diff(recall(m, q).output.amplitudes,
                                             recall(loaded, q).output.amplitudes));
    }

  bool pgm_exact = true;
  SplitMix64 rng(1010);
  for (int t = 0; t < 20; ++t) {
    const ImageRaw img = test::random_image(1 + rng.below(70), 1 + rng.below(70), rng);
    const auto p = tmp.path / "r.pgm";
    write_pgm(img, p);
    const std::string bytes = slurp(p);
    const ImageRaw back = read_pgm(p);
    write_pgm(back, p);
    pgm_exact = pgm_exact && back == img && slurp(p) == bytes;
  }
  return {csv_same && worst < 1e-12 && pgm_exact,
          std::string("sweep CSV byte-identical: ") + (csv_same ? "yes" : "no") +
              ", save/load recall max diff " + fmt("%.3g", worst) +
              ", PGM round-trip exact: " + (pgm_exact ? "yes" : "no")};
}

Outcome encoding_roundtrip() {
  SplitMix64 rng(1111);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.below(2000);
    const PatternVector pv = test::random_pattern(n, rng);
    const std::vector<PatternVector> one{pv};
    const auto params = EncodingParams::for_dataset(EncodingMode::Phase, one);
    const auto back = decode(encode(pv, params), params);
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(back[j] - pv[j]));
  }
  return {worst < 1e-10, "100 patterns, max |decode(encode(v)) - v| = " + fmt("%.3g", worst)};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0: no runtime limit
  Outcome (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "reordering identity (dense == factored)", 10, reordering_identity},
      {2, "hermiticity of G", 5, hermiticity},
      {3, "perfect orthonormal recall", 10, orthonormal_recall},
      {4, "occlusion recovery", 60, occlusion_recovery},
      {5, "salt-and-pepper recovery", 60, noise_recovery},
      {6, "capacity trend", 120, capacity_trend},
      {7, "mixed-set selectivity", 60, mixed_selectivity},
      {8, "cross-talk scaling", 30, crosstalk_scaling},
      {9, "performance contract", 0, performance_contract},
      {10, "determinism and persistence", 0, determinism_persistence},
      {11, "phase encoding round-trip", 0, encoding_roundtrip},
  };
  std::cout << "simd variant: " << kernels::to_string(kernels::active().isa) << "\n";
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool in_time = c.limit_s == 0 || secs < c.limit_s;
    const bool pass = out.pass && in_time;
    failures += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << "  ["
              << fmt("%.2f", secs) << " s"
              << (c.limit_s > 0 ? ", limit " + fmt("%.0f", c.limit_s) + " s" : std::string())
              << (in_time ? "" : ", TOO SLOW") << "]  " << out.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
