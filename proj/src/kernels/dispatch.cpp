#include <atomic>
#include <cstdlib>
#include <string>

#include "holo/error.hpp"
#include "holo/kernels.hpp"

namespace holo::kernels {
namespace {

const KernelTable* table_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return &scalar_table();
    case Isa::Avx2: return avx2_table();
    case Isa::Neon: return neon_table();
  }
  return nullptr;
}

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;  // mandatory in AArch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* pick_default() {
  if (const char* env = std::getenv("HOLO_SIMD"); env != nullptr && *env != '\0') {
    const Isa want = parse_isa(env);
    if (!isa_supported(want))
      throw Error(ErrorCode::InvalidArgument,
                  std::string("HOLO_SIMD=") + env + " is not supported on this CPU");
    return table_for(want);
  }
  for (Isa isa : {Isa::Avx2, Isa::Neon})
    if (isa_supported(isa)) return table_for(isa);
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{pick_default()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::Scalar;
  if (name == "avx2") return Isa::Avx2;
  if (name == "neon") return Isa::Neon;
  throw Error(ErrorCode::InvalidArgument, "unknown SIMD variant '" + std::string(name) + "'");
}

bool isa_supported(Isa isa) { return table_for(isa) != nullptr && cpu_has(isa); }

std::vector<Isa> supported_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
    if (isa_supported(isa)) out.push_back(isa);
  return out;
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa))
    throw Error(ErrorCode::InvalidArgument,
                "SIMD variant '" + std::string(to_string(isa)) + "' unavailable");
  current().store(table_for(isa), std::memory_order_release);
}

}  // namespace holo::kernels
