#pragma once

// Complex double inner-loop kernels. Every kernel has a scalar reference
// implementation plus SIMD variants (AVX2+FMA on x86-64, NEON on AArch64);
// the best variant the CPU supports is chosen once at startup and can be
// overridden with set_active_isa() or the HOLO_SIMD environment variable
// ("scalar", "avx2", "neon").

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace holo::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;
  // sum_j conj(a_j) * b_j
  cplx (*dotc)(const cplx* a, const cplx* b, std::size_t n);
  // sum_j a_j * b_j
  cplx (*dotu)(const cplx* a, const cplx* b, std::size_t n);
  // y_j += alpha * x_j
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  // y_j += alpha * conj(x_j)
  void (*axpy_conj)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
};

const KernelTable& scalar_table();
// nullptr when the variant was not compiled in.
const KernelTable* avx2_table();
const KernelTable* neon_table();

bool isa_supported(Isa isa);
std::vector<Isa> supported_isas();

const KernelTable& active();
// Throws holo::Error(InvalidArgument) if the ISA is unavailable here.
void set_active_isa(Isa isa);
Isa parse_isa(std::string_view name);

// Span conveniences over the active table. Lengths must match (checked by callers).
inline cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
  return active().dotc(a.data(), b.data(), a.size());
}
inline cplx dotu(std::span<const cplx> a, std::span<const cplx> b) {
  return active().dotu(a.data(), b.data(), a.size());
}
inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void axpy_conj(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  active().axpy_conj(alpha, x.data(), y.data(), x.size());
}

}  // namespace holo::kernels
