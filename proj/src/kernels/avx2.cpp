// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "holo/kernels.hpp"

#if defined(HOLO_HAVE_AVX2)

#include <immintrin.h>

namespace holo::kernels {
namespace {

// One __m256d holds two complex values laid out (re0, im0, re1, im1).

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

// Accumulates straight products (ar*br, ai*bi) and crossed products
// (ar*bi, ai*br); dotc and dotu differ only in how lanes are combined.
struct Accum {
  double straight[4];
  double crossed[4];
};

inline Accum accumulate(const cplx* a, const cplx* b, std::size_t n, std::size_t& j) {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  __m256d c0 = _mm256_setzero_pd(), c1 = _mm256_setzero_pd();
  j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d a0 = _mm256_loadu_pd(dp(a + j));
    const __m256d a1 = _mm256_loadu_pd(dp(a + j + 2));
    const __m256d b0 = _mm256_loadu_pd(dp(b + j));
    const __m256d b1 = _mm256_loadu_pd(dp(b + j + 2));
    s0 = _mm256_fmadd_pd(a0, b0, s0);
    s1 = _mm256_fmadd_pd(a1, b1, s1);
    c0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0x5), c0);
    c1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0x5), c1);
  }
  for (; j + 2 <= n; j += 2) {
    const __m256d a0 = _mm256_loadu_pd(dp(a + j));
    const __m256d b0 = _mm256_loadu_pd(dp(b + j));
    s0 = _mm256_fmadd_pd(a0, b0, s0);
    c0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0x5), c0);
  }
  Accum acc;
  _mm256_storeu_pd(acc.straight, _mm256_add_pd(s0, s1));
  _mm256_storeu_pd(acc.crossed, _mm256_add_pd(c0, c1));
  return acc;
}

cplx dotc_avx2(const cplx* a, const cplx* b, std::size_t n) {
  std::size_t j;
  const Accum acc = accumulate(a, b, n, j);
  // straight: ar*br, ai*bi  crossed: ar*bi, ai*br
  double re = (acc.straight[0] + acc.straight[2]) + (acc.straight[1] + acc.straight[3]);
  double im = (acc.crossed[0] + acc.crossed[2]) - (acc.crossed[1] + acc.crossed[3]);
  for (; j < n; ++j) {
    re += a[j].real() * b[j].real() + a[j].imag() * b[j].imag();
    im += a[j].real() * b[j].imag() - a[j].imag() * b[j].real();
  }
  return {re, im};
}

cplx dotu_avx2(const cplx* a, const cplx* b, std::size_t n) {
  std::size_t j;
  const Accum acc = accumulate(a, b, n, j);
  double re = (acc.straight[0] + acc.straight[2]) - (acc.straight[1] + acc.straight[3]);
  double im = (acc.crossed[0] + acc.crossed[2]) + (acc.crossed[1] + acc.crossed[3]);
  for (; j < n; ++j) {
    re += a[j].real() * b[j].real() - a[j].imag() * b[j].imag();
    im += a[j].real() * b[j].imag() + a[j].imag() * b[j].real();
  }
  return {re, im};
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d cr = _mm256_set1_pd(alpha.real());
  const __m256d ci = _mm256_set1_pd(alpha.imag());
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d xv = _mm256_loadu_pd(dp(x + j));
    const __m256d sw = _mm256_mul_pd(_mm256_permute_pd(xv, 0x5), ci);  // (xi*ci, xr*ci)
    // even: cr*xr - xi*ci, odd: cr*xi + xr*ci
    const __m256d prod = _mm256_fmaddsub_pd(xv, cr, sw);
    _mm256_storeu_pd(dp(y + j), _mm256_add_pd(_mm256_loadu_pd(dp(y + j)), prod));
  }
  for (; j < n; ++j) {
    const double xr = x[j].real(), xi = x[j].imag();
    y[j] = {y[j].real() + (alpha.real() * xr - alpha.imag() * xi),
            y[j].imag() + (alpha.real() * xi + alpha.imag() * xr)};
  }
}

void axpy_conj_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d cr = _mm256_set1_pd(alpha.real());
  const __m256d ci = _mm256_set1_pd(alpha.imag());
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d xv = _mm256_loadu_pd(dp(x + j));
    const __m256d straight = _mm256_mul_pd(xv, cr);  // (cr*xr, cr*xi)
    // even: ci*xi + cr*xr, odd: ci*xr - cr*xi
    const __m256d prod = _mm256_fmsubadd_pd(_mm256_permute_pd(xv, 0x5), ci, straight);
    _mm256_storeu_pd(dp(y + j), _mm256_add_pd(_mm256_loadu_pd(dp(y + j)), prod));
  }
  for (; j < n; ++j) {
    const double xr = x[j].real(), xi = x[j].imag();
    y[j] = {y[j].real() + (alpha.real() * xr + alpha.imag() * xi),
            y[j].imag() + (alpha.imag() * xr - alpha.real() * xi)};
  }
}

constexpr KernelTable kAvx2{Isa::Avx2, dotc_avx2, dotu_avx2, axpy_avx2, axpy_conj_avx2};

}  // namespace

const KernelTable* avx2_table() { return &kAvx2; }

}  // namespace holo::kernels

#else

namespace holo::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace holo::kernels

#endif
