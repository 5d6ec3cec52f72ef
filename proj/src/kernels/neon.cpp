#include "holo/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

namespace holo::kernels {
namespace {

// A float64x2_t holds exactly one complex value (re, im).

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

cplx dotc_neon(const cplx* a, const cplx* b, std::size_t n) {
  float64x2_t straight = vdupq_n_f64(0.0), crossed = vdupq_n_f64(0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const float64x2_t av = vld1q_f64(dp(a + j));
    const float64x2_t bv = vld1q_f64(dp(b + j));
    straight = vfmaq_f64(straight, av, bv);
    crossed = vfmaq_f64(crossed, av, vextq_f64(bv, bv, 1));
  }
  return {vgetq_lane_f64(straight, 0) + vgetq_lane_f64(straight, 1),
          vgetq_lane_f64(crossed, 0) - vgetq_lane_f64(crossed, 1)};
}

cplx dotu_neon(const cplx* a, const cplx* b, std::size_t n) {
  float64x2_t straight = vdupq_n_f64(0.0), crossed = vdupq_n_f64(0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const float64x2_t av = vld1q_f64(dp(a + j));
    const float64x2_t bv = vld1q_f64(dp(b + j));
    straight = vfmaq_f64(straight, av, bv);
    crossed = vfmaq_f64(crossed, av, vextq_f64(bv, bv, 1));
  }
  return {vgetq_lane_f64(straight, 0) - vgetq_lane_f64(straight, 1),
          vgetq_lane_f64(crossed, 0) + vgetq_lane_f64(crossed, 1)};
}

void axpy_neon(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const float64x2_t cr = vdupq_n_f64(alpha.real());
  const float64x2_t ci = {-alpha.imag(), alpha.imag()};
  for (std::size_t j = 0; j < n; ++j) {
    const float64x2_t xv = vld1q_f64(dp(x + j));
    float64x2_t yv = vld1q_f64(dp(y + j));
    yv = vfmaq_f64(yv, xv, cr);
    yv = vfmaq_f64(yv, vextq_f64(xv, xv, 1), ci);
    vst1q_f64(dp(y + j), yv);
  }
}

void axpy_conj_neon(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const float64x2_t cr = {alpha.real(), -alpha.real()};
  const float64x2_t ci = vdupq_n_f64(alpha.imag());
  for (std::size_t j = 0; j < n; ++j) {
    const float64x2_t xv = vld1q_f64(dp(x + j));
    float64x2_t yv = vld1q_f64(dp(y + j));
    yv = vfmaq_f64(yv, xv, cr);
    yv = vfmaq_f64(yv, vextq_f64(xv, xv, 1), ci);
    vst1q_f64(dp(y + j), yv);
  }
}

constexpr KernelTable kNeon{Isa::Neon, dotc_neon, dotu_neon, axpy_neon, axpy_conj_neon};

}  // namespace

const KernelTable* neon_table() { return &kNeon; }

}  // namespace holo::kernels

#else

namespace holo::kernels {
const KernelTable* neon_table() { return nullptr; }
}  // namespace holo::kernels

#endif
