#include "holo/kernels.hpp"

namespace holo::kernels {
namespace {

// Written on the real/imaginary parts directly so the operation order is
// fixed and does not depend on how the standard library implements
// complex multiplication.

cplx dotc_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double ar = a[j].real(), ai = a[j].imag();
    const double br = b[j].real(), bi = b[j].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

cplx dotu_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double ar = a[j].real(), ai = a[j].imag();
    const double br = b[j].real(), bi = b[j].imag();
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  return {re, im};
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double cr = alpha.real(), ci = alpha.imag();
  for (std::size_t j = 0; j < n; ++j) {
    const double xr = x[j].real(), xi = x[j].imag();
    y[j] = {y[j].real() + (cr * xr - ci * xi), y[j].imag() + (cr * xi + ci * xr)};
  }
}

void axpy_conj_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double cr = alpha.real(), ci = alpha.imag();
  for (std::size_t j = 0; j < n; ++j) {
    const double xr = x[j].real(), xi = x[j].imag();
    y[j] = {y[j].real() + (cr * xr + ci * xi), y[j].imag() + (ci * xr - cr * xi)};
  }
}

constexpr KernelTable kScalar{Isa::Scalar, dotc_scalar, dotu_scalar, axpy_scalar,
                              axpy_conj_scalar};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace holo::kernels
