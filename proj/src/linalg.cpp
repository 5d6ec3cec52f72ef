#include "holo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "holo/error.hpp"
#include "holo/kernels.hpp"

namespace holo {
namespace {

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

CVec::CVec(std::size_t n) : data_(n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "CVec dimension must be positive");
}

CVec::CVec(std::vector<cplx> data) : data_(std::move(data)) {
  if (data_.empty()) throw Error(ErrorCode::InvalidArgument, "CVec dimension must be positive");
}

CVec::CVec(std::initializer_list<cplx> values) : CVec(std::vector<cplx>(values)) {}

bool CVec::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double CVec::norm() const noexcept {
  return std::sqrt(kernels::dotc(data_, data_).real());
}

CMat::CMat(std::size_t n) : n_(n), data_(n * n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "CMat dimension must be positive");
}

CMat CMat::identity(std::size_t n) {
  CMat m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double CMat::hermitian_defect() const noexcept {
  double worst = 0.0;
  for (std::size_t h = 0; h < n_; ++h)
    for (std::size_t j = h; j < n_; ++j)
      worst = std::max(worst, std::abs((*this)(h, j) - std::conj((*this)(j, h))));
  return worst;
}

cplx inner(const CVec& a, const CVec& b) {
  require_same(a.size(), b.size(), "inner");
  return kernels::dotc(a.span(), b.span());
}

void outer_accumulate(CMat& acc, const CVec& a) {
  require_same(acc.size(), a.size(), "outer_accumulate");
  const auto& k = kernels::active();
  for (std::size_t h = 0; h < a.size(); ++h)
    k.axpy_conj(a[h], a.span().data(), acc.row(h).data(), a.size());
}

CVec matvec(const CMat& m, const CVec& x) {
  require_same(m.size(), x.size(), "matvec");
  CVec y(x.size());
  const auto& k = kernels::active();
  for (std::size_t h = 0; h < x.size(); ++h) y[h] = k.dotu(m.row(h).data(), x.span().data(), x.size());
  return y;
}

}  // namespace holo
