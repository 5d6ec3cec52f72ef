#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace holo {

using cplx = std::complex<double>;

/// Dense complex vector of fixed dimension n >= 1.
class CVec {
 public:
  explicit CVec(std::size_t n);
  explicit CVec(std::vector<cplx> data);
  CVec(std::initializer_list<cplx> values);

  std::size_t size() const noexcept { return data_.size(); }
  cplx& operator[](std::size_t i) noexcept { return data_[i]; }
  const cplx& operator[](std::size_t i) const noexcept { return data_[i]; }

  std::span<cplx> span() noexcept { return data_; }
  std::span<const cplx> span() const noexcept { return data_; }
  const std::vector<cplx>& values() const noexcept { return data_; }

  bool all_finite() const noexcept;
  double norm() const noexcept;

  friend bool operator==(const CVec&, const CVec&) = default;

 private:
  std::vector<cplx> data_;
};

/// Square complex matrix, row-major in one contiguous block.
class CMat {
 public:
  explicit CMat(std::size_t n);  // zero-filled

  std::size_t size() const noexcept { return n_; }
  cplx& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * n_ + col]; }
  const cplx& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * n_ + col];
  }
  std::span<cplx> row(std::size_t r) noexcept { return {data_.data() + r * n_, n_}; }
  std::span<const cplx> row(std::size_t r) const noexcept { return {data_.data() + r * n_, n_}; }
  std::span<const cplx> data() const noexcept { return data_; }
  std::span<cplx> data() noexcept { return data_; }

  static CMat identity(std::size_t n);

  // max |m(h,j) - conj(m(j,h))|
  double hermitian_defect() const noexcept;

 private:
  std::size_t n_;
  std::vector<cplx> data_;
};

/// Hermitian inner product, first argument conjugated: sum_j conj(a_j) b_j.
cplx inner(const CVec& a, const CVec& b);

/// acc(h,j) += a_h * conj(a_j), in place.
void outer_accumulate(CMat& acc, const CVec& a);

/// y_h = sum_j m(h,j) x_j
CVec matvec(const CMat& m, const CVec& x);

}  // namespace holo
