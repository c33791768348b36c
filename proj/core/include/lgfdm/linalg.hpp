#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lgfdm {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major storage.
class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const cplx> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  static CMat identity(std::size_t n);

  CMat adjoint() const;
  double max_abs() const;
  double column_norm(std::size_t j) const;

  CMat& operator*=(cplx s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMat operator*(const CMat& a, const CMat& b);
std::vector<cplx> operator*(const CMat& a, std::span<const cplx> x);
std::vector<cplx> operator*(const CMat& a, std::span<const double> x);

}  // namespace lgfdm
