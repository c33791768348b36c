#include "lgfdm/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace lgfdm {

CMat CMat::identity(std::size_t n) {
  CMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::adjoint() const {
  CMat m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

double CMat::max_abs() const {
  double best = 0.0;
  for (const cplx& v : data_) best = std::max(best, std::abs(v));
  return best;
}

double CMat::column_norm(std::size_t j) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) acc += std::norm((*this)(i, j));
  return std::sqrt(acc);
}

CMat& CMat::operator*=(cplx s) {
  for (cplx& v : data_) v *= s;
  return *this;
}

CMat operator*(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix product: inner dimensions disagree");
  CMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::vector<cplx> operator*(const CMat& a, std::span<const cplx> x) {
  if (a.cols() != x.size())
    throw std::invalid_argument("matrix-vector product: dimension mismatch");
  std::vector<cplx> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<cplx> operator*(const CMat& a, std::span<const double> x) {
  if (a.cols() != x.size())
    throw std::invalid_argument("matrix-vector product: dimension mismatch");
  std::vector<cplx> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

}  // namespace lgfdm
