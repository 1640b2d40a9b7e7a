#include "simdiag/matrix.hpp"

#include <cmath>
#include <utility>

#include "simdiag/errors.hpp"

namespace simdiag {

Matrix Matrix::from_rows(std::size_t rows, std::size_t cols,
                         std::vector<double> flat) {
  if (flat.size() != rows * cols)
    throw ShapeError("flat buffer length does not match rows*cols");
  Matrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_ = std::move(flat);
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

void Matrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c)
    std::swap((*this)(i, c), (*this)(j, c));
}

void Matrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r)
    std::swap((*this)(r, i), (*this)(r, j));
}

void Matrix::scale_col(std::size_t j, double a) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, j) *= a;
}

Matrix Matrix::col_subset(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw ShapeError("column subset out of range");
  Matrix out(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matrix product shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* brow = b.row(k);
      double* orow = out.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("matrix sum shape mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < out.flat().size(); ++i)
    out.flat()[i] += b.flat()[i];
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("matrix difference shape mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < out.flat().size(); ++i)
    out.flat()[i] -= b.flat()[i];
  return out;
}

Matrix operator*(double a, const Matrix& m) {
  Matrix out = m;
  for (double& x : out.flat()) x *= a;
  return out;
}

}  // namespace simdiag
