#include "simdiag/matrix_set.hpp"

#include <cmath>
#include <utility>

#include "simdiag/errors.hpp"

namespace simdiag {

namespace {

double asymmetry(const Matrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      double d = m(i, j) - m(j, i);
      s += 2.0 * d * d;
    }
  return std::sqrt(s);
}

}  // namespace

MatrixSet::MatrixSet(std::vector<Matrix> matrices, bool symmetric)
    : matrices_(std::move(matrices)), symmetric_(symmetric) {
  if (matrices_.empty()) throw ShapeError("matrix set must be non-empty");
  std::size_t r = matrices_[0].rows();
  std::size_t c = matrices_[0].cols();
  if (symmetric_ && r != c)
    throw ShapeError("matrix flagged symmetric must be square");
  for (const Matrix& m : matrices_) {
    if (m.rows() != r || m.cols() != c)
      throw ShapeError("matrix set entries must share one shape");
    if (symmetric_ &&
        asymmetry(m) > 1e-10 * std::max(1.0, m.frobenius_norm()))
      throw ShapeError("matrix flagged symmetric is not symmetric");
  }
}

}  // namespace simdiag
