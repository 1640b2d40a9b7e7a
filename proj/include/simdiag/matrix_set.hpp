#pragma once

#include <optional>
#include <vector>

#include "simdiag/matrix.hpp"

namespace simdiag {

// A set of L matrices of one shared shape, the joint input to the solvers
// (square, symmetric) and to the block embedding (rectangular).  The
// symmetric flag asserts |M - M^T|_F <= 1e-10 * max(1, |M|_F) per matrix and
// is validated at construction.
class MatrixSet {
 public:
  MatrixSet() = default;
  MatrixSet(std::vector<Matrix> matrices, bool symmetric);

  std::size_t count() const { return matrices_.size(); }
  std::size_t rows() const {
    return matrices_.empty() ? 0 : matrices_[0].rows();
  }
  std::size_t cols() const {
    return matrices_.empty() ? 0 : matrices_[0].cols();
  }
  // Shared dimension of a square set.
  std::size_t dim() const { return rows(); }
  bool is_square() const { return rows() == cols(); }
  bool symmetric() const { return symmetric_; }

  Matrix& operator[](std::size_t l) { return matrices_[l]; }
  const Matrix& operator[](std::size_t l) const { return matrices_[l]; }

  const std::vector<Matrix>& matrices() const { return matrices_; }

 private:
  std::vector<Matrix> matrices_;
  bool symmetric_ = false;
};

// Planted factors behind a synthetic problem.  For symmetric problems only u
// is set (columns unit norm); asymmetric problems carry both u (d1 x k) and
// v (d2 x k).  lambdas is L x k: row l holds the component weights of matrix
// l.  noises, when present, are the unit-Frobenius perturbation directions
// scaled into the observed matrices by eps.
struct GroundTruth {
  Matrix u;
  std::optional<Matrix> v;
  Matrix lambdas;
  double eps = 0.0;
  std::optional<std::vector<Matrix>> noises;

  std::size_t rank() const { return u.cols(); }
};

struct Problem {
  MatrixSet set;
  std::optional<GroundTruth> truth;  // absent for user-supplied matrices
};

}  // namespace simdiag
