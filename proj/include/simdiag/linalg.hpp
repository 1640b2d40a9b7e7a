#pragma once

#include <vector>

#include "simdiag/matrix.hpp"
#include "simdiag/rng.hpp"

namespace simdiag {

// w * m * w^T.
Matrix congruence(const Matrix& w, const Matrix& m);

// Gauss-Jordan with partial pivoting.  Throws NumericError when the pivot
// underflows (matrix numerically singular).
Matrix inverse(const Matrix& m);

struct QrFactors {
  Matrix q;  // m x m orthogonal
  Matrix r;  // m x n upper triangular, nonnegative diagonal
};

// Householder QR with the diagonal of R fixed nonnegative, which makes Q
// unique for full-rank input (and Haar-distributed for Gaussian input).
QrFactors householder_qr(const Matrix& a);

// Singular values by one-sided column rotations, sorted descending.
std::vector<double> singular_values(const Matrix& a);

// Ratio of extreme singular values; +inf when the smallest underflows.
double condition_number(const Matrix& a);

// Given d x k with orthonormal columns (k <= d), returns d x (d-k) whose
// columns extend them to an orthonormal basis of R^d.
Matrix complete_orthonormal_basis(const Matrix& u);

// Haar-distributed orthogonal matrix: QR of an iid Gaussian square matrix.
Matrix random_orthogonal(std::size_t n, Rng& rng);

// Scales every nonzero column to unit 2-norm and flips its sign so that the
// first largest-magnitude entry is positive.
void canonicalize_columns(Matrix& m);

}  // namespace simdiag
