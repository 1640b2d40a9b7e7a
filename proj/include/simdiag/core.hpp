#pragma once

#include "simdiag/matrix.hpp"
#include "simdiag/matrix_set.hpp"

namespace simdiag {

// Sum of squared off-diagonal entries over every matrix in the set.
double off_objective(const MatrixSet& set);
double off_objective(const Matrix& m);

// sqrt(off_objective).
double off_norm(const MatrixSet& set);

// In-place congruence M <- G^T M G on every matrix, where G is the plane
// rotation with G(i,i)=G(j,j)=c, G(i,j)=-s, G(j,i)=s.  Equivalently:
//   row i <- c*row i + s*row j,  row j <- -s*row i + c*row j,
// then the same combination on columns.  Requires c^2+s^2 = 1.
void apply_givens(MatrixSet& set, std::size_t i, std::size_t j, double c,
                  double s);

// Accumulator update for the same rotation: v <- v G (columns i and j mix).
void givens_accumulate(Matrix& v, std::size_t i, std::size_t j, double c,
                       double s);

// In-place congruence by the unit-triangular shear that adds a*(row j) to
// row i and a*(column j) to column i of every matrix.
void apply_shear(MatrixSet& set, std::size_t i, std::size_t j, double a);

// Accumulator update for the same shear: column i += a * column j.
void shear_accumulate(Matrix& v, std::size_t i, std::size_t j, double a);

// Swaps components i and j: rows and columns of every matrix, and the
// corresponding columns of the accumulated transform.
void swap_components(MatrixSet& set, Matrix& accumulator, std::size_t i,
                     std::size_t j);

// First-order optimality diagnostic |S - S^T|_F with
// S = sum_l [ M M^T - M^T M + M^T diag(M) - diag(M) M^T ] entrywise:
// S_pq = sum_l [ (MM^T)_pq - (M^T M)_pq + M_qp (M_qq - M_pp) ].
// Zero (to rounding) at any exactly diagonal set.
double stationarity_residual(const MatrixSet& set);

}  // namespace simdiag
