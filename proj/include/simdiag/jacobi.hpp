#pragma once

#include "simdiag/matrix.hpp"
#include "simdiag/matrix_set.hpp"
#include "simdiag/solver.hpp"

namespace simdiag {

struct GivensAngle {
  double c = 1.0;
  double s = 0.0;
};

// Closed-form minimizer of the restricted objective for the pair (i, j):
// accumulate h_l = [(M_l)_ii - (M_l)_jj, (M_l)_ij + (M_l)_ji], take the
// principal eigenvector (x, y), x >= 0, of G = sum h_l^T h_l, and set
// r = sqrt(x^2+y^2), c = sqrt((x+r)/(2r)), s = y / sqrt(2r(x+r)).
// Degenerate pairs (r ~ 0) return the identity rotation.
GivensAngle optimal_givens_angle(const MatrixSet& set, std::size_t i,
                                 std::size_t j);

// One rotation pass: for i in 0..k-1, j in i+1..d-1 rotate by the optimal
// angle; with sort, swap components i and j right after the rotation whenever
// diag-mass(j) > diag-mass(i), diag-mass(p) = sum_l |(M_l)_pp|.  Returns the
// number of pairs visited, k*d - k(k+1)/2.
int jacobi_sweep(MatrixSet& set, Matrix& accumulator, std::size_t k, bool sort,
                 const TransformObserver& observer = {});

// Orthogonal solve: sweeps until the objective decrease falls below opts.tol
// or opts.max_sweeps is hit.  The input set is not mutated.
JointDiagResult jacobi_solve(const MatrixSet& set, const SolverOptions& opts);

// Starting transform: identity; the eigenvectors of M_1; or the eigenvectors
// of a random unit-sphere combination of the set (seeded).  Orthogonal.
Matrix init_transform(const MatrixSet& set, const SolverOptions& opts);

}  // namespace simdiag
