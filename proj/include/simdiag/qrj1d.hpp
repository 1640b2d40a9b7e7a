#pragma once

#include "simdiag/matrix.hpp"
#include "simdiag/matrix_set.hpp"
#include "simdiag/solver.hpp"

namespace simdiag {

// Closed-form minimizer of the restricted objective over the shear family
// T = I + a*E_ij:  a* = -(sum_l sum_{q != i} M_iq M_jq) /
// (sum_l sum_{q != i} M_jq^2).  Returns 0 when the denominator vanishes.
double optimal_shear(const MatrixSet& set, std::size_t i, std::size_t j);

// One pass of the shear solver: a rotation phase identical to jacobi_sweep,
// then a triangular phase over the same (i, j) ranges applying optimal
// shears — for (i, j) and (j, i) under upper_then_lower, only (i, j) under
// upper_only.  The sort-swap rule runs after each elementary transform in
// both phases.  Returns the number of elementary transforms applied.
int qrj1d_sweep(MatrixSet& set, Matrix& accumulator, std::size_t k, bool sort,
                ShearDirections directions,
                const TransformObserver& observer = {});

// Non-orthogonal solve; same loop contract as jacobi_solve.  Aborts with an
// ill-conditioning error when the accumulated transform's condition number
// exceeds 1e12.  The factor estimate is read off the inverse-transpose of
// the accumulated transform.
JointDiagResult qrj1d_solve(const MatrixSet& set, const SolverOptions& opts);

}  // namespace simdiag
