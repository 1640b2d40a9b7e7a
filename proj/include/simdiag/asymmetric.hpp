#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "simdiag/matrix.hpp"
#include "simdiag/matrix_set.hpp"
#include "simdiag/solver.hpp"

namespace simdiag {

struct AsymResult {
  Matrix u_est;   // d1 x k, unit columns
  Matrix v_est;   // d2 x k, unit columns
  Matrix lambdas; // L x k, carries folded norms and canonical signs
  JointDiagResult embedded;
  // (positive member, negative member) indices into the embedded components.
  std::vector<std::pair<std::size_t, std::size_t>> pairing;
};

// Symmetric block embedding of a rectangular set: each d1 x d2 matrix M maps
// to the (d2+d1) square [[0, M^T], [M, 0]].  A planted M = U Lam V^T embeds
// as W diag(Lam, -Lam) W^T with W = (1/sqrt2) [[V, V], [U, -U]].
MatrixSet embed(const MatrixSet& set);

// Reads the rank-k rectangular factors out of a rank-2k solve of the
// embedded set: embedded components pair up with anti-parallel weight
// profiles (+lam, -lam); each pair yields v = sqrt2 * (first d2 entries) and
// u = sqrt2 * (last d1 entries) of the positive member, with norms folded
// into the weights and signs canonicalized.
AsymResult recover_factors(const JointDiagResult& embedded, std::size_t d1,
                           std::size_t d2, std::size_t k);

// embed -> solve at rank 2k (sort forced on) -> recover_factors.
AsymResult asym_solve(const MatrixSet& set, const SolverOptions& opts);

// The one-sided reduction {M_l^T M_l}: valid for recovering V only when the
// left factor has orthonormal columns (then M^T M = V Lam^2 V^T); it breaks
// for non-orthogonal left factors, which is what the embedding is for.
MatrixSet gram_reduce(const MatrixSet& set);

}  // namespace simdiag
