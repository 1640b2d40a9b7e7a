#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simdiag/matrix.hpp"
#include "simdiag/matrix_set.hpp"
#include "simdiag/solver.hpp"

namespace simdiag {

enum class BoundKind { cardoso, afsari_exact, afsari_bound };

std::string to_string(BoundKind k);

// First-order sensitivity of the estimated factors to the planted noise
// directions: the estimate satisfies U~ = Ubar (I - eps E) + o(eps), where
// Ubar extends the planted factor to a basis.  E itself is eps-free; the
// per-column bounds carry the eps scaling.
struct PerturbationReport {
  Matrix e;                           // d x k coefficient matrix
  std::vector<double> column_bounds;  // eps * sqrt(sum_i E_ij^2) per column
  Matrix rho;                         // k x k moduli of uniqueness
  std::optional<Matrix> t;            // d x d intermediate of the 2x2 solve
  BoundKind kind = BoundKind::cardoso;
};

// Cosine matrix of the weight columns: rho_ij = lambda_i . lambda_j /
// (|lambda_i| |lambda_j|).  Throws when a column has zero norm.
Matrix modulus_of_uniqueness(const Matrix& lambdas);

// Orthogonal-case error matrix:
//   E_ij = sum_l (lam_il - lam_jl) u_j^T R_l u_i / sum_l (lam_il - lam_jl)^2
// with u the columns of the orthonormal-completed factor and lam_il = 0 for
// i > k.  Throws for a pair with identical weight vectors.
PerturbationReport cardoso_E(const GroundTruth& truth);

// Non-orthogonal-case error matrix via the pairwise 2x2 system on
// T_ij = sum_l v_i^T R_l v_j lam_jl, v_i the rows of the inverse of the
// completed factor.  Degenerate rows (|lam_i| = 0, i > k) use
// E_ij = -T_ij/|lam_j|^2, E_ji = 0.
PerturbationReport afsari_E(const GroundTruth& truth);

// Simplified envelope: |E_ij| <= (1/(1-rho^2)) (1/|lam_i|^2 + 1/|lam_j|^2)
// (|sum_l v_i R_l v_j lam_jl| + |sum_l v_i R_l v_j lam_il|).  The report's E
// holds the (non-negative) bound magnitudes; dominates |afsari_E| entrywise.
PerturbationReport afsari_simple_bound(const GroundTruth& truth);

struct BoundCheckRow {
  int instance = 0;
  double eps = 0.0;
  int component = 0;
  double error = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  bool exact = false;  // bound is 0 (eps = 0): ratio is 0/0, flagged instead
  BoundKind kind = BoundKind::cardoso;
};

// For each eps: assemble the planted matrices at that noise level, solve with
// opts, align the estimated columns to truth, and report per-column error,
// the first-order bound, and their ratio.  Emits cardoso rows for the
// rotation solver and afsari_exact + afsari_bound rows for the shear solver.
std::vector<BoundCheckRow> empirical_bound_check(
    const GroundTruth& truth, const SolverOptions& opts,
    const std::vector<double>& eps_list);

}  // namespace simdiag
