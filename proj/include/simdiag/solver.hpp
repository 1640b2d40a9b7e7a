#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "simdiag/matrix.hpp"
#include "simdiag/matrix_set.hpp"

namespace simdiag {

enum class Method { jacobi, qrj1d };
enum class Init { identity, single_matrix, random_projection };
enum class ShearDirections { upper_then_lower, upper_only };

std::string to_string(Method m);
std::string to_string(Init i);
std::string to_string(ShearDirections s);
Method method_from_string(const std::string& s);
Init init_from_string(const std::string& s);
ShearDirections shear_directions_from_string(const std::string& s);

struct SolverOptions {
  Method method = Method::jacobi;
  std::size_t rank = 0;  // 0 means full rank (d)
  double tol = 1e-12;
  int max_sweeps = 200;
  std::optional<bool> sort;  // default: true iff rank < d
  Init init = Init::identity;
  std::uint64_t seed = 0;
  ShearDirections shear_directions = ShearDirections::upper_then_lower;

  std::size_t resolve_rank(std::size_t d) const;
  bool resolve_sort(std::size_t d) const;
  void validate(std::size_t d) const;
};

struct JointDiagResult {
  // Accumulated left transform: final transformed M_l = W M_l^0 W^T.  For the
  // rotation solver W is orthogonal; for the shear solver it is invertible
  // with `condition` monitored.
  Matrix w;
  // Factor estimate, d x k, unit columns, largest-magnitude entry positive.
  Matrix u_est;
  // L x d: row l is the diagonal of the final transformed M_l.
  Matrix diagonals;
  // off_objective after each sweep; entry 0 is the value the sweeps started
  // from (after initialization).  Non-increasing.
  std::vector<double> objective_trace;
  int sweeps = 0;
  bool converged = false;
  long rotations = 0;  // elementary transforms applied (rotations and shears)
  double condition = 1.0;

  double final_objective() const {
    return objective_trace.empty() ? 0.0 : objective_trace.back();
  }
};

// Called after every elementary transform (and component swap) with the
// current working set; used by monotonicity checks.
using TransformObserver = std::function<void(const MatrixSet&)>;

// Dispatches on opts.method.
JointDiagResult solve(const MatrixSet& set, const SolverOptions& opts);

}  // namespace simdiag
