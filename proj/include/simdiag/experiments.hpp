#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simdiag/perturbation.hpp"
#include "simdiag/solver.hpp"

namespace simdiag {

// One histogram sample: a fresh planted problem solved to completion.
struct TrialRecord {
  std::size_t trial = 0;
  double eps = 0.0;
  Method method = Method::jacobi;
  double final_objective = 0.0;
  double final_off_norm = 0.0;
  std::size_t sweeps = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  std::string error;  // non-empty when the solve aborted; numbers are NaN then
};

// For each eps in eps_list and each trial index, generate a fresh orthogonal
// problem (sub-seeded from opts.seed so runs are reproducible and trials are
// order-independent) and solve it with opts.  Solver aborts are recorded in
// the row, not thrown.
std::vector<TrialRecord> histogram_experiment(std::size_t trials,
                                              std::size_t d, std::size_t k,
                                              std::size_t L,
                                              const std::vector<double>& eps_list,
                                              const SolverOptions& opts);

struct BoundValidation {
  std::vector<BoundCheckRow> rows;
  std::size_t skipped = 0;  // instances rejected as unidentifiable
};

// Plant `instances` problems (orthogonal factors for the rotation solver,
// conditioned non-orthogonal ones for the shear solver) and run the
// first-order bound check on each across eps_list.
BoundValidation bound_validation_experiment(std::size_t instances,
                                            std::size_t d, std::size_t k,
                                            std::size_t L, double cond,
                                            const std::vector<double>& eps_list,
                                            const SolverOptions& opts);

struct InitComparisonRow {
  std::size_t instance = 0;
  Init init = Init::identity;
  double final_objective = 0.0;
  double final_off_norm = 0.0;
  std::size_t sweeps = 0;
  bool converged = false;
  double max_aligned_error = 0.0;
};

// Solve each planted instance three times, once per initialization strategy,
// and report the objective floor and factor alignment each one reaches.
std::vector<InitComparisonRow> init_comparison_experiment(
    std::size_t instances, std::size_t d, std::size_t k, std::size_t L,
    double eps, const SolverOptions& opts);

}  // namespace simdiag
