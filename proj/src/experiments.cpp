#include "simdiag/experiments.hpp"

#include <cmath>
#include <limits>

#include "simdiag/core.hpp"
#include "simdiag/errors.hpp"
#include "simdiag/metrics.hpp"
#include "simdiag/rng.hpp"
#include "simdiag/synthesis.hpp"

namespace simdiag {

std::vector<TrialRecord> histogram_experiment(std::size_t trials,
                                              std::size_t d, std::size_t k,
                                              std::size_t L,
                                              const std::vector<double>& eps_list,
                                              const SolverOptions& opts) {
  std::vector<TrialRecord> records;
  records.reserve(trials * eps_list.size());
  for (std::size_t e = 0; e < eps_list.size(); ++e) {
    std::uint64_t eps_seed = derive_seed(opts.seed, e);
    for (std::size_t t = 0; t < trials; ++t) {
      std::uint64_t seed = derive_seed(eps_seed, t);
      TrialRecord rec;
      rec.trial = t;
      rec.eps = eps_list[e];
      rec.method = opts.method;
      rec.seed = seed;
      try {
        Problem problem = random_orthogonal_problem(d, k, L, eps_list[e], seed);
        SolverOptions run = opts;
        run.seed = derive_seed(seed, 4);  // past the synthesis streams
        JointDiagResult result = solve(problem.set, run);
        rec.final_objective = result.final_objective();
        rec.final_off_norm = std::sqrt(rec.final_objective);
        rec.sweeps = result.sweeps;
        rec.converged = result.converged;
      } catch (const NumericError& ex) {
        rec.error = ex.what();
        rec.final_objective = std::numeric_limits<double>::quiet_NaN();
        rec.final_off_norm = std::numeric_limits<double>::quiet_NaN();
        rec.converged = false;
      }
      records.push_back(std::move(rec));
    }
  }
  return records;
}

BoundValidation bound_validation_experiment(std::size_t instances,
                                            std::size_t d, std::size_t k,
                                            std::size_t L, double cond,
                                            const std::vector<double>& eps_list,
                                            const SolverOptions& opts) {
  BoundValidation out;
  for (std::size_t i = 0; i < instances; ++i) {
    std::uint64_t seed = derive_seed(opts.seed, i);
    try {
      Problem problem =
          opts.method == Method::jacobi
              ? random_orthogonal_problem(d, k, L, 0.0, seed)
              : random_nonorthogonal_problem(d, k, L, 0.0, cond, seed);
      std::vector<BoundCheckRow> rows =
          empirical_bound_check(*problem.truth, opts, eps_list);
      for (BoundCheckRow& row : rows) {
        row.instance = static_cast<int>(i);
        out.rows.push_back(row);
      }
    } catch (const UnidentifiableError&) {
      ++out.skipped;
    }
  }
  return out;
}

std::vector<InitComparisonRow> init_comparison_experiment(
    std::size_t instances, std::size_t d, std::size_t k, std::size_t L,
    double eps, const SolverOptions& opts) {
  const Init inits[] = {Init::identity, Init::single_matrix,
                        Init::random_projection};
  std::vector<InitComparisonRow> rows;
  rows.reserve(instances * 3);
  for (std::size_t i = 0; i < instances; ++i) {
    std::uint64_t seed = derive_seed(opts.seed, i);
    Problem problem = random_orthogonal_problem(d, k, L, eps, seed);
    for (Init init : inits) {
      SolverOptions run = opts;
      run.init = init;
      run.rank = k;
      run.seed = derive_seed(seed, 4);
      JointDiagResult result = solve(problem.set, run);
      InitComparisonRow row;
      row.instance = i;
      row.init = init;
      row.final_objective = result.final_objective();
      row.final_off_norm = std::sqrt(row.final_objective);
      row.sweeps = result.sweeps;
      row.converged = result.converged;
      AlignmentReport report = align_factors(result.u_est, problem.truth->u,
                                             AlignMode::sign);
      row.max_aligned_error = report.max_error;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace simdiag
