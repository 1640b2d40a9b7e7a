#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <vector>

#include "simdiag/asymmetric.hpp"
#include "simdiag/core.hpp"
#include "simdiag/errors.hpp"
#include "simdiag/matrix.hpp"
#include "simdiag/matrix_set.hpp"
#include "simdiag/metrics.hpp"
#include "simdiag/solver.hpp"
#include "simdiag/synthesis.hpp"

namespace py = pybind11;
using namespace simdiag;

namespace {

using Rows = std::vector<std::vector<double>>;

Matrix to_matrix(const Rows& rows) {
  if (rows.empty()) throw ShapeError("matrix needs at least one row");
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw ShapeError("matrix rows have inconsistent lengths");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Rows from_matrix(const Matrix& m) {
  Rows out(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

MatrixSet to_set(const std::vector<Rows>& matrices, bool symmetric) {
  std::vector<Matrix> ms;
  ms.reserve(matrices.size());
  for (const Rows& r : matrices) ms.push_back(to_matrix(r));
  return MatrixSet(std::move(ms), symmetric);
}

SolverOptions make_options(const std::string& method, std::size_t rank,
                           double tol, int max_sweeps,
                           const std::optional<bool>& sort,
                           const std::string& init, std::uint64_t seed,
                           const std::string& shear_directions) {
  SolverOptions opts;
  opts.method = method_from_string(method);
  opts.rank = rank;
  opts.tol = tol;
  opts.max_sweeps = max_sweeps;
  opts.sort = sort;
  opts.init = init_from_string(init);
  opts.seed = seed;
  opts.shear_directions = shear_directions_from_string(shear_directions);
  return opts;
}

py::dict result_dict(const JointDiagResult& r) {
  py::dict d;
  d["W"] = from_matrix(r.w);
  d["U_est"] = from_matrix(r.u_est);
  d["diagonals"] = from_matrix(r.diagonals);
  d["objective_trace"] = r.objective_trace;
  d["sweeps"] = r.sweeps;
  d["converged"] = r.converged;
  d["rotations"] = r.rotations;
  d["condition"] = r.condition;
  return d;
}

py::dict problem_dict(const Problem& p) {
  py::dict d;
  std::vector<Rows> mats;
  for (const Matrix& m : p.set.matrices()) mats.push_back(from_matrix(m));
  d["matrices"] = mats;
  d["symmetric"] = p.set.symmetric();
  d["U"] = from_matrix(p.truth->u);
  if (p.truth->v) d["V"] = from_matrix(*p.truth->v);
  d["lambdas"] = from_matrix(p.truth->lambdas);
  d["eps"] = p.truth->eps;
  return d;
}

}  // namespace

PYBIND11_MODULE(_simdiag, m) {
  m.doc() = "simultaneous matrix diagonalization";

  m.def(
      "off_objective",
      [](const std::vector<Rows>& matrices) {
        double s = 0.0;
        for (const Rows& r : matrices) s += off_objective(to_matrix(r));
        return s;
      },
      py::arg("matrices"),
      "sum of squared off-diagonal entries across the set");

  m.def(
      "off_norm",
      [](const std::vector<Rows>& matrices) {
        double s = 0.0;
        for (const Rows& r : matrices) s += off_objective(to_matrix(r));
        return std::sqrt(s);
      },
      py::arg("matrices"));

  m.def(
      "solve",
      [](const std::vector<Rows>& matrices, const std::string& method,
         std::size_t rank, double tol, int max_sweeps,
         const std::optional<bool>& sort, const std::string& init,
         std::uint64_t seed, const std::string& shear_directions) {
        MatrixSet set = to_set(matrices, true);
        SolverOptions opts = make_options(method, rank, tol, max_sweeps, sort,
                                          init, seed, shear_directions);
        return result_dict(solve(set, opts));
      },
      py::arg("matrices"), py::arg("method") = "jacobi", py::arg("rank") = 0,
      py::arg("tol") = 1e-12, py::arg("max_sweeps") = 200,
      py::arg("sort") = std::nullopt, py::arg("init") = "identity",
      py::arg("seed") = 0, py::arg("shear_directions") = "upper_then_lower",
      "jointly diagonalize symmetric matrices; returns W with W M W^T nearly "
      "diagonal plus the factor estimate");

  m.def(
      "asym_solve",
      [](const std::vector<Rows>& matrices, std::size_t rank,
         const std::string& method, double tol, int max_sweeps,
         const std::string& init, std::uint64_t seed) {
        MatrixSet set = to_set(matrices, false);
        SolverOptions opts = make_options(method, rank, tol, max_sweeps,
                                          std::nullopt, init, seed,
                                          "upper_then_lower");
        AsymResult r = asym_solve(set, opts);
        py::dict d;
        d["U_est"] = from_matrix(r.u_est);
        d["V_est"] = from_matrix(r.v_est);
        d["lambdas"] = from_matrix(r.lambdas);
        d["W"] = from_matrix(r.embedded.w);
        d["sweeps"] = r.embedded.sweeps;
        d["converged"] = r.embedded.converged;
        return d;
      },
      py::arg("matrices"), py::arg("rank") = 0, py::arg("method") = "jacobi",
      py::arg("tol") = 1e-12, py::arg("max_sweeps") = 200,
      py::arg("init") = "identity", py::arg("seed") = 0,
      "factor rectangular matrices M_l ~ U diag(lambda_l) V^T via the "
      "symmetric block embedding");

  m.def(
      "stationarity_residual",
      [](const std::vector<Rows>& matrices) {
        return stationarity_residual(to_set(matrices, true));
      },
      py::arg("matrices"));

  m.def(
      "align_factors",
      [](const Rows& truth, const Rows& estimate, const std::string& mode) {
        AlignMode am = mode == "scale" ? AlignMode::scale : AlignMode::sign;
        AlignmentReport rep = align_factors(to_matrix(estimate),
                                            to_matrix(truth), am);
        py::dict d;
        d["permutation"] = rep.permutation;
        d["signs_or_scales"] = rep.signs_or_scales;
        d["column_errors"] = rep.column_errors;
        d["max_error"] = rep.max_error;
        d["mean_error"] = rep.mean_error;
        return d;
      },
      py::arg("truth"), py::arg("estimate"), py::arg("mode") = "sign");

  m.def(
      "random_orthogonal_problem",
      [](std::size_t d, std::size_t k, std::size_t L, double eps,
         std::uint64_t seed) {
        return problem_dict(random_orthogonal_problem(d, k, L, eps, seed));
      },
      py::arg("d"), py::arg("k"), py::arg("L"), py::arg("eps") = 0.0,
      py::arg("seed") = 0);

  m.def(
      "random_nonorthogonal_problem",
      [](std::size_t d, std::size_t k, std::size_t L, double eps, double cond,
         std::uint64_t seed) {
        return problem_dict(
            random_nonorthogonal_problem(d, k, L, eps, cond, seed));
      },
      py::arg("d"), py::arg("k"), py::arg("L"), py::arg("eps") = 0.0,
      py::arg("cond") = 3.0, py::arg("seed") = 0);

  m.def(
      "random_asymmetric_problem",
      [](std::size_t d1, std::size_t d2, std::size_t k, std::size_t L,
         double eps, double cond, std::uint64_t seed) {
        return problem_dict(
            random_asymmetric_problem(d1, d2, k, L, eps, cond, seed));
      },
      py::arg("d1"), py::arg("d2"), py::arg("k"), py::arg("L"),
      py::arg("eps") = 0.0, py::arg("cond") = 1.0, py::arg("seed") = 0);
}
