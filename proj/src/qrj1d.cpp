#include "simdiag/qrj1d.hpp"

#include <cmath>
#include <string>

#include "simdiag/core.hpp"
#include "simdiag/errors.hpp"
#include "simdiag/jacobi.hpp"
#include "simdiag/linalg.hpp"

namespace simdiag {

namespace {

void require_symmetric_square(const MatrixSet& set, const char* who) {
  if (set.count() == 0 || set[0].rows() != set[0].cols())
    throw ShapeError(std::string(who) + ": needs a square set");
  if (!set.symmetric())
    throw ShapeError(std::string(who) + ": needs a symmetric set");
}

double diag_mass(const MatrixSet& set, std::size_t p) {
  double s = 0.0;
  for (std::size_t l = 0; l < set.count(); ++l) s += std::abs(set[l](p, p));
  return s;
}

void shear_step(MatrixSet& set, Matrix& acc, std::size_t p, std::size_t q) {
  double a = optimal_shear(set, p, q);
  if (a != 0.0) {
    apply_shear(set, p, q, a);
    shear_accumulate(acc, p, q, a);
  }
}

}  // namespace

double optimal_shear(const MatrixSet& set, std::size_t i, std::size_t j) {
  std::size_t d = set.count() ? set[0].rows() : 0;
  if (i >= d || j >= d || set[0].cols() != d || i == j)
    throw ShapeError("optimal_shear: bad pair");
  double num = 0.0, den = 0.0, total = 0.0;
  for (std::size_t l = 0; l < set.count(); ++l) {
    const Matrix& m = set[l];
    const double* ri = m.row(i);
    const double* rj = m.row(j);
    for (std::size_t q = 0; q < d; ++q) {
      if (q == i) continue;
      num += ri[q] * rj[q];
      den += rj[q] * rj[q];
    }
    double fn = m.frobenius_norm();
    total += fn * fn;
  }
  // A source row whose joint mass sits at the rounding floor of the set
  // carries no signal; -num/den on such a row only pumps noise into the
  // accumulator.  Rank-deficient sets park exactly those rows past the
  // live block once sorted.
  if (den <= 1e-24 * (total / static_cast<double>(d))) return 0.0;
  return -num / den;
}

int qrj1d_sweep(MatrixSet& set, Matrix& accumulator, std::size_t k, bool sort,
                ShearDirections directions, const TransformObserver& observer) {
  require_symmetric_square(set, "qrj1d_sweep");
  std::size_t d = set[0].rows();
  if (k == 0 || k > d) throw OptionError("qrj1d_sweep: rank out of range");
  if (accumulator.rows() != d || accumulator.cols() != d)
    throw ShapeError("qrj1d_sweep: accumulator shape mismatch");

  int count = jacobi_sweep(set, accumulator, k, sort, observer);

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      int passes = directions == ShearDirections::upper_then_lower ? 2 : 1;
      for (int pass = 0; pass < passes; ++pass) {
        // A sorted truncated solve keeps its components in the leading k
        // slots; rows past them span no component and make degenerate shear
        // sources (the quadratic loses its floor there), so only the
        // rotation phase and the row-targeting pass touch them.
        if (pass == 0) {
          if (!sort || j < k) shear_step(set, accumulator, i, j);
        } else {
          shear_step(set, accumulator, j, i);
        }
        ++count;
        if (observer) observer(set);
        if (sort && diag_mass(set, j) > diag_mass(set, i)) {
          swap_components(set, accumulator, i, j);
          if (observer) observer(set);
        }
      }
    }
  }
  return count;
}

JointDiagResult qrj1d_solve(const MatrixSet& set, const SolverOptions& opts) {
  require_symmetric_square(set, "qrj1d_solve");
  if (opts.method != Method::qrj1d)
    throw OptionError("qrj1d_solve: options select a different method");
  std::size_t d = set[0].rows();
  opts.validate(d);
  std::size_t k = opts.resolve_rank(d);
  bool sort = opts.resolve_sort(d);

  MatrixSet work = set;
  Matrix acc = init_transform(set, opts);
  if (opts.init != Init::identity) {
    Matrix acc_t = acc.transposed();
    for (std::size_t l = 0; l < work.count(); ++l)
      work[l] = acc_t * set[l] * acc;
  }

  JointDiagResult result;
  result.objective_trace.push_back(off_objective(work));
  for (int t = 0; t < opts.max_sweeps; ++t) {
    result.rotations +=
        qrj1d_sweep(work, acc, k, sort, opts.shear_directions);
    ++result.sweeps;
    result.condition = condition_number(acc);
    if (result.condition > 1e12)
      throw IllConditionedError(
          "qrj1d_solve: accumulated transform condition " +
              std::to_string(result.condition) + " exceeds 1e12 at sweep " +
              std::to_string(result.sweeps),
          result.sweeps);
    double prev = result.objective_trace.back();
    double f = off_objective(work);
    result.objective_trace.push_back(f);
    if (std::abs(prev - f) < opts.tol) {
      result.converged = true;
      break;
    }
  }

  result.w = acc.transposed();
  Matrix factor = inverse(acc).transposed();
  result.u_est = factor.col_subset(0, k);
  canonicalize_columns(result.u_est);
  result.diagonals = Matrix(work.count(), d);
  for (std::size_t l = 0; l < work.count(); ++l)
    for (std::size_t p = 0; p < d; ++p) result.diagonals(l, p) = work[l](p, p);
  return result;
}

}  // namespace simdiag
