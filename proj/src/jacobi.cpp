#include "simdiag/jacobi.hpp"

#include <cmath>

#include "simdiag/core.hpp"
#include "simdiag/errors.hpp"
#include "simdiag/linalg.hpp"
#include "simdiag/rng.hpp"

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

// Eigenvectors of one symmetric matrix: the solver run on a singleton set.
Matrix eigenvectors_of(const Matrix& m, double tol, int max_sweeps) {
  MatrixSet single(std::vector<Matrix>{m}, true);
  std::size_t d = m.rows();
  Matrix acc = Matrix::identity(d);
  double prev = off_objective(single);
  for (int t = 0; t < max_sweeps; ++t) {
    jacobi_sweep(single, acc, d, false);
    double f = off_objective(single);
    if (std::abs(prev - f) < tol) break;
    prev = f;
  }
  return acc;
}

void symmetrize(MatrixSet& set) {
  for (std::size_t l = 0; l < set.count(); ++l) {
    Matrix& m = set[l];
    for (std::size_t p = 0; p < m.rows(); ++p)
      for (std::size_t q = p + 1; q < m.cols(); ++q) {
        double v = 0.5 * (m(p, q) + m(q, p));
        m(p, q) = v;
        m(q, p) = v;
      }
  }
}

}  // namespace

GivensAngle optimal_givens_angle(const MatrixSet& set, std::size_t i,
                                 std::size_t j) {
  std::size_t d = set.count() ? set[0].rows() : 0;
  if (i >= d || j >= d || set[0].cols() != d)
    throw ShapeError("optimal_givens_angle: bad pair");
  double g11 = 0.0, g12 = 0.0, g22 = 0.0;
  for (std::size_t l = 0; l < set.count(); ++l) {
    const Matrix& m = set[l];
    double h1 = m(i, i) - m(j, j);
    double h2 = m(i, j) + m(j, i);
    g11 += h1 * h1;
    g12 += h1 * h2;
    g22 += h2 * h2;
  }
  if (g11 + g22 < 1e-300) return {1.0, 0.0};
  // Principal eigenvector of [[g11, g12], [g12, g22]].
  double mid = 0.5 * (g11 + g22);
  double lam = mid + std::sqrt(0.25 * (g11 - g22) * (g11 - g22) + g12 * g12);
  double x, y;
  // Two algebraic forms of the eigenvector; pick the better-conditioned one.
  if (lam - g22 >= lam - g11) {
    x = lam - g22;
    y = g12;
  } else {
    x = g12;
    y = lam - g11;
  }
  double r = std::hypot(x, y);
  if (r < 1e-300) return {1.0, 0.0};  // isotropic pair: any angle is equal
  if (x < 0) {
    x = -x;
    y = -y;
  }
  double c = std::sqrt((x + r) / (2.0 * r));
  double s = y / std::sqrt(2.0 * r * (x + r));
  return {c, s};
}

int jacobi_sweep(MatrixSet& set, Matrix& accumulator, std::size_t k, bool sort,
                 const TransformObserver& observer) {
  require_symmetric_square(set, "jacobi_sweep");
  std::size_t d = set[0].rows();
  if (k == 0 || k > d) throw OptionError("jacobi_sweep: rank out of range");
  if (accumulator.rows() != d || accumulator.cols() != d)
    throw ShapeError("jacobi_sweep: accumulator shape mismatch");
  int visited = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      GivensAngle g = optimal_givens_angle(set, i, j);
      if (g.s != 0.0) {
        apply_givens(set, i, j, g.c, g.s);
        givens_accumulate(accumulator, i, j, g.c, g.s);
      }
      ++visited;
      if (observer) observer(set);
      if (sort && diag_mass(set, j) > diag_mass(set, i)) {
        swap_components(set, accumulator, i, j);
        if (observer) observer(set);
      }
    }
  }
  return visited;
}

JointDiagResult jacobi_solve(const MatrixSet& set, const SolverOptions& opts) {
  require_symmetric_square(set, "jacobi_solve");
  if (opts.method != Method::jacobi)
    throw OptionError("jacobi_solve: options select a different method");
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
    symmetrize(work);
  }

  JointDiagResult result;
  result.objective_trace.push_back(off_objective(work));
  for (int t = 0; t < opts.max_sweeps; ++t) {
    result.rotations += jacobi_sweep(work, acc, k, sort);
    ++result.sweeps;
    double prev = result.objective_trace.back();
    double f = off_objective(work);
    result.objective_trace.push_back(f);
    if (std::abs(prev - f) < opts.tol) {
      result.converged = true;
      break;
    }
  }

  result.w = acc.transposed();
  result.u_est = acc.col_subset(0, k);
  canonicalize_columns(result.u_est);
  result.diagonals = Matrix(work.count(), d);
  for (std::size_t l = 0; l < work.count(); ++l)
    for (std::size_t p = 0; p < d; ++p) result.diagonals(l, p) = work[l](p, p);
  result.condition = condition_number(acc);
  return result;
}

Matrix init_transform(const MatrixSet& set, const SolverOptions& opts) {
  require_symmetric_square(set, "init_transform");
  std::size_t d = set[0].rows();
  switch (opts.init) {
    case Init::identity:
      return Matrix::identity(d);
    case Init::single_matrix:
      return eigenvectors_of(set[0], opts.tol, opts.max_sweeps);
    default: {
      Rng rng(opts.seed);
      std::size_t n = set.count();
      std::vector<double> w(n);
      double norm = 0.0;
      do {
        norm = 0.0;
        for (double& x : w) {
          x = rng.next_gaussian();
          norm += x * x;
        }
        norm = std::sqrt(norm);
      } while (norm < 1e-12);
      Matrix combo(d, d);
      for (std::size_t l = 0; l < n; ++l) {
        double wl = w[l] / norm;
        for (std::size_t p = 0; p < d; ++p)
          for (std::size_t q = 0; q < d; ++q)
            combo(p, q) += wl * set[l](p, q);
      }
      return eigenvectors_of(combo, opts.tol, opts.max_sweeps);
    }
  }
}

}  // namespace simdiag
