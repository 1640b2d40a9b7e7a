#include "simdiag/core.hpp"

#include <cmath>

#include "simdiag/errors.hpp"

namespace simdiag {

namespace {

void require_square(const MatrixSet& set, const char* op) {
  if (set.count() == 0 || set[0].rows() != set[0].cols())
    throw ShapeError(std::string(op) + " needs a square matrix set");
}

void check_pair(const MatrixSet& set, std::size_t i, std::size_t j,
                const char* op) {
  require_square(set, op);
  std::size_t d = set[0].rows();
  if (i >= d || j >= d) throw ShapeError(std::string(op) + ": index out of range");
  if (i == j) throw ShapeError(std::string(op) + ": indices must differ");
}

}  // namespace

double off_objective(const Matrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j) s += m(i, j) * m(i, j);
  return s;
}

double off_objective(const MatrixSet& set) {
  require_square(set, "off_objective");
  double s = 0.0;
  for (std::size_t l = 0; l < set.count(); ++l) s += off_objective(set[l]);
  return s;
}

double off_norm(const MatrixSet& set) { return std::sqrt(off_objective(set)); }

void apply_givens(MatrixSet& set, std::size_t i, std::size_t j, double c,
                  double s) {
  check_pair(set, i, j, "apply_givens");
  if (std::abs(c * c + s * s - 1.0) > 1e-12)
    throw OptionError("apply_givens: (c, s) is not on the unit circle");
  std::size_t d = set[0].rows();
  for (std::size_t l = 0; l < set.count(); ++l) {
    Matrix& m = set[l];
    double* ri = m.row(i);
    double* rj = m.row(j);
    for (std::size_t q = 0; q < d; ++q) {
      double a = ri[q], b = rj[q];
      ri[q] = c * a + s * b;
      rj[q] = -s * a + c * b;
    }
    for (std::size_t p = 0; p < d; ++p) {
      double a = m(p, i), b = m(p, j);
      m(p, i) = c * a + s * b;
      m(p, j) = -s * a + c * b;
    }
  }
}

void givens_accumulate(Matrix& v, std::size_t i, std::size_t j, double c,
                       double s) {
  for (std::size_t p = 0; p < v.rows(); ++p) {
    double a = v(p, i), b = v(p, j);
    v(p, i) = c * a + s * b;
    v(p, j) = -s * a + c * b;
  }
}

void apply_shear(MatrixSet& set, std::size_t i, std::size_t j, double a) {
  check_pair(set, i, j, "apply_shear");
  std::size_t d = set[0].rows();
  for (std::size_t l = 0; l < set.count(); ++l) {
    Matrix& m = set[l];
    double* ri = m.row(i);
    const double* rj = m.row(j);
    for (std::size_t q = 0; q < d; ++q) ri[q] += a * rj[q];
    for (std::size_t p = 0; p < d; ++p) m(p, i) += a * m(p, j);
  }
}

void shear_accumulate(Matrix& v, std::size_t i, std::size_t j, double a) {
  for (std::size_t p = 0; p < v.rows(); ++p) v(p, i) += a * v(p, j);
}

void swap_components(MatrixSet& set, Matrix& accumulator, std::size_t i,
                     std::size_t j) {
  require_square(set, "swap_components");
  std::size_t d = set[0].rows();
  if (i >= d || j >= d)
    throw ShapeError("swap_components: index out of range");
  if (i == j) return;
  for (std::size_t l = 0; l < set.count(); ++l) {
    set[l].swap_rows(i, j);
    set[l].swap_cols(i, j);
  }
  accumulator.swap_cols(i, j);
}

double stationarity_residual(const MatrixSet& set) {
  require_square(set, "stationarity_residual");
  std::size_t d = set[0].rows();
  Matrix s(d, d);
  for (std::size_t l = 0; l < set.count(); ++l) {
    const Matrix& m = set[l];
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = 0; q < d; ++q) {
        double mmt = 0.0, mtm = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
          mmt += m(p, r) * m(q, r);
          mtm += m(r, p) * m(r, q);
        }
        s(p, q) += mmt - mtm + m(q, p) * (m(q, q) - m(p, p));
      }
    }
  }
  double r = 0.0;
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) {
      double diff = s(p, q) - s(q, p);
      r += diff * diff;
    }
  return std::sqrt(r);
}

}  // namespace simdiag
