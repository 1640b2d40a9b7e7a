#include "simdiag/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simdiag/errors.hpp"

namespace simdiag {

Matrix congruence(const Matrix& w, const Matrix& m) {
  return w * m * w.transposed();
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("inverse needs a square matrix");
  std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) < 1e-300)
      throw NumericError("singular matrix in inverse");
    a.swap_rows(col, pivot);
    inv.swap_rows(col, pivot);
    double d = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= d;
      inv(col, c) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

QrFactors householder_qr(const Matrix& a) {
  std::size_t m = a.rows(), n = a.cols();
  Matrix r = a;
  Matrix q = Matrix::identity(m);
  std::size_t steps = std::min(m == 0 ? 0 : m - 1, n);
  for (std::size_t k = 0; k < steps; ++k) {
    // Householder vector for column k below the diagonal.
    double norm = 0.0;
    for (std::size_t i = k; i < m; ++i) norm += r(i, k) * r(i, k);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    double alpha = r(k, k) > 0 ? -norm : norm;
    std::vector<double> v(m - k);
    v[0] = r(k, k) - alpha;
    for (std::size_t i = k + 1; i < m; ++i) v[i - k] = r(i, k);
    double vnorm2 = 0.0;
    for (double x : v) vnorm2 += x * x;
    if (vnorm2 == 0.0) continue;
    // r <- (I - 2 v v^T / v^T v) r, applied to the trailing block.
    for (std::size_t c = k; c < n; ++c) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += v[i - k] * r(i, c);
      s = 2.0 * s / vnorm2;
      for (std::size_t i = k; i < m; ++i) r(i, c) -= s * v[i - k];
    }
    // q <- q (I - 2 v v^T / v^T v): accumulate reflectors from the right.
    for (std::size_t row = 0; row < m; ++row) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += q(row, i) * v[i - k];
      s = 2.0 * s / vnorm2;
      for (std::size_t i = k; i < m; ++i) q(row, i) -= s * v[i - k];
    }
  }
  // Zero the below-diagonal round-off and fix the diagonal sign of R.
  for (std::size_t j = 0; j < std::min(m, n); ++j) {
    if (r(j, j) < 0) {
      for (std::size_t c = 0; c < n; ++c) r(j, c) = -r(j, c);
      for (std::size_t i = 0; i < m; ++i) q(i, j) = -q(i, j);
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < std::min(i, n); ++j) r(i, j) = 0.0;
  return {std::move(q), std::move(r)};
}

std::vector<double> singular_values(const Matrix& a) {
  // One-sided rotations orthogonalize the columns; the singular values are
  // then the column norms.  Work on the tall orientation.
  Matrix w = a.rows() >= a.cols() ? a : a.transposed();
  std::size_t m = w.rows(), n = w.cols();
  const double eps = 1e-15;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          app += w(i, p) * w(i, p);
          aqq += w(i, q) * w(i, q);
          apq += w(i, p) * w(i, q);
        }
        if (std::abs(apq) <= eps * std::sqrt(app * aqq)) continue;
        rotated = true;
        double zeta = (aqq - app) / (2.0 * apq);
        double t = (zeta >= 0 ? 1.0 : -1.0) /
                   (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          double wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += w(i, j) * w(i, j);
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double condition_number(const Matrix& a) {
  std::vector<double> sv = singular_values(a);
  if (sv.empty()) return 1.0;
  double smin = sv.back(), smax = sv.front();
  if (smin <= smax * 1e-300 || smin == 0.0)
    return std::numeric_limits<double>::infinity();
  return smax / smin;
}

Matrix complete_orthonormal_basis(const Matrix& u) {
  std::size_t d = u.rows(), k = u.cols();
  if (k > d) throw ShapeError("more columns than dimensions");
  if (k == d) return Matrix(d, 0);
  // The trailing columns of the full Q span the orthogonal complement of
  // u's column span (u must have full column rank).
  QrFactors qr = householder_qr(u);
  for (std::size_t j = 0; j < k; ++j)
    if (std::abs(qr.r(j, j)) < 1e-12)
      throw NumericError("basis completion: input columns are rank deficient");
  return qr.q.col_subset(k, d - k);
}

Matrix random_orthogonal(std::size_t n, Rng& rng) {
  Matrix g(n, n);
  for (double& x : g.flat()) x = rng.next_gaussian();
  return householder_qr(g).q;
}

void canonicalize_columns(Matrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double norm = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) norm += m(i, j) * m(i, j);
    norm = std::sqrt(norm);
    if (norm < 1e-300) continue;
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      double a = std::abs(m(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    double scale = (m(arg, j) < 0 ? -1.0 : 1.0) / norm;
    m.scale_col(j, scale);
  }
}

}  // namespace simdiag
