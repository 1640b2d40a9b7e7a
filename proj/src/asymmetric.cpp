#include "simdiag/asymmetric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "simdiag/core.hpp"
#include "simdiag/errors.hpp"
#include "simdiag/linalg.hpp"

namespace simdiag {

namespace {

double column_norm(const Matrix& m, std::size_t j) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

// Sign of the first weight entry that is clearly nonzero; 0 when all vanish.
int leading_sign(const std::vector<double>& y) {
  double scale = 0.0;
  for (double x : y) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0;
  for (double x : y)
    if (std::abs(x) > 1e-12 * scale) return x < 0 ? -1 : 1;
  return 0;
}

}  // namespace

MatrixSet embed(const MatrixSet& set) {
  std::size_t d1 = set.rows(), d2 = set.cols();
  std::size_t n = d1 + d2;
  std::vector<Matrix> out;
  out.reserve(set.count());
  for (std::size_t l = 0; l < set.count(); ++l) {
    const Matrix& m = set[l];
    Matrix big(n, n);
    for (std::size_t p = 0; p < d1; ++p)
      for (std::size_t q = 0; q < d2; ++q) {
        big(d2 + p, q) = m(p, q);
        big(q, d2 + p) = m(p, q);
      }
    out.push_back(std::move(big));
  }
  return MatrixSet(std::move(out), true);
}

AsymResult recover_factors(const JointDiagResult& embedded, std::size_t d1,
                           std::size_t d2, std::size_t k) {
  std::size_t n = d1 + d2;
  if (embedded.w.rows() != n || embedded.w.cols() != n)
    throw ShapeError("recover_factors: embedded transform is not (d1+d2) square");
  if (2 * k > n || k == 0)
    throw ShapeError("recover_factors: rank out of range");
  std::size_t m = 2 * k;
  std::size_t L = embedded.diagonals.rows();

  // Raw factor columns and the weights that go with their unit versions:
  // M ~ sum_p mu_p f_p f_p^T with f_p the columns of the inverse-transposed
  // transform, so the unit-factor weight picks up |f_p|^2.
  Matrix factor = inverse(embedded.w);
  std::vector<std::vector<double>> weights(m, std::vector<double>(L));
  std::vector<double> weight_norms(m, 0.0);
  for (std::size_t p = 0; p < m; ++p) {
    double fn = column_norm(factor, p);
    for (std::size_t l = 0; l < L; ++l) {
      weights[p][l] = embedded.diagonals(l, p) * fn * fn;
      weight_norms[p] += weights[p][l] * weights[p][l];
    }
    weight_norms[p] = std::sqrt(weight_norms[p]);
  }

  double max_weight_norm = 0.0;
  for (double wn : weight_norms) max_weight_norm = std::max(max_weight_norm, wn);
  for (std::size_t p = 0; p < m; ++p)
    if (weight_norms[p] <= 1e-10 * max_weight_norm)
      throw RankError("recover_factors: embedded component " +
                      std::to_string(p) +
                      " carries no weight; fewer than the requested rank are "
                      "recoverable");

  // Anti-parallel threshold, relaxed with the residual left by the solve.
  double diag_scale = 0.0;
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t p = 0; p < n; ++p)
      diag_scale += embedded.diagonals(l, p) * embedded.diagonals(l, p);
  diag_scale = std::sqrt(diag_scale);
  double residual = std::sqrt(embedded.final_objective()) /
                    std::max(diag_scale, 1e-300);
  double threshold = -0.99 + std::min(0.45, 20.0 * residual);

  // Greedy pairing on weight-profile cosine, most anti-parallel first.
  std::vector<bool> used(m, false);
  std::vector<std::pair<std::size_t, std::size_t>> pairing;
  for (std::size_t round = 0; round < k; ++round) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bp = 0, bq = 0;
    for (std::size_t p = 0; p < m; ++p) {
      if (used[p]) continue;
      for (std::size_t q = p + 1; q < m; ++q) {
        if (used[q]) continue;
        double dot = 0.0;
        for (std::size_t l = 0; l < L; ++l) dot += weights[p][l] * weights[q][l];
        double cosine = dot / (weight_norms[p] * weight_norms[q]);
        if (cosine < best) {
          best = cosine;
          bp = p;
          bq = q;
        }
      }
    }
    if (best > threshold)
      throw PairingError(
          "recover_factors: embedded component " + std::to_string(bp) +
          " has no anti-parallel partner (best cosine " +
          std::to_string(best) + ")");
    used[bp] = used[bq] = true;
    int sign_p = leading_sign(weights[bp]);
    if (sign_p > 0)
      pairing.emplace_back(bp, bq);
    else
      pairing.emplace_back(bq, bp);
  }
  std::sort(pairing.begin(), pairing.end());

  AsymResult result;
  result.u_est = Matrix(d1, k);
  result.v_est = Matrix(d2, k);
  result.lambdas = Matrix(L, k);
  result.pairing = pairing;

  const double root2 = std::sqrt(2.0);
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t pos = pairing[j].first;
    // Unit embedded component with canonical sign.
    double fn = column_norm(factor, pos);
    if (fn < 1e-300)
      throw RankError("recover_factors: embedded component " +
                      std::to_string(pos) + " has a vanishing factor column");
    std::vector<double> w(n);
    double max_abs = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = factor(i, pos) / fn;
      if (std::abs(w[i]) > max_abs) {
        max_abs = std::abs(w[i]);
        arg = i;
      }
    }
    if (w[arg] < 0)
      for (double& x : w) x = -x;

    double un = 0.0, vn = 0.0;
    for (std::size_t i = 0; i < d2; ++i) vn += 2.0 * w[i] * w[i];
    for (std::size_t i = 0; i < d1; ++i)
      un += 2.0 * w[d2 + i] * w[d2 + i];
    un = std::sqrt(un);
    vn = std::sqrt(vn);
    if (un < 1e-12 || vn < 1e-12)
      throw PairingError("recover_factors: component " + std::to_string(pos) +
                         " has no mass in one of the embedding blocks");
    for (std::size_t i = 0; i < d1; ++i)
      result.u_est(i, j) = root2 * w[d2 + i] / un;
    for (std::size_t i = 0; i < d2; ++i)
      result.v_est(i, j) = root2 * w[i] / vn;
    for (std::size_t l = 0; l < L; ++l)
      result.lambdas(l, j) = weights[pos][l] * un * vn;
  }

  // Canonical signs on u and v, folded into the weights so the reconstructed
  // products are unchanged.
  for (std::size_t j = 0; j < k; ++j) {
    double flip = 1.0;
    for (Matrix* f : {&result.u_est, &result.v_est}) {
      double max_abs = -1.0;
      std::size_t arg = 0;
      for (std::size_t i = 0; i < f->rows(); ++i)
        if (std::abs((*f)(i, j)) > max_abs) {
          max_abs = std::abs((*f)(i, j));
          arg = i;
        }
      if ((*f)(arg, j) < 0) {
        for (std::size_t i = 0; i < f->rows(); ++i) (*f)(i, j) = -(*f)(i, j);
        flip = -flip;
      }
    }
    if (flip < 0)
      for (std::size_t l = 0; l < result.lambdas.rows(); ++l)
        result.lambdas(l, j) = -result.lambdas(l, j);
  }

  result.embedded = embedded;
  return result;
}

AsymResult asym_solve(const MatrixSet& set, const SolverOptions& opts) {
  std::size_t d1 = set.rows(), d2 = set.cols();
  std::size_t k = opts.rank == 0 ? std::min(d1, d2) : opts.rank;
  if (k > std::min(d1, d2))
    throw OptionError("asym_solve: rank exceeds min(d1, d2)");
  if (set.count() < 2)
    throw OptionError("asym_solve: need at least two matrices for an "
                      "identifiable asymmetric factorization");
  MatrixSet embedded_set = embed(set);
  SolverOptions embed_opts = opts;
  embed_opts.rank = 2 * k;
  embed_opts.sort = true;
  JointDiagResult embedded = solve(embedded_set, embed_opts);
  return recover_factors(embedded, d1, d2, k);
}

MatrixSet gram_reduce(const MatrixSet& set) {
  std::size_t d1 = set.rows(), d2 = set.cols();
  std::vector<Matrix> out;
  out.reserve(set.count());
  for (std::size_t l = 0; l < set.count(); ++l) {
    const Matrix& m = set[l];
    Matrix g(d2, d2);
    for (std::size_t p = 0; p < d2; ++p)
      for (std::size_t q = p; q < d2; ++q) {
        double s = 0.0;
        for (std::size_t r = 0; r < d1; ++r) s += m(r, p) * m(r, q);
        g(p, q) = s;
        g(q, p) = s;
      }
    out.push_back(std::move(g));
  }
  return MatrixSet(std::move(out), true);
}

}  // namespace simdiag
