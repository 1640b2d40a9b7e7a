#include "simdiag/synthesis.hpp"

#include <cmath>
#include <vector>

#include "simdiag/errors.hpp"
#include "simdiag/linalg.hpp"
#include "simdiag/perturbation.hpp"
#include "simdiag/rng.hpp"

namespace simdiag {

namespace {

constexpr int kWeightRetries = 64;

void check_params(std::size_t d1, std::size_t d2, std::size_t k,
                  std::size_t L, double eps, double cond) {
  if (k == 0 || k > d1 || k > d2)
    throw OptionError("synthesis: rank must satisfy 1 <= k <= min(d1, d2)");
  if (L == 0) throw OptionError("synthesis: need at least one matrix");
  if (eps < 0.0) throw OptionError("synthesis: eps must be non-negative");
  if (cond < 1.0) throw OptionError("synthesis: cond must be at least 1");
}

// Weight rows with |entry| uniform in [0.5, 1.5] and random sign, redrawn
// until no pair of columns is nearly collinear (identifiability guard).
Matrix draw_weights(std::size_t L, std::size_t k, Rng& rng) {
  for (int attempt = 0; attempt < kWeightRetries; ++attempt) {
    Matrix lambdas(L, k);
    for (std::size_t l = 0; l < L; ++l)
      for (std::size_t j = 0; j < k; ++j) {
        double mag = 0.5 + rng.next_double();
        lambdas(l, j) = (rng.next_u64() & 1) ? mag : -mag;
      }
    if (k < 2) return lambdas;
    Matrix rho = modulus_of_uniqueness(lambdas);
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i)
      for (std::size_t j = i + 1; j < k && ok; ++j)
        if (std::abs(rho(i, j)) > 0.999) ok = false;
    if (ok) return lambdas;
  }
  throw UnidentifiableError(
      "synthesis: could not draw weight profiles distinct enough for "
      "identifiability (|rho| <= 0.999)");
}

// Unit-column factor with singular-value spread cond: Q1 D Q2^T restricted
// to k columns, then column-normalized.  cond = 1 gives orthonormal columns.
Matrix draw_factor(std::size_t d, std::size_t k, double cond, Rng& rng) {
  Matrix q1 = random_orthogonal(d, rng);
  if (cond == 1.0) {
    Matrix u = q1.col_subset(0, k);
    canonicalize_columns(u);
    return u;
  }
  Matrix q2 = random_orthogonal(d, rng);
  // Log-spaced singular values centered at geometric mean 1, ratio cond.
  std::vector<double> sigma(d, 1.0);
  for (std::size_t i = 0; i < d; ++i) {
    double t = d > 1 ? static_cast<double>(i) / (d - 1) : 0.5;
    sigma[i] = std::pow(cond, t - 0.5);
  }
  Matrix u(d, k);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        s += q1(p, i) * sigma[i] * q2(j, i);
      u(p, j) = s;
    }
  canonicalize_columns(u);
  return u;
}

// Exactly symmetric Gaussian direction with unit Frobenius norm.
Matrix draw_symmetric_noise(std::size_t d, Rng& rng) {
  Matrix r(d, d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = p; q < d; ++q) {
      double g = rng.next_gaussian();
      r(p, q) = g;
      r(q, p) = g;
    }
  double norm = r.frobenius_norm();
  if (norm > 0.0)
    for (double& x : r.flat()) x /= norm;
  return r;
}

Matrix draw_general_noise(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix r(rows, cols);
  for (double& x : r.flat()) x = rng.next_gaussian();
  double norm = r.frobenius_norm();
  if (norm > 0.0)
    for (double& x : r.flat()) x /= norm;
  return r;
}

Problem assemble_symmetric(const Matrix& u, const Matrix& lambdas, double eps,
                           std::uint64_t noise_seed) {
  std::size_t d = u.rows(), k = u.cols(), L = lambdas.rows();
  Rng rng(noise_seed);
  std::vector<Matrix> mats;
  std::vector<Matrix> noises;
  mats.reserve(L);
  noises.reserve(L);
  for (std::size_t l = 0; l < L; ++l) {
    Matrix r = draw_symmetric_noise(d, rng);
    Matrix m(d, d);
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p; q < d; ++q) {
        double s = 0.0;
        for (std::size_t j = 0; j < k; ++j)
          s += lambdas(l, j) * u(p, j) * u(q, j);
        s += eps * r(p, q);
        m(p, q) = s;
        m(q, p) = s;
      }
    mats.push_back(std::move(m));
    noises.push_back(std::move(r));
  }
  Problem problem;
  problem.set = MatrixSet(std::move(mats), true);
  GroundTruth truth;
  truth.u = u;
  truth.lambdas = lambdas;
  truth.eps = eps;
  truth.noises = std::move(noises);
  problem.truth = std::move(truth);
  return problem;
}

}  // namespace

Problem random_orthogonal_problem(std::size_t d, std::size_t k, std::size_t L,
                                  double eps, std::uint64_t seed) {
  check_params(d, d, k, L, eps, 1.0);
  Rng factor_rng(derive_seed(seed, 0));
  Rng weight_rng(derive_seed(seed, 1));
  Matrix u = draw_factor(d, k, 1.0, factor_rng);
  Matrix lambdas = draw_weights(L, k, weight_rng);
  return assemble_symmetric(u, lambdas, eps, derive_seed(seed, 2));
}

Problem random_nonorthogonal_problem(std::size_t d, std::size_t k,
                                     std::size_t L, double eps, double cond,
                                     std::uint64_t seed) {
  check_params(d, d, k, L, eps, cond);
  Rng factor_rng(derive_seed(seed, 0));
  Rng weight_rng(derive_seed(seed, 1));
  Matrix u = draw_factor(d, k, cond, factor_rng);
  Matrix lambdas = draw_weights(L, k, weight_rng);
  return assemble_symmetric(u, lambdas, eps, derive_seed(seed, 2));
}

Problem random_asymmetric_problem(std::size_t d1, std::size_t d2,
                                  std::size_t k, std::size_t L, double eps,
                                  double cond, std::uint64_t seed) {
  check_params(d1, d2, k, L, eps, cond);
  Rng u_rng(derive_seed(seed, 0));
  Rng v_rng(derive_seed(seed, 1));
  Rng weight_rng(derive_seed(seed, 2));
  Rng noise_rng(derive_seed(seed, 3));
  Matrix u = draw_factor(d1, k, cond, u_rng);
  Matrix v = draw_factor(d2, k, cond, v_rng);
  Matrix lambdas = draw_weights(L, k, weight_rng);

  std::vector<Matrix> mats;
  std::vector<Matrix> noises;
  mats.reserve(L);
  noises.reserve(L);
  for (std::size_t l = 0; l < L; ++l) {
    Matrix r = draw_general_noise(d1, d2, noise_rng);
    Matrix m(d1, d2);
    for (std::size_t p = 0; p < d1; ++p)
      for (std::size_t q = 0; q < d2; ++q) {
        double s = 0.0;
        for (std::size_t j = 0; j < k; ++j)
          s += lambdas(l, j) * u(p, j) * v(q, j);
        m(p, q) = s + eps * r(p, q);
      }
    mats.push_back(std::move(m));
    noises.push_back(std::move(r));
  }
  Problem problem;
  problem.set = MatrixSet(std::move(mats), false);
  GroundTruth truth;
  truth.u = u;
  truth.v = v;
  truth.lambdas = lambdas;
  truth.eps = eps;
  truth.noises = std::move(noises);
  problem.truth = std::move(truth);
  return problem;
}

}  // namespace simdiag
