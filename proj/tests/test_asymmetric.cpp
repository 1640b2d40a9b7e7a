#include <cmath>
#include <set>
#include <vector>

#include <doctest.h>

#include "simdiag/asymmetric.hpp"
#include "simdiag/core.hpp"
#include "simdiag/errors.hpp"
#include "simdiag/linalg.hpp"
#include "simdiag/matrix.hpp"
#include "simdiag/matrix_set.hpp"
#include "simdiag/metrics.hpp"
#include "simdiag/rng.hpp"
#include "simdiag/synthesis.hpp"

using simdiag::AsymResult;
using simdiag::JointDiagResult;
using simdiag::Matrix;
using simdiag::MatrixSet;
using simdiag::Method;
using simdiag::OptionError;
using simdiag::PairingError;
using simdiag::Problem;
using simdiag::RankError;
using simdiag::Rng;
using simdiag::ShapeError;
using simdiag::SolverOptions;

namespace {

Matrix reconstruct(const AsymResult& r, std::size_t l) {
  std::size_t d1 = r.u_est.rows(), d2 = r.v_est.rows(), k = r.u_est.cols();
  Matrix m(d1, d2);
  for (std::size_t p = 0; p < d1; ++p)
    for (std::size_t q = 0; q < d2; ++q) {
      double s = 0.0;
      for (std::size_t j = 0; j < k; ++j)
        s += r.lambdas(l, j) * r.u_est(p, j) * r.v_est(q, j);
      m(p, q) = s;
    }
  return m;
}

double max_reconstruction_error(const AsymResult& r, const MatrixSet& set) {
  double worst = 0.0;
  for (std::size_t l = 0; l < set.count(); ++l) {
    double rel = (reconstruct(r, l) - set[l]).frobenius_norm() /
                 set[l].frobenius_norm();
    worst = std::max(worst, rel);
  }
  return worst;
}

// Effective weight profile of embedded component p: the diagonal entries
// rescaled onto the unit version of the corresponding factor column.
std::vector<double> component_weights(const JointDiagResult& embedded,
                                      std::size_t p) {
  Matrix factor = simdiag::inverse(embedded.w);
  double n2 = 0.0;
  for (std::size_t i = 0; i < factor.rows(); ++i)
    n2 += factor(i, p) * factor(i, p);
  std::vector<double> y(embedded.diagonals.rows());
  for (std::size_t l = 0; l < y.size(); ++l)
    y[l] = embedded.diagonals(l, p) * n2;
  return y;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / std::sqrt(na * nb);
}

}  // namespace

TEST_SUITE("asymmetric") {

TEST_CASE("embedding a single entry") {
  MatrixSet set(std::vector<Matrix>{Matrix::from_rows(1, 1, {1})}, false);
  MatrixSet big = simdiag::embed(set);
  CHECK(big.dim() == 2);
  CHECK(big[0](0, 0) == 0.0);
  CHECK(big[0](0, 1) == 1.0);
  CHECK(big[0](1, 0) == 1.0);
  CHECK(big[0](1, 1) == 0.0);
  CHECK(big.symmetric());
}

TEST_CASE("embedding block structure and norm") {
  Rng rng(600);
  Matrix m(3, 2);
  for (double& x : m.flat()) x = rng.next_gaussian();
  MatrixSet set(std::vector<Matrix>{m}, false);
  MatrixSet big = simdiag::embed(set);
  std::size_t d1 = 3, d2 = 2, n = 5;
  REQUIRE(big.dim() == n);
  const Matrix& b = big[0];
  // top-left d2 x d2 and bottom-right d1 x d1 blocks are zero
  for (std::size_t p = 0; p < d2; ++p)
    for (std::size_t q = 0; q < d2; ++q) CHECK(b(p, q) == 0.0);
  for (std::size_t p = 0; p < d1; ++p)
    for (std::size_t q = 0; q < d1; ++q) CHECK(b(d2 + p, d2 + q) == 0.0);
  // bottom-left block is M, top-right is M^T, exact
  for (std::size_t p = 0; p < d1; ++p)
    for (std::size_t q = 0; q < d2; ++q) {
      CHECK(b(d2 + p, q) == m(p, q));
      CHECK(b(q, d2 + p) == m(p, q));
    }
  CHECK(b.frobenius_norm() ==
        doctest::Approx(std::sqrt(2.0) * m.frobenius_norm()).epsilon(1e-14));
}

TEST_CASE("planted factorization of the embedded set") {
  Problem p = simdiag::random_asymmetric_problem(4, 3, 2, 5, 0.0, 1.0, 601);
  const auto& t = *p.truth;
  std::size_t d1 = 4, d2 = 3, k = 2, n = d1 + d2;
  MatrixSet big = simdiag::embed(p.set);

  // W = (1/sqrt2) [[V, V], [U, -U]],  D_l = diag(lam_l, -lam_l):
  // W D_l W^T must rebuild the embedded matrix exactly.
  Matrix w(n, 2 * k);
  const double r2 = std::sqrt(0.5);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < d2; ++i) {
      w(i, j) = r2 * (*t.v)(i, j);
      w(i, k + j) = r2 * (*t.v)(i, j);
    }
    for (std::size_t i = 0; i < d1; ++i) {
      w(d2 + i, j) = r2 * t.u(i, j);
      w(d2 + i, k + j) = -r2 * t.u(i, j);
    }
  }
  for (std::size_t l = 0; l < 5; ++l) {
    Matrix rebuilt(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        double s = 0.0;
        for (std::size_t j = 0; j < k; ++j)
          s += t.lambdas(l, j) * (w(a, j) * w(b, j) - w(a, k + j) * w(b, k + j));
        rebuilt(a, b) = s;
      }
    CHECK((rebuilt - big[l]).max_abs() < 1e-12);
  }
}

TEST_CASE("orthogonal planted factors are recovered") {
  Problem p = simdiag::random_asymmetric_problem(7, 9, 3, 6, 0.0, 1.0, 602);
  SolverOptions opts;
  opts.rank = 3;
  AsymResult r = simdiag::asym_solve(p.set, opts);

  CHECK(r.u_est.rows() == 7);
  CHECK(r.v_est.rows() == 9);
  CHECK(r.u_est.cols() == 3);
  CHECK(max_reconstruction_error(r, p.set) < 1e-8);

  auto ur = simdiag::align_factors(r.u_est, p.truth->u, simdiag::AlignMode::sign);
  auto vr = simdiag::align_factors(r.v_est, *p.truth->v, simdiag::AlignMode::sign);
  CHECK(ur.max_error < 1e-7);
  CHECK(vr.max_error < 1e-7);

  // pairing covers 2k distinct embedded components, positive member first
  std::set<std::size_t> seen;
  for (auto [pos, neg] : r.pairing) {
    CHECK(pos < 16);
    CHECK(neg < 16);
    seen.insert(pos);
    seen.insert(neg);
    auto yp = component_weights(r.embedded, pos);
    auto yn = component_weights(r.embedded, neg);
    CHECK(cosine(yp, yn) <= -0.999999);
    // the positive member leads with a positive weight
    double lead = 0.0;
    for (double x : yp)
      if (std::abs(x) > 1e-9) {
        lead = x;
        break;
      }
    CHECK(lead > 0.0);
  }
  CHECK(seen.size() == 6);
}

TEST_CASE("non-orthogonal planted factors through the shear solver") {
  Problem p = simdiag::random_asymmetric_problem(6, 7, 2, 6, 0.0, 2.0, 603);
  SolverOptions opts;
  opts.method = Method::qrj1d;
  opts.rank = 2;
  AsymResult r = simdiag::asym_solve(p.set, opts);
  CHECK(max_reconstruction_error(r, p.set) < 1e-4);
  auto ur = simdiag::align_factors(r.u_est, p.truth->u, simdiag::AlignMode::scale);
  auto vr = simdiag::align_factors(r.v_est, *p.truth->v, simdiag::AlignMode::scale);
  CHECK(ur.max_error < 1e-4);
  CHECK(vr.max_error < 1e-4);
}

TEST_CASE("two scaled copies of a single entry") {
  MatrixSet set(std::vector<Matrix>{Matrix::from_rows(1, 1, {1}),
                                    Matrix::from_rows(1, 1, {2})},
                false);
  SolverOptions opts;
  AsymResult r = simdiag::asym_solve(set, opts);
  CHECK(r.u_est(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.v_est(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.lambdas(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.lambdas(1, 0) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("asking for more rank than planted fails loudly") {
  Problem p = simdiag::random_asymmetric_problem(4, 5, 2, 4, 0.0, 1.0, 604);
  SolverOptions opts;
  opts.rank = 3;
  CHECK_THROWS_AS(simdiag::asym_solve(p.set, opts), RankError);
}

TEST_CASE("recover_factors rejects unpairable weight profiles") {
  JointDiagResult fake;
  fake.w = Matrix::identity(2);
  fake.diagonals = Matrix::from_rows(2, 2, {1, 1, 2, 2});  // parallel profiles
  fake.objective_trace = {0.0};
  CHECK_THROWS_AS(simdiag::recover_factors(fake, 1, 1, 1), PairingError);
}

TEST_CASE("recover_factors rejects weightless components") {
  JointDiagResult fake;
  fake.w = Matrix::identity(2);
  fake.diagonals = Matrix::from_rows(2, 2, {1, 0, 2, 0});
  fake.objective_trace = {0.0};
  CHECK_THROWS_AS(simdiag::recover_factors(fake, 1, 1, 1), RankError);
}

TEST_CASE("recover_factors validates shapes") {
  JointDiagResult fake;
  fake.w = Matrix::identity(3);
  fake.diagonals = Matrix(2, 3);
  CHECK_THROWS_AS(simdiag::recover_factors(fake, 1, 1, 2), ShapeError);
  CHECK_THROWS_AS(simdiag::recover_factors(fake, 2, 1, 2), ShapeError);
}

TEST_CASE("asym_solve option validation") {
  Problem p = simdiag::random_asymmetric_problem(3, 4, 2, 3, 0.0, 1.0, 605);
  SolverOptions opts;
  opts.rank = 4;  // > min(d1, d2)
  CHECK_THROWS_AS(simdiag::asym_solve(p.set, opts), OptionError);

  MatrixSet one(std::vector<Matrix>{p.set[0]}, false);
  SolverOptions defaults;
  CHECK_THROWS_AS(simdiag::asym_solve(one, defaults), OptionError);
}

TEST_CASE("gram reduction basics") {
  Rng rng(606);
  Matrix q = simdiag::random_orthogonal(3, rng);
  Matrix ortho = q.col_subset(0, 2);  // 3x2 with orthonormal columns
  MatrixSet set(std::vector<Matrix>{ortho, Matrix(3, 2)}, false);
  MatrixSet gram = simdiag::gram_reduce(set);
  CHECK(gram.dim() == 2);
  CHECK(gram.symmetric());
  CHECK((gram[0] - Matrix::identity(2)).max_abs() < 1e-12);
  CHECK(gram[1].max_abs() == 0.0);
}

TEST_CASE("gram reduction matches the explicit product for orthonormal U") {
  Problem p = simdiag::random_asymmetric_problem(6, 4, 3, 4, 0.0, 1.0, 607);
  const auto& t = *p.truth;
  MatrixSet gram = simdiag::gram_reduce(p.set);
  for (std::size_t l = 0; l < 4; ++l) {
    Matrix want(4, 4);
    for (std::size_t pq = 0; pq < 4; ++pq)
      for (std::size_t q = 0; q < 4; ++q) {
        double s = 0.0;
        for (std::size_t j = 0; j < 3; ++j)
          s += t.lambdas(l, j) * t.lambdas(l, j) * (*t.v)(pq, j) * (*t.v)(q, j);
        want(pq, q) = s;
      }
    CHECK((gram[l] - want).max_abs() < 1e-12);
  }

  // and the rotation solver on the reduced set recovers V
  SolverOptions opts;
  opts.rank = 3;
  auto solved = simdiag::solve(gram, opts);
  auto report =
      simdiag::align_factors(solved.u_est, *t.v, simdiag::AlignMode::sign);
  CHECK(report.max_error < 1e-6);
}

TEST_CASE("gram reduction is wrong for non-orthogonal left factors") {
  // U columns at 60 degrees, V = I: the reduced set V Lam (U^T U) Lam V^T
  // stays jointly diagonalizable, but in the wrong basis.  The embedding
  // pipeline on the same input recovers the planted factors.
  double s3 = std::sqrt(3.0) / 2.0;
  Matrix m1 = Matrix::from_rows(2, 2, {1.0, 0.5, 0.0, s3});
  Matrix m2 = Matrix::from_rows(2, 2, {1.0, -0.5, 0.0, -s3});
  MatrixSet set(std::vector<Matrix>{m1, m2}, false);
  Matrix truth_v = Matrix::identity(2);

  MatrixSet gram = simdiag::gram_reduce(set);
  SolverOptions opts;
  auto solved = simdiag::solve(gram, opts);
  auto report =
      simdiag::align_factors(solved.u_est, truth_v, simdiag::AlignMode::sign);
  CHECK(report.max_error > 0.1);

  SolverOptions shear;
  shear.method = Method::qrj1d;
  AsymResult r = simdiag::asym_solve(set, shear);
  CHECK(max_reconstruction_error(r, set) < 1e-8);
  auto vr = simdiag::align_factors(r.v_est, truth_v, simdiag::AlignMode::scale);
  CHECK(vr.max_error < 1e-6);
}

}  // TEST_SUITE
