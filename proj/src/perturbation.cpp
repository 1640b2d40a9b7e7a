#include "simdiag/perturbation.hpp"

#include <cmath>
#include <string>

#include "simdiag/errors.hpp"
#include "simdiag/linalg.hpp"
#include "simdiag/metrics.hpp"

namespace simdiag {

namespace {

// Planted factor completed to a d x d basis: the original k columns, then an
// orthonormal basis of their orthogonal complement.
Matrix completed_basis(const Matrix& u) {
  std::size_t d = u.rows(), k = u.cols();
  Matrix full(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < k; ++j) full(i, j) = u(i, j);
  if (k < d) {
    Matrix rest = complete_orthonormal_basis(u);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = k; j < d; ++j) full(i, j) = rest(i, j - k);
  }
  return full;
}

void require_noises(const GroundTruth& truth, const char* who) {
  if (!truth.noises || truth.noises->empty())
    throw OptionError(std::string(who) + ": truth carries no noise directions");
  if (truth.noises->size() != truth.lambdas.rows())
    throw ShapeError(std::string(who) +
                     ": noise count does not match weight rows");
}

// Weight vector of extended component i: column i of lambdas for i < k,
// all zero for i >= k.
double lambda_entry(const Matrix& lambdas, std::size_t l, std::size_t i) {
  return i < lambdas.cols() ? lambdas(l, i) : 0.0;
}

std::vector<double> column_norms_extended(const Matrix& lambdas,
                                          std::size_t d) {
  std::vector<double> norms(d, 0.0);
  for (std::size_t i = 0; i < lambdas.cols(); ++i) {
    double s = 0.0;
    for (std::size_t l = 0; l < lambdas.rows(); ++l)
      s += lambdas(l, i) * lambdas(l, i);
    norms[i] = std::sqrt(s);
  }
  return norms;
}

std::vector<double> bounds_from(const Matrix& e, double eps) {
  std::vector<double> bounds(e.cols(), 0.0);
  for (std::size_t j = 0; j < e.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < e.rows(); ++i) s += e(i, j) * e(i, j);
    bounds[j] = eps * std::sqrt(s);
  }
  return bounds;
}

// T_ij = sum_l v_i^T R_l v_j lam_jl over the extended index range, where v_i
// is row i of the inverse of the completed basis.
Matrix afsari_T(const GroundTruth& truth, const Matrix& vbar) {
  std::size_t d = truth.u.rows();
  const std::vector<Matrix>& noises = *truth.noises;
  std::size_t L = noises.size();
  Matrix t(d, d);
  for (std::size_t l = 0; l < L; ++l) {
    // row-transformed noise: (V R V^T)_ij = v_i^T R v_j.
    Matrix vr = vbar * noises[l] * vbar.transposed();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        t(i, j) += vr(i, j) * lambda_entry(truth.lambdas, l, j);
  }
  return t;
}

}  // namespace

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::cardoso: return "cardoso";
    case BoundKind::afsari_exact: return "afsari_exact";
    default: return "afsari_bound";
  }
}

Matrix modulus_of_uniqueness(const Matrix& lambdas) {
  std::size_t L = lambdas.rows(), k = lambdas.cols();
  std::vector<double> norms(k);
  for (std::size_t j = 0; j < k; ++j) {
    double s = 0.0;
    for (std::size_t l = 0; l < L; ++l) s += lambdas(l, j) * lambdas(l, j);
    norms[j] = std::sqrt(s);
    if (norms[j] <= 0.0)
      throw NumericError("modulus_of_uniqueness: weight column " +
                         std::to_string(j) + " has zero norm");
  }
  Matrix rho(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    rho(i, i) = 1.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < L; ++l) s += lambdas(l, i) * lambdas(l, j);
      double r = s / (norms[i] * norms[j]);
      rho(i, j) = r;
      rho(j, i) = r;
    }
  }
  return rho;
}

PerturbationReport cardoso_E(const GroundTruth& truth) {
  require_noises(truth, "cardoso_E");
  std::size_t d = truth.u.rows(), k = truth.u.cols();
  const std::vector<Matrix>& noises = *truth.noises;
  std::size_t L = noises.size();
  Matrix ubar = completed_basis(truth.u);

  // s_l(i, j) = u_i^T R_l u_j on the completed basis.
  std::vector<Matrix> s;
  s.reserve(L);
  for (std::size_t l = 0; l < L; ++l)
    s.push_back(ubar.transposed() * noises[l] * ubar);

  Matrix e(d, k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      if (i == j) continue;
      double num = 0.0, den = 0.0;
      for (std::size_t l = 0; l < L; ++l) {
        double gap = lambda_entry(truth.lambdas, l, i) -
                     lambda_entry(truth.lambdas, l, j);
        num += gap * s[l](j, i);
        den += gap * gap;
      }
      if (den < 1e-300)
        throw UnidentifiableError(
            "cardoso_E: components " + std::to_string(i) + " and " +
            std::to_string(j) + " carry identical weight vectors");
      e(i, j) = num / den;
    }
  }

  PerturbationReport report;
  report.e = std::move(e);
  report.column_bounds = bounds_from(report.e, truth.eps);
  report.rho = modulus_of_uniqueness(truth.lambdas);
  report.kind = BoundKind::cardoso;
  return report;
}

PerturbationReport afsari_E(const GroundTruth& truth) {
  require_noises(truth, "afsari_E");
  std::size_t d = truth.u.rows(), k = truth.u.cols();
  Matrix rho_matrix = modulus_of_uniqueness(truth.lambdas);
  Matrix ubar = completed_basis(truth.u);
  Matrix vbar = inverse(ubar);
  Matrix t = afsari_T(truth, vbar);
  std::vector<double> norms = column_norms_extended(truth.lambdas, d);

  Matrix e(d, k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      if (i == j) continue;
      if (norms[i] == 0.0) {
        // Degenerate limit of the 2x2 system for an unweighted component.
        e(i, j) = -t(i, j) / (norms[j] * norms[j]);
        continue;
      }
      if (i < j && i < k) continue;  // handled as the (j, i) pair below
      // Solve the coupled pair (i, j): fills both E_ij and E_ji.
      double rho = rho_matrix(i, j);
      if (std::abs(rho) >= 1.0 - 1e-12)
        throw UnidentifiableError(
            "afsari_E: components " + std::to_string(i) + " and " +
            std::to_string(j) + " have |rho| too close to 1");
      double gamma = norms[i] * norms[j];
      double eta = norms[i] / norms[j];
      double f = -1.0 / (gamma * (1.0 - rho * rho));
      double e_ij = f * (eta * t(i, j) - rho * t(j, i));
      double e_ji = f * (-rho * t(i, j) + t(j, i) / eta);
      e(i, j) = e_ij;
      if (i < k) e(j, i) = e_ji;
    }
  }

  PerturbationReport report;
  report.e = std::move(e);
  report.column_bounds = bounds_from(report.e, truth.eps);
  report.rho = std::move(rho_matrix);
  report.t = std::move(t);
  report.kind = BoundKind::afsari_exact;
  return report;
}

PerturbationReport afsari_simple_bound(const GroundTruth& truth) {
  require_noises(truth, "afsari_simple_bound");
  std::size_t d = truth.u.rows(), k = truth.u.cols();
  Matrix rho_matrix = modulus_of_uniqueness(truth.lambdas);
  Matrix ubar = completed_basis(truth.u);
  Matrix vbar = inverse(ubar);
  Matrix t = afsari_T(truth, vbar);
  std::vector<double> norms = column_norms_extended(truth.lambdas, d);

  // Second numerator term re-weights the same bilinear forms by lam_i.
  Matrix t2(d, d);
  {
    const std::vector<Matrix>& noises = *truth.noises;
    for (std::size_t l = 0; l < noises.size(); ++l) {
      Matrix vr = vbar * noises[l] * vbar.transposed();
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          t2(i, j) += vr(i, j) * lambda_entry(truth.lambdas, l, i);
    }
  }

  Matrix e(d, k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      if (i == j) continue;
      if (norms[i] == 0.0) {
        e(i, j) = std::abs(t(i, j)) / (norms[j] * norms[j]);
        continue;
      }
      double rho = rho_matrix(i, j);
      if (std::abs(rho) >= 1.0 - 1e-12)
        throw UnidentifiableError(
            "afsari_simple_bound: components " + std::to_string(i) + " and " +
            std::to_string(j) + " have |rho| too close to 1");
      double inv_sq = 1.0 / (norms[i] * norms[i]) + 1.0 / (norms[j] * norms[j]);
      e(i, j) = (1.0 / (1.0 - rho * rho)) * inv_sq *
                (std::abs(t(i, j)) + std::abs(t2(i, j)));
    }
  }

  PerturbationReport report;
  report.e = std::move(e);
  report.column_bounds = bounds_from(report.e, truth.eps);
  report.rho = std::move(rho_matrix);
  report.t = std::move(t);
  report.kind = BoundKind::afsari_bound;
  return report;
}

std::vector<BoundCheckRow> empirical_bound_check(
    const GroundTruth& truth, const SolverOptions& opts,
    const std::vector<double>& eps_list) {
  require_noises(truth, "empirical_bound_check");
  std::size_t d = truth.u.rows(), k = truth.u.cols();
  const std::vector<Matrix>& noises = *truth.noises;
  std::size_t L = noises.size();

  std::vector<PerturbationReport> reports;
  AlignMode mode;
  if (opts.method == Method::jacobi) {
    reports.push_back(cardoso_E(truth));
    mode = AlignMode::sign;
  } else {
    reports.push_back(afsari_E(truth));
    reports.push_back(afsari_simple_bound(truth));
    mode = AlignMode::scale;
  }

  SolverOptions solve_opts = opts;
  solve_opts.rank = k;

  std::vector<BoundCheckRow> rows;
  for (double eps : eps_list) {
    // Assemble M_l = U Lam_l U^T + eps R_l at this noise level.
    std::vector<Matrix> mats;
    mats.reserve(L);
    for (std::size_t l = 0; l < L; ++l) {
      Matrix m(d, d);
      for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = p; q < d; ++q) {
          double s = 0.0;
          for (std::size_t j = 0; j < k; ++j)
            s += truth.lambdas(l, j) * truth.u(p, j) * truth.u(q, j);
          s += eps * noises[l](p, q);
          m(p, q) = s;
          m(q, p) = s;
        }
      mats.push_back(std::move(m));
    }
    MatrixSet set(std::move(mats), true);
    JointDiagResult solved = solve(set, solve_opts);
    AlignmentReport alignment = align_factors(solved.u_est, truth.u, mode);

    for (const PerturbationReport& report : reports) {
      for (std::size_t j = 0; j < k; ++j) {
        BoundCheckRow row;
        row.eps = eps;
        row.component = static_cast<int>(j);
        row.error = alignment.column_errors[j];
        double col = 0.0;
        for (std::size_t i = 0; i < d; ++i)
          col += report.e(i, j) * report.e(i, j);
        row.bound = eps * std::sqrt(col);
        row.exact = row.bound == 0.0;
        row.ratio = row.exact ? 0.0 : row.error / row.bound;
        row.kind = report.kind;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace simdiag
