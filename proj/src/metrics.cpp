#include "simdiag/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "simdiag/errors.hpp"

namespace simdiag {

namespace {

struct Candidate {
  double abs_cos;
  std::size_t est;
  std::size_t truth;
};

}  // namespace

AlignmentReport align_factors(const Matrix& estimated, const Matrix& truth,
                              AlignMode mode) {
  if (estimated.rows() != truth.rows() || estimated.cols() != truth.cols())
    throw ShapeError("align_factors: shape mismatch");
  std::size_t d = truth.rows(), k = truth.cols();

  std::vector<double> est_norm(k), dot(k * k);
  for (std::size_t e = 0; e < k; ++e) {
    double n = 0.0;
    for (std::size_t i = 0; i < d; ++i) n += estimated(i, e) * estimated(i, e);
    est_norm[e] = std::sqrt(n);
  }
  std::vector<Candidate> candidates;
  candidates.reserve(k * k);
  for (std::size_t e = 0; e < k; ++e) {
    for (std::size_t t = 0; t < k; ++t) {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s += estimated(i, e) * truth(i, t);
      dot[e * k + t] = s;
      double cosine = est_norm[e] > 0 ? std::abs(s) / est_norm[e] : 0.0;
      candidates.push_back({cosine, e, t});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.abs_cos != b.abs_cos) return a.abs_cos > b.abs_cos;
              if (a.est != b.est) return a.est < b.est;
              return a.truth < b.truth;
            });

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> perm(k, kUnset);
  std::vector<bool> est_used(k, false);
  std::size_t matched = 0;
  for (const Candidate& c : candidates) {
    if (matched == k) break;
    if (est_used[c.est] || perm[c.truth] != kUnset) continue;
    if (c.abs_cos <= 0.0)
      throw AlignmentError(
          "align_factors: estimate is rank deficient, no usable match for a "
          "truth column");
    perm[c.truth] = c.est;
    est_used[c.est] = true;
    ++matched;
  }
  if (matched < k)
    throw AlignmentError("align_factors: could not match every column");

  AlignmentReport report;
  report.permutation = perm;
  report.signs_or_scales.resize(k);
  report.column_errors.resize(k);
  double total = 0.0;
  for (std::size_t t = 0; t < k; ++t) {
    std::size_t e = perm[t];
    double s = dot[e * k + t];
    double factor;
    if (mode == AlignMode::sign) {
      factor = s < 0 ? -1.0 : 1.0;
    } else {
      factor = est_norm[e] > 0 ? s / (est_norm[e] * est_norm[e]) : 0.0;
    }
    report.signs_or_scales[t] = factor;
    double err = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      double diff = factor * estimated(i, e) - truth(i, t);
      err += diff * diff;
    }
    report.column_errors[t] = std::sqrt(err);
    report.max_error = std::max(report.max_error, report.column_errors[t]);
    total += report.column_errors[t];
  }
  report.mean_error = k ? total / static_cast<double>(k) : 0.0;
  return report;
}

}  // namespace simdiag
