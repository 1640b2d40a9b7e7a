#pragma once

#include <cstddef>
#include <vector>

#include "simdiag/matrix.hpp"

namespace simdiag {

enum class AlignMode { sign, scale };

struct AlignmentReport {
  std::vector<std::size_t> permutation;   // truth column j -> estimate column
  std::vector<double> signs_or_scales;    // factor applied to the estimate
  std::vector<double> column_errors;      // |adjusted est - truth_j|_2
  double max_error = 0.0;
  double mean_error = 0.0;
};

// Matches estimated columns to unit-norm truth columns by greedy
// largest-|cosine| assignment, then removes the sign (mode sign) or the
// least-squares scale (mode scale) before measuring column errors.
AlignmentReport align_factors(const Matrix& estimated, const Matrix& truth,
                              AlignMode mode);

}  // namespace simdiag
