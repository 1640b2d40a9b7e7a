#pragma once

#include <cstdint>

#include "simdiag/matrix_set.hpp"

namespace simdiag {

// Planted symmetric problem M_l = U Lam_l U^T + eps R_l with Haar-orthogonal
// U (first k columns), weight magnitudes uniform in [0.5, 1.5] with random
// signs, and exactly-symmetric unit-Frobenius noise.  Deterministic per seed.
Problem random_orthogonal_problem(std::size_t d, std::size_t k, std::size_t L,
                                  double eps, std::uint64_t seed);

// As above with a non-orthogonal factor: Q1 diag(log-spaced singular values
// spanning ratio cond) Q2^T restricted to k columns, columns normalized.
Problem random_nonorthogonal_problem(std::size_t d, std::size_t k,
                                     std::size_t L, double eps, double cond,
                                     std::uint64_t seed);

// Planted rectangular problem M_l = U Lam_l V^T + eps R_l with independent
// factors U (d1 x k) and V (d2 x k) and general unit-Frobenius noise.
Problem random_asymmetric_problem(std::size_t d1, std::size_t d2,
                                  std::size_t k, std::size_t L, double eps,
                                  double cond, std::uint64_t seed);

}  // namespace simdiag
