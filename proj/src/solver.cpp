#include "simdiag/solver.hpp"

#include "simdiag/errors.hpp"
#include "simdiag/jacobi.hpp"
#include "simdiag/qrj1d.hpp"

namespace simdiag {

std::string to_string(Method m) {
  return m == Method::jacobi ? "jacobi" : "qrj1d";
}

std::string to_string(Init i) {
  switch (i) {
    case Init::identity: return "identity";
    case Init::single_matrix: return "single_matrix";
    default: return "random_projection";
  }
}

std::string to_string(ShearDirections s) {
  return s == ShearDirections::upper_then_lower ? "upper_then_lower"
                                                : "upper_only";
}

Method method_from_string(const std::string& s) {
  if (s == "jacobi") return Method::jacobi;
  if (s == "qrj1d") return Method::qrj1d;
  throw OptionError("unknown method: " + s);
}

Init init_from_string(const std::string& s) {
  if (s == "identity") return Init::identity;
  if (s == "single_matrix") return Init::single_matrix;
  if (s == "random_projection") return Init::random_projection;
  throw OptionError("unknown init strategy: " + s);
}

ShearDirections shear_directions_from_string(const std::string& s) {
  if (s == "upper_then_lower") return ShearDirections::upper_then_lower;
  if (s == "upper_only") return ShearDirections::upper_only;
  throw OptionError("unknown shear directions: " + s);
}

std::size_t SolverOptions::resolve_rank(std::size_t d) const {
  return rank == 0 ? d : rank;
}

bool SolverOptions::resolve_sort(std::size_t d) const {
  return sort.value_or(resolve_rank(d) < d);
}

void SolverOptions::validate(std::size_t d) const {
  if (resolve_rank(d) > d) throw OptionError("rank exceeds matrix dimension");
  if (tol <= 0.0) throw OptionError("tol must be positive");
  if (max_sweeps < 1) throw OptionError("max_sweeps must be at least 1");
}

JointDiagResult solve(const MatrixSet& set, const SolverOptions& opts) {
  return opts.method == Method::jacobi ? jacobi_solve(set, opts)
                                       : qrj1d_solve(set, opts);
}

}  // namespace simdiag
