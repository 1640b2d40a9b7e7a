#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "simdiag/asymmetric.hpp"
#include "simdiag/experiments.hpp"
#include "simdiag/matrix_set.hpp"
#include "simdiag/perturbation.hpp"
#include "simdiag/solver.hpp"

namespace simdiag {

// Problem files are JSON documents with schema tag "simdiag/1":
//   {"schema": "simdiag/1", "rows": R, "cols": C, "count": L,
//    "symmetric": bool, "matrices": [[flat row-major doubles] x L],
//    "truth": optional {"U": [[row] x rows], "V": optional, "lambdas":
//    [[row] x L], "eps": number, "noises": optional [[flat row-major] x L]}}
// Numbers round-trip exactly (shortest decimal that parses back to the same
// double), so write -> read -> write is byte-identical.

nlohmann::ordered_json problem_to_json(const Problem& problem);

// Shape or schema violations raise OptionError (bad input, not bad I/O).
Problem problem_from_json(const nlohmann::json& doc);

void write_problem(const std::string& path, const Problem& problem);
Problem read_problem(const std::string& path);

// {"W", "U_est", "V_est"?, "diagonals", "objective_trace", "converged",
// "sweeps"} — V_est only in the asymmetric form.
nlohmann::ordered_json result_to_json(const JointDiagResult& result);
nlohmann::ordered_json result_to_json(const AsymResult& result);

// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);

// Header: trial,eps,final_objective,final_off_norm,sweeps,converged,seed
std::string trials_to_csv(const std::vector<TrialRecord>& records);

// Header: instance,eps,component,error,bound,ratio,kind — rows whose bound is
// identically zero carry the literal "exact" in the ratio column.
std::string bound_rows_to_csv(const std::vector<BoundCheckRow>& rows);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace simdiag
