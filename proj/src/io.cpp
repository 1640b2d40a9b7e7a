#include "simdiag/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "simdiag/errors.hpp"

namespace simdiag {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json matrix_flat(const Matrix& m) {
  ordered_json arr = ordered_json::array();
  for (double x : m.flat()) arr.push_back(x);
  return arr;
}

ordered_json matrix_rows(const Matrix& m) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    arr.push_back(std::move(row));
  }
  return arr;
}

Matrix matrix_from_flat(const nlohmann::json& arr, std::size_t rows,
                        std::size_t cols, const char* what) {
  if (!arr.is_array() || arr.size() != rows * cols)
    throw OptionError(std::string("problem file: ") + what +
                      " has the wrong number of entries");
  Matrix m(rows, cols);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = arr[idx++].get<double>();
  return m;
}

Matrix matrix_from_rows(const nlohmann::json& arr, const char* what) {
  if (!arr.is_array() || arr.empty() || !arr[0].is_array())
    throw OptionError(std::string("problem file: ") + what +
                      " must be an array of rows");
  std::size_t rows = arr.size(), cols = arr[0].size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!arr[i].is_array() || arr[i].size() != cols)
      throw OptionError(std::string("problem file: ") + what +
                        " rows have inconsistent lengths");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = arr[i][j].get<double>();
  }
  return m;
}

}  // namespace

nlohmann::ordered_json problem_to_json(const Problem& problem) {
  const MatrixSet& set = problem.set;
  ordered_json doc;
  doc["schema"] = "simdiag/1";
  doc["rows"] = set.rows();
  doc["cols"] = set.cols();
  doc["count"] = set.count();
  doc["symmetric"] = set.symmetric();
  ordered_json mats = ordered_json::array();
  for (std::size_t l = 0; l < set.count(); ++l)
    mats.push_back(matrix_flat(set[l]));
  doc["matrices"] = std::move(mats);
  if (problem.truth) {
    const GroundTruth& t = *problem.truth;
    ordered_json truth;
    truth["U"] = matrix_rows(t.u);
    if (t.v) truth["V"] = matrix_rows(*t.v);
    truth["lambdas"] = matrix_rows(t.lambdas);
    truth["eps"] = t.eps;
    if (t.noises) {
      ordered_json noises = ordered_json::array();
      for (const Matrix& r : *t.noises) noises.push_back(matrix_flat(r));
      truth["noises"] = std::move(noises);
    }
    doc["truth"] = std::move(truth);
  }
  return doc;
}

Problem problem_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("schema") ||
      doc["schema"] != "simdiag/1")
    throw OptionError("problem file: missing or unsupported schema tag "
                      "(expected \"simdiag/1\")");
  for (const char* key : {"rows", "cols", "count", "symmetric", "matrices"})
    if (!doc.contains(key))
      throw OptionError(std::string("problem file: missing field \"") + key +
                        "\"");
  std::size_t rows = doc["rows"].get<std::size_t>();
  std::size_t cols = doc["cols"].get<std::size_t>();
  std::size_t count = doc["count"].get<std::size_t>();
  bool symmetric = doc["symmetric"].get<bool>();
  const nlohmann::json& mats = doc["matrices"];
  if (!mats.is_array() || mats.size() != count)
    throw OptionError("problem file: matrices length does not match count");
  std::vector<Matrix> matrices;
  matrices.reserve(count);
  for (std::size_t l = 0; l < count; ++l)
    matrices.push_back(matrix_from_flat(mats[l], rows, cols, "matrix"));

  Problem problem;
  problem.set = MatrixSet(std::move(matrices), symmetric);
  if (doc.contains("truth")) {
    const nlohmann::json& t = doc["truth"];
    for (const char* key : {"U", "lambdas", "eps"})
      if (!t.contains(key))
        throw OptionError(std::string("problem file: truth missing \"") + key +
                          "\"");
    GroundTruth truth;
    truth.u = matrix_from_rows(t["U"], "truth.U");
    if (t.contains("V")) truth.v = matrix_from_rows(t["V"], "truth.V");
    truth.lambdas = matrix_from_rows(t["lambdas"], "truth.lambdas");
    truth.eps = t["eps"].get<double>();
    if (t.contains("noises")) {
      std::vector<Matrix> noises;
      const nlohmann::json& arr = t["noises"];
      if (!arr.is_array() || arr.size() != count)
        throw OptionError("problem file: noises length does not match count");
      noises.reserve(count);
      for (std::size_t l = 0; l < count; ++l)
        noises.push_back(matrix_from_flat(arr[l], rows, cols, "noise"));
      truth.noises = std::move(noises);
    }
    problem.truth = std::move(truth);
  }
  return problem;
}

void write_problem(const std::string& path, const Problem& problem) {
  write_text_file(path, problem_to_json(problem).dump(2) + "\n");
}

Problem read_problem(const std::string& path) {
  // Parse errors surface as json exceptions (malformed input, not I/O).
  return problem_from_json(nlohmann::json::parse(read_text_file(path)));
}

nlohmann::ordered_json result_to_json(const JointDiagResult& result) {
  ordered_json doc;
  doc["W"] = matrix_rows(result.w);
  doc["U_est"] = matrix_rows(result.u_est);
  doc["diagonals"] = matrix_rows(result.diagonals);
  doc["objective_trace"] = result.objective_trace;
  doc["converged"] = result.converged;
  doc["sweeps"] = result.sweeps;
  return doc;
}

nlohmann::ordered_json result_to_json(const AsymResult& result) {
  ordered_json doc;
  doc["W"] = matrix_rows(result.embedded.w);
  doc["U_est"] = matrix_rows(result.u_est);
  doc["V_est"] = matrix_rows(result.v_est);
  doc["diagonals"] = matrix_rows(result.lambdas);
  doc["objective_trace"] = result.embedded.objective_trace;
  doc["converged"] = result.embedded.converged;
  doc["sweeps"] = result.embedded.sweeps;
  return doc;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

std::string trials_to_csv(const std::vector<TrialRecord>& records) {
  std::string out =
      "trial,eps,final_objective,final_off_norm,sweeps,converged,seed\n";
  for (const TrialRecord& r : records) {
    out += std::to_string(r.trial);
    out += ',';
    out += format_double(r.eps);
    out += ',';
    out += format_double(r.final_objective);
    out += ',';
    out += format_double(r.final_off_norm);
    out += ',';
    out += std::to_string(r.sweeps);
    out += ',';
    out += r.converged ? "true" : "false";
    out += ',';
    out += std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

std::string bound_rows_to_csv(const std::vector<BoundCheckRow>& rows) {
  std::string out = "instance,eps,component,error,bound,ratio,kind\n";
  for (const BoundCheckRow& r : rows) {
    out += std::to_string(r.instance);
    out += ',';
    out += format_double(r.eps);
    out += ',';
    out += std::to_string(r.component);
    out += ',';
    out += format_double(r.error);
    out += ',';
    out += format_double(r.bound);
    out += ',';
    out += r.exact ? "exact" : format_double(r.ratio);
    out += ',';
    out += to_string(r.kind);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw IoError("write failed on " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("read failed on " + path);
  return ss.str();
}

}  // namespace simdiag
