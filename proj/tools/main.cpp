#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "simdiag/asymmetric.hpp"
#include "simdiag/errors.hpp"
#include "simdiag/experiments.hpp"
#include "simdiag/io.hpp"
#include "simdiag/solver.hpp"
#include "simdiag/synthesis.hpp"

namespace {

using namespace simdiag;

struct GenerateArgs {
  std::size_t d = 0, d1 = 0, d2 = 0, k = 0, L = 5;
  double eps = 0.0, cond = 3.0;
  std::uint64_t seed = 0;
  std::string kind = "orthogonal";
  std::string out;
  bool with_truth = false;
};

int cmd_generate(const GenerateArgs& a) {
  Problem problem;
  if (a.kind == "asymmetric") {
    if (a.d1 == 0 || a.d2 == 0)
      throw OptionError("generate: --kind asymmetric needs --d1 and --d2");
    std::size_t k = a.k == 0 ? std::min(a.d1, a.d2) : a.k;
    std::fprintf(stderr,
                 "generate: kind=asymmetric d1=%zu d2=%zu k=%zu L=%zu eps=%s "
                 "cond=%s seed=%llu with-truth=%d out=%s\n",
                 a.d1, a.d2, k, a.L, format_double(a.eps).c_str(),
                 format_double(a.cond).c_str(),
                 static_cast<unsigned long long>(a.seed), a.with_truth ? 1 : 0,
                 a.out.c_str());
    problem = random_asymmetric_problem(a.d1, a.d2, k, a.L, a.eps, a.cond,
                                        a.seed);
  } else {
    if (a.d == 0) throw OptionError("generate: --d is required");
    std::size_t k = a.k == 0 ? a.d : a.k;
    std::fprintf(stderr,
                 "generate: kind=%s d=%zu k=%zu L=%zu eps=%s cond=%s "
                 "seed=%llu with-truth=%d out=%s\n",
                 a.kind.c_str(), a.d, k, a.L, format_double(a.eps).c_str(),
                 format_double(a.cond).c_str(),
                 static_cast<unsigned long long>(a.seed), a.with_truth ? 1 : 0,
                 a.out.c_str());
    if (a.kind == "orthogonal")
      problem = random_orthogonal_problem(a.d, k, a.L, a.eps, a.seed);
    else if (a.kind == "nonorthogonal")
      problem = random_nonorthogonal_problem(a.d, k, a.L, a.eps, a.cond,
                                             a.seed);
    else
      throw OptionError("generate: unknown --kind " + a.kind);
  }
  if (!a.with_truth) problem.truth.reset();
  write_problem(a.out, problem);
  return 0;
}

struct DiagArgs {
  std::string in, out;
  std::string method = "jacobi";
  std::size_t rank = 0;
  double tol = 1e-12;
  int max_sweeps = 200;
  std::string init = "identity";
  std::string shear = "upper_then_lower";
  std::uint64_t seed = 0;
  bool asymmetric = false;
  bool sort_flag = false;
  bool sort_given = false;
};

int cmd_diagonalize(const DiagArgs& a) {
  Problem problem = read_problem(a.in);
  SolverOptions opts;
  opts.method = method_from_string(a.method);
  opts.rank = a.rank;
  opts.tol = a.tol;
  opts.max_sweeps = a.max_sweeps;
  opts.init = init_from_string(a.init);
  opts.seed = a.seed;
  opts.shear_directions = shear_directions_from_string(a.shear);
  if (a.sort_given) opts.sort = a.sort_flag;

  std::size_t d = a.asymmetric
                      ? std::min(problem.set.rows(), problem.set.cols())
                      : problem.set.dim();
  std::size_t rank = opts.rank == 0 ? d : opts.rank;
  bool sort = a.sort_given ? a.sort_flag : rank < d;
  std::fprintf(stderr,
               "diagonalize: in=%s method=%s rank=%zu tol=%s max-sweeps=%d "
               "init=%s sort=%d shear-directions=%s seed=%llu asymmetric=%d\n",
               a.in.c_str(), a.method.c_str(), rank,
               format_double(a.tol).c_str(), a.max_sweeps, a.init.c_str(),
               sort ? 1 : 0, a.shear.c_str(),
               static_cast<unsigned long long>(a.seed), a.asymmetric ? 1 : 0);

  nlohmann::ordered_json payload;
  if (a.asymmetric) {
    AsymResult result = asym_solve(problem.set, opts);
    payload = result_to_json(result);
  } else {
    JointDiagResult result = solve(problem.set, opts);
    payload = result_to_json(result);
  }
  std::string text = payload.dump(2) + "\n";
  if (a.out.empty())
    std::fwrite(text.data(), 1, text.size(), stdout);
  else
    write_text_file(a.out, text);
  return 0;
}

struct HistArgs {
  std::size_t trials = 200, d = 15, k = 15, L = 15;
  std::vector<double> eps_list{0.0, 1e-4, 1e-3};
  std::uint64_t seed = 0;
  std::string init = "identity";
  std::string out;
};

int cmd_bench_histogram(const HistArgs& a) {
  std::string eps_text;
  for (double e : a.eps_list) {
    if (!eps_text.empty()) eps_text += ',';
    eps_text += format_double(e);
  }
  std::fprintf(stderr,
               "bench-histogram: trials=%zu d=%zu k=%zu L=%zu eps-list=%s "
               "init=%s seed=%llu out=%s\n",
               a.trials, a.d, a.k, a.L, eps_text.c_str(), a.init.c_str(),
               static_cast<unsigned long long>(a.seed),
               a.out.empty() ? "-" : a.out.c_str());
  SolverOptions opts;
  opts.method = Method::jacobi;
  opts.rank = a.k;
  opts.init = init_from_string(a.init);
  opts.seed = a.seed;
  std::vector<TrialRecord> records =
      histogram_experiment(a.trials, a.d, a.k, a.L, a.eps_list, opts);
  std::string csv = trials_to_csv(records);
  if (a.out.empty())
    std::fwrite(csv.data(), 1, csv.size(), stdout);
  else
    write_text_file(a.out, csv);
  return 0;
}

struct BoundArgs {
  std::size_t instances = 20, d = 8, k = 4, L = 6;
  double cond = 3.0;
  std::vector<double> eps_list{0.0, 1e-6};
  std::uint64_t seed = 0;
  std::string kind = "orthogonal";
  std::string out;
};

int cmd_check_bounds(const BoundArgs& a) {
  std::string eps_text;
  for (double e : a.eps_list) {
    if (!eps_text.empty()) eps_text += ',';
    eps_text += format_double(e);
  }
  std::fprintf(stderr,
               "check-bounds: instances=%zu d=%zu k=%zu L=%zu kind=%s cond=%s "
               "eps-list=%s seed=%llu out=%s\n",
               a.instances, a.d, a.k, a.L, a.kind.c_str(),
               format_double(a.cond).c_str(), eps_text.c_str(),
               static_cast<unsigned long long>(a.seed),
               a.out.empty() ? "-" : a.out.c_str());
  SolverOptions opts;
  if (a.kind == "orthogonal")
    opts.method = Method::jacobi;
  else if (a.kind == "nonorthogonal")
    opts.method = Method::qrj1d;
  else
    throw OptionError("check-bounds: unknown --kind " + a.kind);
  opts.rank = a.k;
  opts.seed = a.seed;
  BoundValidation result = bound_validation_experiment(
      a.instances, a.d, a.k, a.L, a.cond, a.eps_list, opts);
  std::string csv = bound_rows_to_csv(result.rows);
  if (a.out.empty())
    std::fwrite(csv.data(), 1, csv.size(), stdout);
  else
    write_text_file(a.out, csv);

  // Worst error/bound ratio per eps, skipping the exact (zero-bound) rows.
  std::string summary = "check-bounds: rows=" + std::to_string(result.rows.size()) +
                        " skipped=" + std::to_string(result.skipped);
  for (double e : a.eps_list) {
    double worst = 0.0;
    for (const BoundCheckRow& row : result.rows)
      if (!row.exact && row.eps == e && row.ratio > worst) worst = row.ratio;
    summary += " max-ratio[" + format_double(e) + "]=" + format_double(worst);
  }
  std::fprintf(stderr, "%s\n", summary.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simultaneous matrix diagonalization toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* cg = app.add_subcommand("generate", "write a planted problem file");
  cg->add_option("--d", gen.d, "dimension (square kinds)");
  cg->add_option("--d1", gen.d1, "left dimension (asymmetric)");
  cg->add_option("--d2", gen.d2, "right dimension (asymmetric)");
  cg->add_option("--k", gen.k, "rank (0 = full)");
  cg->add_option("--L", gen.L, "number of matrices");
  cg->add_option("--eps", gen.eps, "noise level");
  cg->add_option("--cond", gen.cond, "factor condition number");
  cg->add_option("--seed", gen.seed, "master seed");
  cg->add_option("--kind", gen.kind,
                 "orthogonal | nonorthogonal | asymmetric");
  cg->add_option("--out", gen.out, "output path")->required();
  cg->add_flag("--with-truth", gen.with_truth, "embed the planted factors");

  DiagArgs diag;
  CLI::App* cd = app.add_subcommand("diagonalize", "jointly diagonalize a problem file");
  cd->add_option("--in", diag.in, "problem file")->required();
  cd->add_option("--out", diag.out, "result path (default stdout)");
  cd->add_option("--method", diag.method, "jacobi | qrj1d");
  cd->add_option("--rank", diag.rank, "components to resolve (0 = full)");
  cd->add_option("--tol", diag.tol, "convergence tolerance");
  cd->add_option("--max-sweeps", diag.max_sweeps, "sweep cap");
  cd->add_option("--init", diag.init,
                 "identity | single_matrix | random_projection");
  cd->add_option("--shear-directions", diag.shear,
                 "upper_then_lower | upper_only");
  cd->add_option("--seed", diag.seed, "seed for random_projection init");
  cd->add_flag("--asymmetric", diag.asymmetric,
               "treat input as rectangular and factor via block embedding");
  CLI::Option* sort_opt =
      cd->add_flag("--sort,!--no-sort", diag.sort_flag,
                   "keep heavy components in the leading block");

  HistArgs hist;
  CLI::App* ch = app.add_subcommand("bench-histogram",
                                    "objective histogram over fresh problems");
  ch->add_option("--trials", hist.trials, "trials per eps");
  ch->add_option("--d", hist.d, "dimension");
  ch->add_option("--k", hist.k, "rank");
  ch->add_option("--L", hist.L, "number of matrices");
  ch->add_option("--eps-list", hist.eps_list, "noise levels")
      ->delimiter(',');
  ch->add_option("--seed", hist.seed, "master seed");
  ch->add_option("--init", hist.init, "initialization strategy");
  ch->add_option("--out", hist.out, "CSV path (default stdout)");

  BoundArgs bounds;
  CLI::App* cb = app.add_subcommand("check-bounds",
                                    "first-order perturbation bound check");
  cb->add_option("--instances", bounds.instances, "planted instances");
  cb->add_option("--d", bounds.d, "dimension");
  cb->add_option("--k", bounds.k, "rank");
  cb->add_option("--L", bounds.L, "number of matrices");
  cb->add_option("--cond", bounds.cond, "factor condition (nonorthogonal)");
  cb->add_option("--kind", bounds.kind, "orthogonal | nonorthogonal");
  cb->add_option("--eps-list", bounds.eps_list, "noise levels")
      ->delimiter(',');
  cb->add_option("--seed", bounds.seed, "master seed");
  cb->add_option("--out", bounds.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  diag.sort_given = sort_opt->count() > 0;

  try {
    if (cg->parsed()) return cmd_generate(gen);
    if (cd->parsed()) return cmd_diagonalize(diag);
    if (ch->parsed()) return cmd_bench_histogram(hist);
    if (cb->parsed()) return cmd_check_bounds(bounds);
    std::fprintf(stderr, "no subcommand\n");
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const OptionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ShapeError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error: malformed input: %s\n", e.what());
    return 2;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}
