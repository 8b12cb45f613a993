#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "multeig/pipeline.hpp"
#include "multeig/problem_io.hpp"
#include "multeig/svcurve.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitConsistency = 4;

struct RunFlags {
  std::string file;
  std::vector<double> mu;
  std::vector<double> weights;
  double tol_mult = -1, tol_eig = -1, tol_weak = -1, gamma_max_factor = -1;
  int grid_points = -1;
  bool parallel = false;
  double lower_bound = 0;
  bool has_lower_bound = false;
  std::string out;
};

void apply_overrides(multeig::ProblemSpec& spec, const RunFlags& flags) {
  if (!flags.mu.empty()) spec.mu = {flags.mu[0], flags.mu[1]};
  if (!flags.weights.empty()) spec.weights = multeig::WeightSet(flags.weights);
  if (flags.tol_mult > 0) spec.options.tol_mult = flags.tol_mult;
  if (flags.tol_eig > 0) spec.options.tol_eig = flags.tol_eig;
  if (flags.tol_weak > 0) spec.options.tol_weak = flags.tol_weak;
  if (flags.gamma_max_factor > 0) spec.options.gamma_max_factor = flags.gamma_max_factor;
  if (flags.grid_points > 0) spec.options.grid_points = flags.grid_points;
  if (flags.parallel) spec.options.parallel = true;
  if (flags.has_lower_bound) spec.options.user_lower_bound = flags.lower_bound;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw multeig::ParseError(path + ": cannot open file for writing");
  out << text;
}

int cmd_run(const RunFlags& flags) {
  multeig::ProblemSpec spec = multeig::parse_problem(flags.file);
  apply_overrides(spec, flags);
  const multeig::RunResult result = multeig::run_pipeline(spec);
  write_text(flags.out, multeig::report_json(spec, result).dump(2) + "\n");
  return kExitOk;
}

int cmd_curve(const RunFlags& flags, double lo, double hi, int steps) {
  multeig::ProblemSpec spec = multeig::parse_problem(flags.file);
  apply_overrides(spec, flags);
  if (steps < 2) throw multeig::PreconditionError("--steps must be at least 2");
  if (lo < 0 || hi < lo)
    throw multeig::PreconditionError("--range must satisfy 0 <= A <= B");

  const std::vector<multeig::CurvePoint> points = multeig::curve_samples(
      spec.polynomial, spec.mu, multeig::linspace(lo, hi, steps), spec.options.parallel);
  std::string csv = "gamma,s_2n_minus_1,s_2n_minus_2\n";
  char line[128];
  for (const auto& pt : points) {
    std::snprintf(line, sizeof(line), "%.16e,%.16e,%.16e\n", pt.gamma, pt.s_2n_minus_1,
                  pt.s_2n_minus_2);
    csv += line;
  }
  write_text(flags.out, csv);
  return kExitOk;
}

int cmd_check_normal(const RunFlags& flags) {
  multeig::ProblemSpec spec = multeig::parse_problem(flags.file);
  apply_overrides(spec, flags);
  const multeig::WeakNormalityWitness witness =
      multeig::is_weakly_normal(spec.polynomial, spec.options.tol_weak);
  nlohmann::json out = {{"is_weakly_normal", witness.is_weakly_normal},
                        {"residual", witness.residual},
                        {"tol_weak", spec.options.tol_weak}};
  write_text(flags.out, out.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Upper bound on the spectral-norm distance from a matrix polynomial to "
      "the polynomials with a prescribed multiple eigenvalue, with an explicit "
      "perturbation attaining it"};
  app.require_subcommand(1);

  RunFlags flags;
  double range_lo = 0, range_hi = 0;
  int steps = 0;

  const auto add_common = [&flags](CLI::App* cmd) {
    cmd->add_option("file", flags.file, "problem file (JSON)")->required();
    cmd->add_option("--mu", flags.mu, "evaluation point, RE IM")->expected(2);
    cmd->add_option("--weights", flags.weights, "weights w0,...,wm")->delimiter(',');
    cmd->add_option("--tol-weak", flags.tol_weak, "weak-normality tolerance");
    cmd->add_flag("--parallel", flags.parallel, "evaluate curve grids with OpenMP");
  };

  CLI::App* run = app.add_subcommand("run", "full distance-bound pipeline");
  add_common(run);
  run->add_option("--tol-mult", flags.tol_mult, "multiplicity clustering tolerance");
  run->add_option("--tol-eig", flags.tol_eig, "multiple-eigenvalue acceptance tolerance");
  run->add_option("--grid-points", flags.grid_points, "curve grid size");
  run->add_option("--gamma-max-factor", flags.gamma_max_factor,
                  "initial search-limit factor");
  run->add_option("--lower-bound", flags.lower_bound,
                  "externally computed lower bound, echoed into the report")
      ->each([&flags](const std::string&) { flags.has_lower_bound = true; });
  run->add_option("--out", flags.out, "report file (default: stdout)");

  CLI::App* curve = app.add_subcommand("curve", "export curve samples as CSV");
  add_common(curve);
  curve->add_option("--range", [&range_lo, &range_hi](const std::vector<std::string>& v) {
           char* end = nullptr;
           range_lo = std::strtod(v[0].c_str(), &end);
           if (end == v[0].c_str() || *end != '\0') return false;
           range_hi = std::strtod(v[1].c_str(), &end);
           return end != v[1].c_str() && *end == '\0';
         },
         "gamma interval, A B")
      ->expected(2)
      ->required();
  curve->add_option("--steps", steps, "number of samples")->required();
  curve->add_option("--out", flags.out, "CSV file (default: stdout)");

  CLI::App* check = app.add_subcommand("check-normal", "weak-normality verdict");
  add_common(check);
  check->add_option("--out", flags.out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(flags);
    if (curve->parsed()) return cmd_curve(flags, range_lo, range_hi, steps);
    if (check->parsed()) return cmd_check_normal(flags);
  } catch (const multeig::ParseError& e) {
    std::cerr << "error (input): " << e.what() << "\n";
    return kExitParse;
  } catch (const multeig::PreconditionError& e) {
    std::cerr << "error (precondition): " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const multeig::ConsistencyError& e) {
    std::cerr << "error (internal consistency): " << e.what() << "\n";
    return kExitConsistency;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
