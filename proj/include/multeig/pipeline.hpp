#ifndef MULTEIG_PIPELINE_HPP
#define MULTEIG_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "multeig/diagonal_curves.hpp"
#include "multeig/matpoly.hpp"
#include "multeig/perturbation.hpp"
#include "multeig/svcurve.hpp"
#include "multeig/vector_selector.hpp"

namespace multeig {

struct PipelineOptions {
  double tol_weak = 1e-10;
  double tol_mult = 1e-6;
  double tol_eig = 5e-3;
  int grid_points = 200;
  double gamma_max_factor = 10.0;
  bool parallel = false;
  /// Externally supplied lower bound for the distance; echoed into the
  /// report only. No lower-bound algorithm is implemented here.
  std::optional<double> user_lower_bound;
};

struct ProblemSpec {
  MatrixPolynomial polynomial;
  Complex mu;
  WeightSet weights;
  PipelineOptions options;
};

struct RunResult {
  WeakNormalityWitness normality;
  CurveMaximum curve;

  /// Closed-form cross-check, present for weakly normal input.
  std::optional<ClosedFormMaximum> closed_form;

  /// Diagnostics of the "naive" basis pair (the canonical pair for the most
  /// negative eigenvalue of the combination matrix), present when the
  /// multiplicity is >= 2. Shows how badly an uncombined SVD pair violates
  /// the compatibility conditions.
  std::optional<std::pair<double, double>> naive_residuals;

  /// Present when multiplicity >= 2 (the multiplicity-1 path bypasses the
  /// combination step).
  std::optional<CombinationProblem> combination;

  std::optional<CombinedSingularPair> pair;
  Complex phi{0.0, 0.0};
  std::optional<PerturbationReport> perturbation;

  bool max_at_zero = false;
  /// Out-of-scope notice for the gamma_star = 0 case.
  std::string notice;
  std::vector<std::string> warnings;
};

/// Validates the spec (weight count vs degree) and runs the full chain:
/// weak-normality detection, curve maximization (with closed-form
/// cross-check when applicable), singular-vector selection, perturbation
/// construction and verification. For gamma_star = 0 the run stops after
/// (gamma_star, s_star) with an explanatory notice.
RunResult run_pipeline(const ProblemSpec& spec);

/// Full structured report: inputs, tolerances, every intermediate quantity
/// and the verdicts. Complex numbers appear as [re, im] pairs. Deterministic
/// for fixed input.
nlohmann::json report_json(const ProblemSpec& spec, const RunResult& result);

}  // namespace multeig

#endif
