#include "multeig/pipeline.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace multeig {

namespace {

using nlohmann::json;

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json to_json(const std::vector<Complex>& v) {
  json out = json::array();
  for (Complex z : v) out.push_back(to_json(z));
  return out;
}

}  // namespace

RunResult run_pipeline(const ProblemSpec& spec) {
  const MatrixPolynomial& p = spec.polynomial;
  if (spec.weights.count() != p.degree() + 1)
    throw PreconditionError("weight count must match polynomial degree + 1");

  RunResult result;
  result.normality = is_weakly_normal(p, spec.options.tol_weak);

  CurveSearchOptions search;
  search.grid_points = spec.options.grid_points;
  search.gamma_max_factor = spec.options.gamma_max_factor;
  search.tol_mult = spec.options.tol_mult;
  search.parallel = spec.options.parallel;
  result.curve = maximize_curve(p, spec.mu, search);

  if (result.normality.is_weakly_normal) {
    result.closed_form = closed_form_maximum(
        diagonal_point_data(p, spec.mu, *result.normality.diagonalizer));
    const double gamma_gap =
        std::abs(result.closed_form->gamma_star - result.curve.gamma_star);
    if (gamma_gap > 1e-4 * std::max(1.0, result.curve.gamma_star)) {
      std::ostringstream msg;
      msg << "closed-form cross-check disagrees with the SVD search: gamma "
          << result.closed_form->gamma_star << " vs " << result.curve.gamma_star;
      result.warnings.push_back(msg.str());
    }
  }
  if (result.curve.boundary_hit)
    result.warnings.push_back(
        "curve maximum lies at the expanded search limit; gamma_star may be "
        "underestimated");

  result.phi = weight_phase_factor(spec.weights, spec.mu);

  if (result.curve.max_at_zero) {
    result.max_at_zero = true;
    result.notice =
        "the curve maximum is attained at gamma = 0 (the two smallest singular "
        "values already coincide there); the construction implemented here "
        "needs gamma > 0, so the bound and perturbation for this case are out "
        "of scope (they require the separate procedure of Papathanasiou & "
        "Psarrakos (2008), Section 6). Only (gamma_star, s_star) is reported.";
    return result;
  }

  const Matrix dp_mu = p.derivative().eval(spec.mu);
  const double dp_norm = spectral_norm(dp_mu);

  if (result.curve.multiplicity == 1) {
    // Simple s_star: the SVD pair is essentially unique and already
    // satisfies the compatibility conditions; no combination is needed.
    Vector alpha(1);
    alpha(0) = Complex(1.0);
    result.pair = combine_pair(result.curve.left_basis, result.curve.right_basis,
                               alpha, dp_mu);
    if (result.pair->orthogonality_residual > 1e-8 * dp_norm ||
        result.pair->gram_residual > 1e-4) {
      std::ostringstream msg;
      msg << "compatibility residuals of the simple singular pair are above "
             "threshold (orthogonality "
          << result.pair->orthogonality_residual << ", gram "
          << result.pair->gram_residual << "); the bound may be degraded";
      result.warnings.push_back(msg.str());
    }
  } else {
    const CombinationProblem raw = combination_matrix(
        result.curve.left_basis, result.curve.right_basis, dp_mu);
    // Work in the canonical (eigenbasis-rotated) cluster basis: the result
    // no longer depends on which orthonormal basis the SVD picked inside the
    // degenerate subspace.
    const auto [left, right] =
        canonical_cluster_basis(result.curve.left_basis, result.curve.right_basis, raw);
    const CombinationProblem canonical = combination_matrix(left, right, dp_mu);

    Vector naive = Vector::Zero(canonical.r);
    naive(0) = Complex(1.0);  // the pair for the most negative eigenvalue
    const CombinedSingularPair naive_pair = combine_pair(left, right, naive, dp_mu);
    result.naive_residuals = {naive_pair.orthogonality_residual,
                              naive_pair.gram_residual};

    const Vector alpha = solve_combination(canonical);
    result.pair = combine_pair(left, right, alpha, dp_mu);
    result.combination = canonical;
  }

  result.perturbation =
      build_perturbation_report(p, spec.mu, spec.weights, result.curve.s_star,
                                result.curve.gamma_star, *result.pair,
                                spec.options.tol_eig);
  return result;
}

nlohmann::json report_json(const ProblemSpec& spec, const RunResult& result) {
  json report;

  json coeffs = json::array();
  for (const Matrix& a : spec.polynomial.coeffs()) coeffs.push_back(to_json(a));
  report["input"] = {{"size", spec.polynomial.size()},
                     {"degree", spec.polynomial.degree()},
                     {"coefficients", std::move(coeffs)},
                     {"mu", to_json(spec.mu)},
                     {"weights", spec.weights.weights()}};

  report["tolerances"] = {{"tol_weak", spec.options.tol_weak},
                          {"tol_mult", spec.options.tol_mult},
                          {"tol_eig", spec.options.tol_eig},
                          {"grid_points", spec.options.grid_points},
                          {"gamma_max_factor", spec.options.gamma_max_factor},
                          {"parallel", spec.options.parallel}};

  report["weak_normality"] = {{"is_weakly_normal", result.normality.is_weakly_normal},
                              {"residual", result.normality.residual}};
  if (result.normality.diagonalizer)
    report["weak_normality"]["diagonalizer"] = to_json(*result.normality.diagonalizer);

  report["curve"] = {{"gamma_star", result.curve.gamma_star},
                     {"s_star", result.curve.s_star},
                     {"multiplicity", result.curve.multiplicity},
                     {"max_at_zero", result.curve.max_at_zero},
                     {"gamma_limit", result.curve.gamma_limit},
                     {"boundary_hit", result.curve.boundary_hit}};

  if (result.closed_form)
    report["closed_form"] = {{"gamma_star", result.closed_form->gamma_star},
                             {"s_star", result.closed_form->s_star},
                             {"crossing_index", result.closed_form->crossing_index},
                             {"max_at_zero", result.closed_form->max_at_zero}};

  report["phi"] = to_json(result.phi);

  if (result.naive_residuals)
    report["naive_pair"] = {{"orthogonality_residual", result.naive_residuals->first},
                            {"gram_residual", result.naive_residuals->second}};

  if (result.combination)
    report["combination"] = {
        {"matrix", to_json(result.combination->matrix)},
        {"eigenvalues",
         std::vector<double>(result.combination->eigenvalues.data(),
                             result.combination->eigenvalues.data() +
                                 result.combination->eigenvalues.size())}};

  if (result.pair)
    report["pair"] = {{"u", to_json(result.pair->u)},
                      {"v", to_json(result.pair->v)},
                      {"alpha", to_json(result.pair->alpha)},
                      {"orthogonality_residual", result.pair->orthogonality_residual},
                      {"gram_residual", result.pair->gram_residual}};

  if (result.perturbation) {
    const PerturbationReport& pr = *result.perturbation;
    json q_coeffs = json::array();
    for (const Matrix& a : pr.q.coeffs()) q_coeffs.push_back(to_json(a));
    report["bound"] = {{"epsilon", pr.epsilon},
                       {"formula_bound", pr.formula_bound},
                       {"boundary_residuals", pr.boundary_residuals}};
    report["delta"] = to_json(pr.delta_core);
    // Empirically the eigenvalue split at mu scales with the pair residuals;
    // the coupled tolerance is logged so reports show the margin.
    const double coupled =
        std::max(spec.options.tol_eig,
                 10.0 * std::sqrt(result.pair->gram_residual +
                                  result.pair->orthogonality_residual /
                                      result.curve.s_star));
    report["perturbed"] = {{"coefficients", std::move(q_coeffs)},
                           {"spectrum", to_json(pr.q_spectrum)},
                           {"eigenvalues_near_mu", to_json(pr.eigenvalues_near_mu)},
                           {"second_nearest_gap", pr.second_nearest_gap},
                           {"residual_coupled_tol_eig", coupled},
                           {"multiple_eigenvalue", pr.multiple_eigenvalue}};
  }

  if (spec.options.user_lower_bound)
    report["lower_bound"] = *spec.options.user_lower_bound;
  else
    report["lower_bound"] = nullptr;

  report["status"] = result.max_at_zero ? "partial-max-at-zero" : "ok";
  if (!result.notice.empty()) report["notice"] = result.notice;
  report["warnings"] = result.warnings;
  return report;
}

}  // namespace multeig
