#include "multeig/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace multeig {

namespace {

Matrix stacked_halves(const Vector& x) {
  const Eigen::Index n = x.size() / 2;
  Matrix m(n, 2);
  m.col(0) = x.head(n);
  m.col(1) = x.tail(n);
  return m;
}

Matrix inner_factor(double gamma_star, Complex phi) {
  Matrix k(2, 2);
  k << Complex(1.0), -gamma_star * phi, Complex(0.0), Complex(1.0);
  return k;
}

}  // namespace

WeightSet::WeightSet(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw PreconditionError("weight set must be nonempty");
  if (!(weights_[0] > 0.0)) throw PreconditionError("weight w_0 must be positive");
  for (size_t j = 0; j < weights_.size(); ++j)
    if (weights_[j] < 0.0) {
      std::ostringstream msg;
      msg << "weight w_" << j << " must be nonnegative";
      throw PreconditionError(msg.str());
    }
}

double WeightSet::eval(double x) const {
  double r = 0.0;
  for (size_t j = weights_.size(); j-- > 0;) r = r * x + weights_[j];
  return r;
}

double WeightSet::eval_derivative(double x) const {
  double r = 0.0;
  for (size_t j = weights_.size(); j-- > 1;) r = r * x + static_cast<double>(j) * weights_[j];
  return r;
}

Complex weight_phase_factor(const WeightSet& w, Complex mu) {
  if (mu == Complex(0.0)) return {0.0, 0.0};
  const double a = std::abs(mu);
  return (w.eval_derivative(a) / w.eval(a)) * (std::conj(mu) / a);
}

Matrix core_perturbation(double s_star, double gamma_star,
                         const CombinedSingularPair& pair, Complex phi) {
  const Matrix left = stacked_halves(pair.u);
  const Matrix right = stacked_halves(pair.v);
  int rank = 0;
  const Matrix right_pinv =
      pseudo_inverse(right, std::max<double>(2.0 * static_cast<double>(right.rows()), 2.0),
                     &rank);
  if (rank == 0)
    throw ConsistencyError("right singular-vector factor has numerical rank 0");
  return -s_star * left * inner_factor(gamma_star, phi) * right_pinv;
}

double distance_upper_bound(double s_star, double gamma_star,
                            const CombinedSingularPair& pair, Complex phi,
                            const WeightSet& w, Complex mu) {
  const Matrix right = stacked_halves(pair.v);
  const Matrix right_pinv = pseudo_inverse(
      right, std::max<double>(2.0 * static_cast<double>(right.rows()), 2.0));
  return s_star / w.eval(std::abs(mu)) *
         spectral_norm(right * inner_factor(gamma_star, phi) * right_pinv);
}

MatrixPolynomial apply_perturbation(const MatrixPolynomial& p, const Matrix& delta_core,
                                    const WeightSet& w, Complex mu) {
  if (w.count() != p.degree() + 1)
    throw PreconditionError("weight count must match polynomial degree + 1");
  const double w_at_mu = w.eval(std::abs(mu));
  const Complex unit_phase = mu == Complex(0.0) ? Complex(0.0) : std::conj(mu) / std::abs(mu);
  std::vector<Matrix> coeffs;
  coeffs.reserve(p.coeffs().size());
  Complex phase_pow{1.0, 0.0};
  for (int j = 0; j <= p.degree(); ++j) {
    coeffs.push_back(p.coeff(j) + (w.weight(j) / w_at_mu) * phase_pow * delta_core);
    phase_pow *= unit_phase;
  }
  return MatrixPolynomial(std::move(coeffs));
}

MultipleEigenvalueCheck verify_multiple_eigenvalue(const MatrixPolynomial& q, Complex mu,
                                                   double tol_eig) {
  MultipleEigenvalueCheck check;
  const std::vector<Complex> eigs = q.spectrum();
  std::vector<double> dist(eigs.size());
  for (size_t i = 0; i < eigs.size(); ++i) dist[i] = std::abs(eigs[i] - mu);
  for (size_t i = 0; i < eigs.size(); ++i)
    if (dist[i] <= tol_eig) check.eigenvalues_near_mu.push_back(eigs[i]);
  std::vector<double> sorted = dist;
  std::sort(sorted.begin(), sorted.end());
  check.second_nearest_gap =
      sorted.size() >= 2 ? sorted[1] : std::numeric_limits<double>::infinity();
  check.success = check.eigenvalues_near_mu.size() >= 2;
  return check;
}

PerturbationReport build_perturbation_report(const MatrixPolynomial& p, Complex mu,
                                             const WeightSet& w, double s_star,
                                             double gamma_star,
                                             const CombinedSingularPair& pair,
                                             double tol_eig) {
  const Complex phi = weight_phase_factor(w, mu);
  const Matrix delta = core_perturbation(s_star, gamma_star, pair, phi);
  const double w_at_mu = w.eval(std::abs(mu));
  const Complex unit_phase = mu == Complex(0.0) ? Complex(0.0) : std::conj(mu) / std::abs(mu);

  PerturbationReport report{
      0.0, 0.0, delta, {}, apply_perturbation(p, delta, w, mu), {}, {}, {}, 0.0, false};

  Complex phase_pow{1.0, 0.0};
  std::vector<double> norms;
  for (int j = 0; j <= p.degree(); ++j) {
    report.delta_coeffs.push_back((w.weight(j) / w_at_mu) * phase_pow * delta);
    norms.push_back(spectral_norm(report.delta_coeffs.back()));
    phase_pow *= unit_phase;
  }

  // The attained level: all coefficient perturbations are scalar multiples of
  // the same core matrix, so ||D_j||/w_j is one constant over j with w_j > 0
  // and Q sits exactly on the boundary of the class at that level.
  double eps = 0.0;
  for (int j = 0; j <= p.degree(); ++j)
    if (w.weight(j) > 0.0) eps = std::max(eps, norms[static_cast<size_t>(j)] / w.weight(j));
  report.epsilon = eps;
  report.formula_bound = distance_upper_bound(s_star, gamma_star, pair, phi, w, mu);
  for (int j = 0; j <= p.degree(); ++j)
    report.boundary_residuals.push_back(
        std::abs(norms[static_cast<size_t>(j)] - eps * w.weight(j)));

  report.q_spectrum = report.q.spectrum();
  const MultipleEigenvalueCheck check = verify_multiple_eigenvalue(report.q, mu, tol_eig);
  report.eigenvalues_near_mu = check.eigenvalues_near_mu;
  report.second_nearest_gap = check.second_nearest_gap;
  report.multiple_eigenvalue = check.success;
  return report;
}

}  // namespace multeig
