#ifndef MULTEIG_PERTURBATION_HPP
#define MULTEIG_PERTURBATION_HPP

#include <vector>

#include "multeig/matpoly.hpp"
#include "multeig/vector_selector.hpp"

namespace multeig {

/// Nonnegative per-coefficient weights w_0..w_m with w_0 > 0, together with
/// the scalar weight polynomial w(x) = w_m x^m + ... + w_0. A perturbation
/// {D_j} is admissible at level eps when ||D_j||_2 <= eps * w_j for all j.
class WeightSet {
public:
  explicit WeightSet(std::vector<double> weights);

  int count() const noexcept { return static_cast<int>(weights_.size()); }
  double weight(int j) const { return weights_.at(static_cast<size_t>(j)); }
  const std::vector<double>& weights() const noexcept { return weights_; }

  double eval(double x) const;             ///< w(x)
  double eval_derivative(double x) const;  ///< w'(x)

private:
  std::vector<double> weights_;
};

/// The scalar (w'(|mu|)/w(|mu|)) * (conj(mu)/|mu|) entering the inner factor
/// of the core perturbation, with conj(mu)/|mu| := 0 at mu = 0.
Complex weight_phase_factor(const WeightSet& w, Complex mu);

/// The rank <= 2 core perturbation
///
///   D = -s_star [u_1 u_2] [[1, -gamma_star*phi], [0, 1]] pinv([v_1 v_2])
///
/// from a compatible combined singular pair. Throws ConsistencyError when
/// the right factor has numerical rank 0.
Matrix core_perturbation(double s_star, double gamma_star,
                         const CombinedSingularPair& pair, Complex phi);

/// The distance bound (s_star / w(|mu|)) * || V [[1, -gamma_star*phi],[0,1]] pinv(V) ||_2
/// with V = [v_1 v_2].
double distance_upper_bound(double s_star, double gamma_star,
                            const CombinedSingularPair& pair, Complex phi,
                            const WeightSet& w, Complex mu);

/// The perturbed polynomial
///
///   Q(z) = P(z) + sum_j (w_j / w(|mu|)) (conj(mu)/|mu|)^j D z^j ,
///
/// every coefficient perturbation a scalar multiple of the same core matrix.
MatrixPolynomial apply_perturbation(const MatrixPolynomial& p, const Matrix& delta_core,
                                    const WeightSet& w, Complex mu);

struct MultipleEigenvalueCheck {
  std::vector<Complex> eigenvalues_near_mu;  ///< all eigenvalues within tol_eig of mu
  double second_nearest_gap = 0.0;           ///< |mu - second nearest eigenvalue|
  bool success = false;                      ///< at least two eigenvalues near mu
};

/// Floating point never produces an exact double root; the construction is
/// accepted when at least two eigenvalues of Q land within tol_eig of mu.
MultipleEigenvalueCheck verify_multiple_eigenvalue(const MatrixPolynomial& q, Complex mu,
                                                   double tol_eig = 5e-3);

struct PerturbationReport {
  /// Attained level: the common value of ||D_j||_2 / w_j over j with w_j > 0.
  /// Q lies exactly on the boundary of the admissible class at this level.
  double epsilon = 0.0;
  /// The bound evaluated through the right-factor formula. Agrees with
  /// epsilon up to the Gram residual of the input pair.
  double formula_bound = 0.0;
  Matrix delta_core;
  std::vector<Matrix> delta_coeffs;
  MatrixPolynomial q;
  std::vector<Complex> q_spectrum;
  std::vector<Complex> eigenvalues_near_mu;
  std::vector<double> boundary_residuals;  ///< | ||D_j||_2 - epsilon * w_j | per j
  double second_nearest_gap = 0.0;
  bool multiple_eigenvalue = false;
};

/// Runs the whole construction: core perturbation, bound, perturbed
/// polynomial, boundary residuals and the multiple-eigenvalue check.
PerturbationReport build_perturbation_report(const MatrixPolynomial& p, Complex mu,
                                             const WeightSet& w, double s_star,
                                             double gamma_star,
                                             const CombinedSingularPair& pair,
                                             double tol_eig = 5e-3);

}  // namespace multeig

#endif
