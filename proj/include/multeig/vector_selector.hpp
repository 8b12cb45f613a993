#ifndef MULTEIG_VECTOR_SELECTOR_HPP
#define MULTEIG_VECTOR_SELECTOR_HPP

#include <utility>

#include "multeig/matpoly.hpp"

namespace multeig {

// When s_star is a multiple singular value, an SVD returns an arbitrary
// orthonormal basis of the singular subspaces, and a generic basis pair
// violates the two compatibility conditions the perturbation construction
// needs:
//
//   (1)  u_2^* P'(mu) v_1 = 0                  (orthogonality residual)
//   (2)  [u_1 u_2]^*[u_1 u_2] = [v_1 v_2]^*[v_1 v_2]   (Gram residual)
//
// with u = [u_1; u_2], v = [v_1; v_2]. Since (1) implies (2), this module
// searches the singular subspace for a combined pair annihilating the
// quadratic form in (1). The form is governed by the r x r matrix
// m_ij = u_2^{(i)*} P'(mu) v_1^{(j)}, which is Hermitian and never definite
// at a true curve maximum.

struct CombinationProblem {
  int r = 0;
  Matrix matrix;           ///< m_ij as above
  RealVector eigenvalues;  ///< ascending (real: the matrix is Hermitian)
  Matrix eigenvectors;     ///< orthonormal columns, phase-aligned
  /// Magnitude scale for definiteness/degeneracy decisions. Entries of the
  /// matrix are bounded by ||P'(mu)||_2, so the scale is taken from there
  /// rather than from ||matrix|| itself, which can legitimately be ~0.
  double tol_definite = 0.0;
};

/// Builds the combination problem from 2n x r singular subspace bases.
/// Throws ConsistencyError when the matrix fails the Hermiticity check
/// (wrong bases, or gamma is not the curve maximizer) or when it is
/// definite beyond tolerance (no admissible combination).
CombinationProblem combination_matrix(const Matrix& left_basis,
                                      const Matrix& right_basis,
                                      const Matrix& dp_mu);

/// Same, from an explicit r x r matrix and magnitude scale.
CombinationProblem combination_problem_from_matrix(const Matrix& m, double scale);

/// Rotates both bases into the eigenbasis of the combination matrix and
/// phase-aligns each column pair. In this basis the combination matrix is
/// diagonal (its eigenvalues), which makes every downstream choice
/// deterministic and independent of how the SVD backend picked the original
/// basis of the degenerate subspace.
std::pair<Matrix, Matrix> canonical_cluster_basis(const Matrix& left_basis,
                                                  const Matrix& right_basis,
                                                  const CombinationProblem& cp);

/// Unit coefficient vector alpha with alpha^* m alpha = 0: the weighted sum
///
///   sqrt(|eta_min| / (|eta_max|+|eta_min|)) w_max
///     + sqrt(|eta_max| / (|eta_max|+|eta_min|)) w_min
///
/// of the extreme eigenpairs. When some |eta_k| is below tolerance that
/// eigenvector alone already annihilates the form and is returned directly.
Vector solve_combination(const CombinationProblem& cp);

struct CombinedSingularPair {
  Vector u;      ///< combined left singular vector, 2n, unit
  Vector v;      ///< combined right singular vector, 2n, unit
  Vector alpha;  ///< combination coefficients, r, unit
  double orthogonality_residual = 0.0;  ///< |u_2^* P'(mu) v_1|
  double gram_residual = 0.0;           ///< ||U^*U - V^*V||_2, U=[u_1 u_2], V=[v_1 v_2]
};

/// u = sum_j alpha_j left_j, v = sum_j alpha_j right_j, with the two
/// residuals evaluated against P'(mu).
CombinedSingularPair combine_pair(const Matrix& left_basis, const Matrix& right_basis,
                                  const Vector& alpha, const Matrix& dp_mu);

/// Recomputes the residuals (1) and (2) for an arbitrary vector pair.
std::pair<double, double> compatibility_residuals(const Vector& u, const Vector& v,
                                                  const Matrix& dp_mu);

}  // namespace multeig

#endif
