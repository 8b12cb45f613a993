#include "multeig/vector_selector.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace multeig {

CombinationProblem combination_problem_from_matrix(const Matrix& m, double scale) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw PreconditionError("combination matrix must be square and nonempty");

  const double herm_err = (m - m.adjoint()).norm();
  if (herm_err > 1e-8 * m.norm() + 1e-12 * scale) {
    std::ostringstream msg;
    msg << "combination matrix is not Hermitian (residual " << herm_err
        << "); the bases do not belong to a curve maximum";
    throw ConsistencyError(msg.str());
  }

  CombinationProblem cp;
  cp.r = static_cast<int>(m.rows());
  cp.matrix = m;
  cp.tol_definite = 1e-8 * scale;

  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  if (es.info() != Eigen::Success)
    throw ConsistencyError("eigendecomposition of the combination matrix failed");
  cp.eigenvalues = es.eigenvalues();
  cp.eigenvectors = es.eigenvectors();
  for (int j = 0; j < cp.r; ++j) phase_align(cp.eigenvectors.col(j));

  const double eta_min = cp.eigenvalues(0);
  const double eta_max = cp.eigenvalues(cp.r - 1);
  if (!(eta_min <= cp.tol_definite && eta_max >= -cp.tol_definite)) {
    std::ostringstream msg;
    msg << "no admissible combination: the combination matrix is definite "
           "(eigenvalues in ["
        << eta_min << ", " << eta_max << "])";
    throw ConsistencyError(msg.str());
  }
  return cp;
}

CombinationProblem combination_matrix(const Matrix& left_basis, const Matrix& right_basis,
                                      const Matrix& dp_mu) {
  if (left_basis.rows() != right_basis.rows() || left_basis.cols() != right_basis.cols())
    throw PreconditionError("left/right bases must have matching shapes");
  if (left_basis.rows() % 2 != 0 || left_basis.rows() / 2 != dp_mu.rows())
    throw PreconditionError("basis rows must be twice the matrix size");
  const Eigen::Index n = dp_mu.rows();
  const Matrix m = left_basis.bottomRows(n).adjoint() * dp_mu * right_basis.topRows(n);
  return combination_problem_from_matrix(m, spectral_norm(dp_mu));
}

std::pair<Matrix, Matrix> canonical_cluster_basis(const Matrix& left_basis,
                                                  const Matrix& right_basis,
                                                  const CombinationProblem& cp) {
  Matrix left = left_basis * cp.eigenvectors;
  Matrix right = right_basis * cp.eigenvectors;
  for (int j = 0; j < cp.r; ++j) phase_align_pair(left.col(j), right.col(j));
  return {std::move(left), std::move(right)};
}

Vector solve_combination(const CombinationProblem& cp) {
  const int r = cp.r;

  // A near-null eigenvector already annihilates the quadratic form.
  int k_small = 0;
  for (int k = 1; k < r; ++k)
    if (std::abs(cp.eigenvalues(k)) < std::abs(cp.eigenvalues(k_small))) k_small = k;
  if (std::abs(cp.eigenvalues(k_small)) <= cp.tol_definite)
    return cp.eigenvectors.col(k_small);

  const double eta_min = cp.eigenvalues(0);
  const double eta_max = cp.eigenvalues(r - 1);
  if (!(eta_min < 0.0 && eta_max > 0.0))
    throw ConsistencyError("no admissible combination: the combination matrix is definite");

  const double denom = std::abs(eta_max) + std::abs(eta_min);
  Vector alpha = std::sqrt(std::abs(eta_min) / denom) * cp.eigenvectors.col(r - 1) +
                 std::sqrt(std::abs(eta_max) / denom) * cp.eigenvectors.col(0);
  alpha.normalize();
  return alpha;
}

CombinedSingularPair combine_pair(const Matrix& left_basis, const Matrix& right_basis,
                                  const Vector& alpha, const Matrix& dp_mu) {
  CombinedSingularPair pair;
  pair.u = left_basis * alpha;
  pair.v = right_basis * alpha;
  pair.alpha = alpha;
  const auto [orth, gram] = compatibility_residuals(pair.u, pair.v, dp_mu);
  pair.orthogonality_residual = orth;
  pair.gram_residual = gram;
  return pair;
}

std::pair<double, double> compatibility_residuals(const Vector& u, const Vector& v,
                                                  const Matrix& dp_mu) {
  const Eigen::Index n = dp_mu.rows();
  if (u.size() != 2 * n || v.size() != 2 * n)
    throw PreconditionError("vector pair must have twice the matrix size");
  const double orth = std::abs((u.tail(n).adjoint() * dp_mu * v.head(n))(0));
  Matrix left(n, 2), right(n, 2);
  left.col(0) = u.head(n);
  left.col(1) = u.tail(n);
  right.col(0) = v.head(n);
  right.col(1) = v.tail(n);
  const double gram = spectral_norm(left.adjoint() * left - right.adjoint() * right);
  return {orth, gram};
}

}  // namespace multeig
