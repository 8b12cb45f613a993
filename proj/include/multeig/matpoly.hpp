#ifndef MULTEIG_MATPOLY_HPP
#define MULTEIG_MATPOLY_HPP

#include <optional>
#include <vector>

#include "multeig/errors.hpp"
#include "multeig/linalg.hpp"

namespace multeig {

/// Relative threshold under which a leading coefficient (or a derivative
/// value) counts as numerically singular: s_min <= kSingularRelTol * s_max.
inline constexpr double kSingularRelTol = 1e-10;

/// An n x n matrix polynomial A_m z^m + ... + A_1 z + A_0 with nonsingular
/// leading coefficient. Coefficients are stored ascending (A_0 first).
/// Instances are immutable after construction and safe to share across
/// threads.
class MatrixPolynomial {
public:
  /// Validates squareness, equal sizes and nonsingularity of the leading
  /// coefficient; throws PreconditionError otherwise.
  explicit MatrixPolynomial(std::vector<Matrix> coefficients);

  int size() const noexcept { return n_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const Matrix& coeff(int j) const { return coeffs_.at(static_cast<size_t>(j)); }
  const std::vector<Matrix>& coeffs() const noexcept { return coeffs_; }

  /// Value at a point, by the Horner recurrence on matrices.
  Matrix eval(Complex z) const;

  /// Derivative polynomial (degree m-1). Its leading coefficient is m * A_m,
  /// hence automatically nonsingular. Throws for degree 0.
  MatrixPolynomial derivative() const;

  /// The m*n finite eigenvalues (roots of det P, with multiplicity), via the
  /// block companion matrix of the monic form A_m^{-1} P. Empty for degree 0.
  std::vector<Complex> spectrum() const;

  /// max_j ||A_j||_2, the natural magnitude scale of the polynomial.
  double max_coeff_norm() const;

private:
  std::vector<Matrix> coeffs_;
  int n_ = 0;
};

struct WeakNormalityWitness {
  bool is_weakly_normal = false;
  /// Common unitary diagonalizer of all coefficients; present only when
  /// weakly normal.
  std::optional<Matrix> diagonalizer;
  /// When weakly normal: max_j ||offdiag(U^* A_j U)||_F / ||A_j||_F.
  /// Otherwise: the largest violated relative normality/commutation measure.
  double residual = 0.0;
};

/// Tests whether all coefficients are normal and mutually commuting (both
/// relative to tol_weak) and, if so, produces the common diagonalizer.
/// Never throws; failures are reported through is_weakly_normal = false.
WeakNormalityWitness is_weakly_normal(const MatrixPolynomial& p,
                                      double tol_weak = 1e-10);

/// Unitary U with all U^* A_j U diagonal up to tol_weak (relative to
/// ||A_j||_F). Works by the Schur decomposition of a random real linear
/// combination of the coefficients; a generic combination separates the
/// joint eigenvectors almost surely, and up to 5 fresh combinations are
/// tried before giving up with a ConsistencyError. Deterministic (fixed
/// seed).
Matrix simultaneous_diagonalizer(const MatrixPolynomial& p,
                                 double tol_weak = 1e-10);

}  // namespace multeig

#endif
