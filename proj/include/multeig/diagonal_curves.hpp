#ifndef MULTEIG_DIAGONAL_CURVES_HPP
#define MULTEIG_DIAGONAL_CURVES_HPP

#include <utility>

#include "multeig/matpoly.hpp"

namespace multeig {

// For a polynomial whose coefficients are simultaneously diagonalizable, the
// coupling matrix splits (after a permutation) into n independent 2x2 blocks
//
//     [ z_i          0   ]          z_i  = (U^* P(mu)  U)_ii
//     [ gamma x_i    z_i ]          x_i  = (U^* P'(mu) U)_ii
//
// whose singular values are known in closed form. This gives an independent
// route to the curve maximum that never touches a 2n x 2n SVD.

/// Diagonal data at the evaluation point, sorted so that |z_1| >= ... >= |z_n|
/// with the derivative entries co-sorted.
struct DiagonalPointData {
  Vector p_diag;   ///< z_i
  Vector dp_diag;  ///< x_i
};

/// Closed-form singular values (s1 >= s2 >= 0) of one 2x2 block.
std::pair<double, double> block_singular_values(Complex p_entry, Complex dp_entry,
                                                double gamma);

/// Extracts and sorts the diagonal data, given a simultaneous diagonalizer of
/// the coefficients. Throws PreconditionError when some derivative entry is
/// numerically zero (P'(mu) singular).
DiagonalPointData diagonal_point_data(const MatrixPolynomial& p, Complex mu,
                                      const Matrix& diagonalizer);

struct ClosedFormMaximum {
  double gamma_star = 0.0;
  double s_star = 0.0;
  /// 1-based index k of the decreasing branch s_{k,2} that the increasing
  /// branch s_{n,1} meets first (ties resolved toward the smallest index);
  /// 0 when the maximum sits at gamma = 0.
  int crossing_index = 0;
  bool max_at_zero = false;
};

/// Closed-form curve maximum. When the two smallest |z_i| coincide (within
/// 1e-10 relative) the curve is nonincreasing and the maximum sits at
/// gamma = 0. Otherwise the maximizer is the smallest positive root of
/// s_{n,1}(gamma) = s_{k,2}(gamma) over k = 1..n-1; each root is isolated by
/// doubling and located by bisection to 1e-12 absolute (the difference is
/// strictly increasing, so the root is unique).
ClosedFormMaximum closed_form_maximum(const DiagonalPointData& data);

}  // namespace multeig

#endif
