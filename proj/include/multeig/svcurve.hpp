#ifndef MULTEIG_SVCURVE_HPP
#define MULTEIG_SVCURVE_HPP

#include <vector>

#include "multeig/matpoly.hpp"

namespace multeig {

// The distance analysis runs through the 2n x 2n block matrix
//
//     [ P(mu)          0     ]
//     [ gamma P'(mu)   P(mu) ]
//
// whose (2n-1)-th singular value, maximized over gamma >= 0, yields the
// perturbation bound. This module evaluates that curve and locates its
// maximum.

/// The coupling matrix above, from precomputed P(mu) and P'(mu).
Matrix coupling_matrix(const Matrix& p_mu, const Matrix& dp_mu, double gamma);
Matrix coupling_matrix(const MatrixPolynomial& p, Complex mu, double gamma);

/// All 2n singular values of the coupling matrix, nonincreasing.
RealVector singular_values_at(const MatrixPolynomial& p, Complex mu, double gamma);

struct CurvePoint {
  double gamma = 0.0;
  double s_2n_minus_1 = 0.0;  ///< second-smallest singular value
  double s_2n_minus_2 = 0.0;  ///< third-smallest singular value
};

/// Evaluates the curve on a grid, one SVD per point. The points are
/// independent; the parallel variant distributes them over OpenMP threads
/// and fills the result slot-by-slot, so its output is identical to the
/// serial reference bit for bit regardless of thread count. The serial
/// version is kept as the reference implementation for testing.
std::vector<CurvePoint> scan_curve_serial(const Matrix& p_mu, const Matrix& dp_mu,
                                          const std::vector<double>& grid);
std::vector<CurvePoint> scan_curve_parallel(const Matrix& p_mu, const Matrix& dp_mu,
                                            const std::vector<double>& grid);
std::vector<CurvePoint> scan_curve(const Matrix& p_mu, const Matrix& dp_mu,
                                   const std::vector<double>& grid, bool parallel);

/// Curve table for export/plotting. Requires n >= 2 and a nonempty,
/// nonnegative grid.
std::vector<CurvePoint> curve_samples(const MatrixPolynomial& p, Complex mu,
                                      const std::vector<double>& grid,
                                      bool parallel = false);

struct CurveSearchOptions {
  int grid_points = 200;
  /// Initial search limit: gamma_max_factor * ||P(mu)||_2 / s_min(P'(mu)).
  double gamma_max_factor = 10.0;
  /// The limit doubles until the curve tail has been nonincreasing for 20
  /// consecutive samples, at most this many times.
  int max_doublings = 24;
  /// Multiplicity clustering: values within tol_mult * max(1, s_star) of
  /// s_star count as one multiple singular value.
  double tol_mult = 1e-6;
  bool parallel = false;
};

struct CurveMaximum {
  double gamma_star = 0.0;
  double s_star = 0.0;
  int multiplicity = 1;
  /// Orthonormal left/right singular subspace bases at (gamma_star, s_star),
  /// 2n x multiplicity, ordered by nonincreasing singular value. Each
  /// left/right column pair carries the common phase that makes the largest
  /// entry of the left column real positive.
  Matrix left_basis;
  Matrix right_basis;
  /// True when the maximum is attained at gamma = 0. The perturbation
  /// construction downstream does not apply in that case.
  bool max_at_zero = false;
  /// True when the best point sits at the expanded search limit, i.e. the
  /// doubling heuristic gave up before the tail turned decreasing.
  bool boundary_hit = false;
  /// Search interval actually used.
  double gamma_limit = 0.0;
};

/// Maximizes gamma -> s_{2n-1}(coupling_matrix) over [0, inf): coarse grid
/// scan to bracket candidate maxima, then golden-section refinement around
/// every grid-local maximum (the curve is piecewise smooth with a kink at
/// the crossing, so derivative-free refinement is the right tool).
///
/// Throws PreconditionError when P'(mu) is numerically singular, when n < 2
/// or degree < 1, or when s_star is numerically zero (mu is then already a
/// (near) multiple eigenvalue and the distance bound is 0).
CurveMaximum maximize_curve(const MatrixPolynomial& p, Complex mu,
                            const CurveSearchOptions& opts = {});

}  // namespace multeig

#endif
