#ifndef MULTEIG_LINALG_HPP
#define MULTEIG_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace multeig {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest singular value.
double spectral_norm(const Matrix& a);

/// Smallest singular value.
double smallest_singular_value(const Matrix& a);

/// All singular values, nonincreasing.
RealVector singular_values(const Matrix& a);

/// Moore-Penrose pseudoinverse through an SVD. Singular values below
/// cutoff_factor * eps * s_max are treated as zero. The numerical rank is
/// written to `rank` when non-null.
Matrix pseudo_inverse(const Matrix& a, double cutoff_factor, int* rank = nullptr);

/// ||U^*U - I||_F.
double unitarity_residual(const Matrix& u);

/// Multiplies v by the unit phase that makes its largest-modulus entry real
/// positive. Zero vectors are left untouched.
void phase_align(Eigen::Ref<Vector> v);

/// Multiplies the pair (left, right) by the common unit phase that makes the
/// largest-modulus entry of `left` real positive. A singular pair stays a
/// singular pair only under a common phase, so the two vectors must rotate
/// together.
void phase_align_pair(Eigen::Ref<Vector> left, Eigen::Ref<Vector> right);

/// count equally spaced points covering [a, b]; count >= 2.
std::vector<double> linspace(double a, double b, int count);

}  // namespace multeig

#endif
