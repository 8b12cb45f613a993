#include "multeig/linalg.hpp"

#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "multeig/errors.hpp"

namespace multeig {

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
}

double smallest_singular_value(const Matrix& a) {
  const RealVector s = singular_values(a);
  return s(s.size() - 1);
}

RealVector singular_values(const Matrix& a) {
  return Eigen::JacobiSVD<Matrix>(a).singularValues();
}

Matrix pseudo_inverse(const Matrix& a, double cutoff_factor, int* rank) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  const double cutoff =
      cutoff_factor * std::numeric_limits<double>::epsilon() * (s.size() > 0 ? s(0) : 0.0);
  int r = 0;
  RealVector inv = RealVector::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff && s(i) > 0.0) {
      inv(i) = 1.0 / s(i);
      ++r;
    }
  }
  if (rank != nullptr) *rank = r;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

double unitarity_residual(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).norm();
}

void phase_align(Eigen::Ref<Vector> v) {
  Eigen::Index idx = 0;
  const double mag = v.cwiseAbs().maxCoeff(&idx);
  if (mag == 0.0) return;
  v *= std::conj(v(idx)) / mag;
}

void phase_align_pair(Eigen::Ref<Vector> left, Eigen::Ref<Vector> right) {
  Eigen::Index idx = 0;
  const double mag = left.cwiseAbs().maxCoeff(&idx);
  if (mag == 0.0) return;
  const Complex phase = std::conj(left(idx)) / mag;
  left *= phase;
  right *= phase;
}

std::vector<double> linspace(double a, double b, int count) {
  if (count < 2) throw PreconditionError("linspace needs at least 2 points");
  std::vector<double> out(static_cast<size_t>(count));
  const double step = (b - a) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<size_t>(i)] = a + step * i;
  out.back() = b;
  return out;
}

}  // namespace multeig
