#include "multeig/matpoly.hpp"

#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace multeig {

namespace {

double offdiag_frobenius(const Matrix& m) {
  Matrix off = m;
  off.diagonal().setZero();
  return off.norm();
}

}  // namespace

MatrixPolynomial::MatrixPolynomial(std::vector<Matrix> coefficients)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty())
    throw PreconditionError("matrix polynomial needs at least one coefficient");
  n_ = static_cast<int>(coeffs_.front().rows());
  if (n_ < 1) throw PreconditionError("coefficient matrices must be nonempty");
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j].rows() != n_ || coeffs_[j].cols() != n_) {
      std::ostringstream msg;
      msg << "coefficient " << j << " is " << coeffs_[j].rows() << "x"
          << coeffs_[j].cols() << ", expected " << n_ << "x" << n_;
      throw PreconditionError(msg.str());
    }
  }
  const RealVector s = singular_values(coeffs_.back());
  if (!(s(0) > 0.0) || s(s.size() - 1) <= kSingularRelTol * s(0))
    throw PreconditionError("leading coefficient is numerically singular");
}

Matrix MatrixPolynomial::eval(Complex z) const {
  Matrix r = coeffs_.back();
  for (int j = degree() - 1; j >= 0; --j) r = (r * z + coeffs_[static_cast<size_t>(j)]).eval();
  return r;
}

MatrixPolynomial MatrixPolynomial::derivative() const {
  if (degree() == 0)
    throw PreconditionError("derivative of a degree-0 matrix polynomial is degenerate");
  std::vector<Matrix> d;
  d.reserve(coeffs_.size() - 1);
  for (size_t j = 1; j < coeffs_.size(); ++j)
    d.push_back(static_cast<double>(j) * coeffs_[j]);
  return MatrixPolynomial(std::move(d));
}

std::vector<Complex> MatrixPolynomial::spectrum() const {
  const int m = degree();
  if (m == 0) return {};
  // Monic block companion of A_m^{-1} P; valid because A_m is nonsingular.
  Eigen::PartialPivLU<Matrix> lu(coeffs_.back());
  const int dim = n_ * m;
  Matrix companion = Matrix::Zero(dim, dim);
  for (int b = 0; b + 1 < m; ++b)
    companion.block(b * n_, (b + 1) * n_, n_, n_).setIdentity();
  for (int j = 0; j < m; ++j)
    companion.block((m - 1) * n_, j * n_, n_, n_) = -lu.solve(coeffs_[static_cast<size_t>(j)]);
  Eigen::ComplexEigenSolver<Matrix> es(companion, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw ConsistencyError("companion eigenvalue iteration failed to converge");
  const Vector vals = es.eigenvalues();
  return {vals.data(), vals.data() + vals.size()};
}

double MatrixPolynomial::max_coeff_norm() const {
  double best = 0.0;
  for (const Matrix& a : coeffs_) best = std::max(best, spectral_norm(a));
  return best;
}

WeakNormalityWitness is_weakly_normal(const MatrixPolynomial& p, double tol_weak) {
  const auto& a = p.coeffs();
  double worst = 0.0;
  bool ok = true;
  for (const Matrix& aj : a) {
    const double scale = aj.norm() * aj.norm();
    const double err = (aj * aj.adjoint() - aj.adjoint() * aj).norm();
    if (scale == 0.0) continue;
    worst = std::max(worst, err / scale);
    if (err > tol_weak * scale) ok = false;
  }
  for (size_t i = 0; ok && i < a.size(); ++i) {
    for (size_t j = i + 1; j < a.size(); ++j) {
      const double scale = a[i].norm() * a[j].norm();
      const double err = (a[i] * a[j] - a[j] * a[i]).norm();
      if (scale == 0.0) continue;
      worst = std::max(worst, err / scale);
      if (err > tol_weak * scale) {
        ok = false;
        break;
      }
    }
  }
  if (!ok) return {false, std::nullopt, worst};

  WeakNormalityWitness witness;
  try {
    Matrix u = simultaneous_diagonalizer(p, tol_weak);
    double residual = 0.0;
    for (const Matrix& aj : a) {
      const double scale = aj.norm();
      if (scale == 0.0) continue;
      residual = std::max(residual, offdiag_frobenius(u.adjoint() * aj * u) / scale);
    }
    witness = {true, std::move(u), residual};
  } catch (const ConsistencyError&) {
    witness = {false, std::nullopt, worst};
  }
  return witness;
}

Matrix simultaneous_diagonalizer(const MatrixPolynomial& p, double tol_weak) {
  // Fixed seed: the result (and everything derived from it) is reproducible.
  std::mt19937_64 rng(0x9d2c5680u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto& a = p.coeffs();
  const int n = p.size();

  double last_residual = 0.0;
  for (int attempt = 0; attempt < 5; ++attempt) {
    Matrix combo = Matrix::Zero(n, n);
    for (const Matrix& aj : a) combo += gauss(rng) * aj;
    Eigen::ComplexSchur<Matrix> schur(combo, /*computeU=*/true);
    if (schur.info() != Eigen::Success) continue;
    const Matrix& u = schur.matrixU();
    double residual = 0.0;
    for (const Matrix& aj : a) {
      const double scale = aj.norm();
      if (scale == 0.0) continue;
      residual = std::max(residual, offdiag_frobenius(u.adjoint() * aj * u) / scale);
    }
    if (residual <= tol_weak) return u;
    last_residual = residual;
  }
  std::ostringstream msg;
  msg << "simultaneous diagonalization failed after 5 random combinations "
         "(best off-diagonal residual "
      << last_residual << "); the coefficients may not commute to tolerance";
  throw ConsistencyError(msg.str());
}

}  // namespace multeig
