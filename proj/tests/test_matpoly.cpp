#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "multeig/matpoly.hpp"

using namespace multeig;
using namespace multeig::test;

TEST_CASE("construction validates shapes and the leading coefficient") {
  Matrix a = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(MatrixPolynomial({}), PreconditionError);
  CHECK_THROWS_AS(MatrixPolynomial({a, Matrix::Zero(3, 3)}), PreconditionError);
  CHECK_THROWS_AS(MatrixPolynomial({a, Matrix::Zero(2, 2)}), PreconditionError);

  Matrix near_singular = Matrix::Identity(2, 2);
  near_singular(1, 1) = 1e-13;
  CHECK_THROWS_AS(MatrixPolynomial({a, near_singular}), PreconditionError);
}

TEST_CASE("evaluation at reference points") {
  const MatrixPolynomial p = diag_quadratic();
  const Matrix at = p.eval(kDiagQuadraticMu);
  Matrix expected = Matrix::Zero(3, 3);
  expected.diagonal() << Complex(30), Complex(20), Complex(6);
  CHECK(max_abs_diff(at, expected) < 1e-12);

  CHECK(max_abs_diff(p.eval(0.0), p.coeff(0)) == 0.0);

  const MatrixPolynomial linear({Matrix::Zero(3, 3), Matrix::Identity(3, 3)});
  CHECK(max_abs_diff(linear.eval(5.0), 5.0 * Matrix::Identity(3, 3)) < 1e-14);
}

TEST_CASE("Horner evaluation equals power-sum evaluation") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick_n(1, 6), pick_m(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const MatrixPolynomial p = random_dense(pick_n(rng), pick_m(rng), rng);
    const Complex z = random_complex(rng, 1.5);
    const Matrix a = p.eval(z), b = power_sum_eval(p, z);
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    CHECK(max_abs_diff(a, b) < 1e-12 * scale);
  }
}

TEST_CASE("derivative") {
  const MatrixPolynomial p = diag_quadratic();
  const MatrixPolynomial dp = p.derivative();
  REQUIRE(dp.degree() == 1);
  Matrix expected = Matrix::Zero(3, 3);
  expected.diagonal() << Complex(-11), Complex(-9), Complex(-5);
  CHECK(max_abs_diff(dp.eval(kDiagQuadraticMu), expected) < 1e-12);

  const MatrixPolynomial linear({Matrix::Ones(2, 2), Matrix::Identity(2, 2)});
  const MatrixPolynomial dlinear = linear.derivative();
  CHECK(dlinear.degree() == 0);
  CHECK(max_abs_diff(dlinear.coeff(0), Matrix::Identity(2, 2)) == 0.0);

  const MatrixPolynomial monomial(
      {Matrix::Zero(2, 2), Matrix::Zero(2, 2), Matrix::Identity(2, 2)});
  const MatrixPolynomial dmono = monomial.derivative();
  CHECK(max_abs_diff(dmono.coeff(1), 2.0 * Matrix::Identity(2, 2)) == 0.0);

  CHECK_THROWS_AS(MatrixPolynomial({Matrix::Identity(2, 2)}).derivative(),
                  PreconditionError);
}

TEST_CASE("spectrum of the reference problem") {
  const std::vector<Complex> eigs = diag_quadratic().spectrum();
  REQUIRE(eigs.size() == 6);
  CHECK(multiset_distance(eigs, {Complex(1), Complex(2), Complex(0), Complex(1),
                                 Complex(-1), Complex(-2)}) < 1e-8);
}

TEST_CASE("spectrum of a linear diagonal pencil is the diagonal") {
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << Complex(1.5, 0.3), Complex(-2), Complex(0.25);
  const MatrixPolynomial p({-d, Matrix::Identity(3, 3)});
  CHECK(multiset_distance(p.spectrum(), {d(0, 0), d(1, 1), d(2, 2)}) < 1e-12);
}

TEST_CASE("spectrum of the reference perturbed polynomial") {
  // Coefficients are stored to four decimals, which is enough for the four
  // well-separated eigenvalues; the nearly-double pair at -4 is extremely
  // sensitive to coefficient rounding and only stays in a wide disk.
  const MatrixPolynomial q(ref_perturbed_coeffs());
  std::vector<Complex> eigs = q.spectrum();
  REQUIRE(eigs.size() == 6);
  int near = 0;
  std::vector<Complex> far;
  for (Complex e : eigs) {
    if (std::abs(e - Complex(-4)) < 0.025)
      ++near;
    else
      far.push_back(e);
  }
  CHECK(near == 2);
  CHECK(multiset_distance(far, {Complex(1), Complex(2), Complex(4.1982),
                                Complex(-0.5140)}) < 5e-3);
}

TEST_CASE("spectrum values make the polynomial singular") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixPolynomial p = random_dense(4, 3, rng);
    const double scale = p.max_coeff_norm();
    for (Complex z : p.spectrum()) {
      const double bound = 1e-8 * scale * std::pow(std::max(1.0, std::abs(z)),
                                                   p.degree());
      CHECK(smallest_singular_value(p.eval(z)) <= bound);
    }
  }
}

TEST_CASE("weak normality of the reference problem") {
  const WeakNormalityWitness w = is_weakly_normal(diag_quadratic());
  REQUIRE(w.is_weakly_normal);
  REQUIRE(w.diagonalizer.has_value());
  CHECK(w.residual < 1e-12);
  CHECK(unitarity_residual(*w.diagonalizer) < 1e-12);
}

TEST_CASE("a non-normal coefficient breaks weak normality") {
  Matrix a0 = Matrix::Zero(3, 3), a1 = Matrix::Zero(3, 3), a2 = Matrix::Identity(3, 3);
  a0.diagonal() << Complex(2), Complex(0), Complex(2);
  a1 << -3, 5, 0, 0, -1, 0, 0, 0, 3;  // upper triangular, not normal
  CHECK_FALSE(is_weakly_normal(MatrixPolynomial({a0, a1, a2})).is_weakly_normal);
}

TEST_CASE("conjugated diagonal families are weakly normal") {
  std::mt19937_64 rng(31);
  const WeaklyNormalFixture fx = random_weakly_normal(4, 2, rng);
  const WeakNormalityWitness w = is_weakly_normal(fx.p);
  REQUIRE(w.is_weakly_normal);
  CHECK(w.residual < 1e-10);

  const Matrix& u = *w.diagonalizer;
  for (const Matrix& a : fx.p.coeffs()) {
    Matrix t = u.adjoint() * a * u;
    t.diagonal().setZero();
    CHECK(t.norm() < 1e-10 * std::max(1.0, a.norm()));
  }
}

TEST_CASE("weak normality is invariant under common unitary conjugation") {
  std::mt19937_64 rng(37);
  const MatrixPolynomial p = diag_quadratic();
  const Matrix q = random_unitary(3, rng);
  CHECK(is_weakly_normal(conjugate(p, q)).is_weakly_normal);

  const MatrixPolynomial dense = random_dense(3, 2, rng);
  const Matrix q2 = random_unitary(3, rng);
  CHECK(is_weakly_normal(dense).is_weakly_normal ==
        is_weakly_normal(conjugate(dense, q2)).is_weakly_normal);
}

TEST_CASE("weakly normal implies P(mu) normal at every point") {
  std::mt19937_64 rng(41);
  const WeaklyNormalFixture fx = random_weakly_normal(5, 3, rng);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix at = fx.p.eval(random_complex(rng, 1.2));
    const double scale = at.norm() * at.norm();
    CHECK((at * at.adjoint() - at.adjoint() * at).norm() <= 1e-10 * scale);
  }
}

TEST_CASE("simultaneous diagonalizer on the diagonal family") {
  const MatrixPolynomial p = diag_quadratic();
  const Matrix u = simultaneous_diagonalizer(p);
  CHECK(unitarity_residual(u) < 1e-12);
  for (const Matrix& a : p.coeffs()) {
    Matrix t = u.adjoint() * a * u;
    t.diagonal().setZero();
    CHECK(t.norm() < 1e-12 * std::max(1.0, a.norm()));
  }
}

TEST_CASE("simultaneous diagonalizer rejects non-commuting coefficients") {
  Matrix a0(2, 2), a1(2, 2);
  a0 << 1, 1, 0, 1;  // not normal
  a1 = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(simultaneous_diagonalizer(MatrixPolynomial({a0, a1})),
                  ConsistencyError);
}

TEST_CASE("simultaneous diagonalizer recovers a conjugated family") {
  std::mt19937_64 rng(43);
  const WeaklyNormalFixture fx = random_weakly_normal(5, 2, rng);
  const Matrix u = simultaneous_diagonalizer(fx.p);
  CHECK(unitarity_residual(u) < 1e-12);
  for (const Matrix& a : fx.p.coeffs()) {
    Matrix t = u.adjoint() * a * u;
    t.diagonal().setZero();
    CHECK(t.norm() < 1e-10 * a.norm());
  }
}
