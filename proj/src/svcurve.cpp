#include "multeig/svcurve.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace multeig {

namespace {

CurvePoint eval_curve_point(const Matrix& p_mu, const Matrix& dp_mu, double gamma) {
  const RealVector s = singular_values(coupling_matrix(p_mu, dp_mu, gamma));
  const Eigen::Index dim = s.size();  // 2n, n >= 2 checked by callers
  return {gamma, s(dim - 2), s(dim - 3)};
}

struct PointValue {
  double x = 0.0;
  double value = 0.0;
};

// Derivative-free maximization; the curve has a kink at the crossing, so
// golden-section is used instead of anything gradient-based. Returns the best
// point actually evaluated.
template <typename F>
PointValue golden_max(F&& f, double a, double b, double tol, int max_iters = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  PointValue best = fc >= fd ? PointValue{c, fc} : PointValue{d, fd};
  for (int it = 0; it < max_iters && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      if (fc > best.value) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      if (fd > best.value) best = {d, fd};
    }
  }
  return best;
}

// d/dgamma of the target singular value where it is simple:
// s'(gamma) = Re(u^* dF/dgamma v) = Re(u_2^* P'(mu) v_1) for the singular
// pair at sorted position 2n-1. Across a maximum (smooth or kinked) this
// changes sign, which localizes the maximizer to machine precision where
// the value itself is flat to sqrt(eps).
double curve_slope(const Matrix& p_mu, const Matrix& dp_mu, double gamma) {
  Eigen::JacobiSVD<Matrix> svd(coupling_matrix(p_mu, dp_mu, gamma),
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::Index dim = svd.singularValues().size();
  const Eigen::Index n = dim / 2;
  const Vector u = svd.matrixU().col(dim - 2);
  const Vector v = svd.matrixV().col(dim - 2);
  return (u.tail(n).adjoint() * dp_mu * v.head(n))(0).real();
}

}  // namespace

Matrix coupling_matrix(const Matrix& p_mu, const Matrix& dp_mu, double gamma) {
  const Eigen::Index n = p_mu.rows();
  Matrix f = Matrix::Zero(2 * n, 2 * n);
  f.topLeftCorner(n, n) = p_mu;
  f.bottomRightCorner(n, n) = p_mu;
  f.bottomLeftCorner(n, n) = gamma * dp_mu;
  return f;
}

Matrix coupling_matrix(const MatrixPolynomial& p, Complex mu, double gamma) {
  return coupling_matrix(p.eval(mu), p.derivative().eval(mu), gamma);
}

RealVector singular_values_at(const MatrixPolynomial& p, Complex mu, double gamma) {
  return singular_values(coupling_matrix(p, mu, gamma));
}

std::vector<CurvePoint> scan_curve_serial(const Matrix& p_mu, const Matrix& dp_mu,
                                          const std::vector<double>& grid) {
  std::vector<CurvePoint> out(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) out[i] = eval_curve_point(p_mu, dp_mu, grid[i]);
  return out;
}

std::vector<CurvePoint> scan_curve_parallel(const Matrix& p_mu, const Matrix& dp_mu,
                                            const std::vector<double>& grid) {
  std::vector<CurvePoint> out(grid.size());
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (std::ptrdiff_t i = 0; i < count; ++i)
    out[static_cast<size_t>(i)] =
        eval_curve_point(p_mu, dp_mu, grid[static_cast<size_t>(i)]);
  return out;
}

std::vector<CurvePoint> scan_curve(const Matrix& p_mu, const Matrix& dp_mu,
                                   const std::vector<double>& grid, bool parallel) {
  return parallel ? scan_curve_parallel(p_mu, dp_mu, grid)
                  : scan_curve_serial(p_mu, dp_mu, grid);
}

std::vector<CurvePoint> curve_samples(const MatrixPolynomial& p, Complex mu,
                                      const std::vector<double>& grid, bool parallel) {
  if (p.size() < 2)
    throw PreconditionError("curve evaluation requires matrix size n >= 2");
  if (grid.empty()) throw PreconditionError("curve grid must be nonempty");
  for (double g : grid)
    if (!(g >= 0.0)) throw PreconditionError("curve grid values must be nonnegative");
  return scan_curve(p.eval(mu), p.derivative().eval(mu), grid, parallel);
}

CurveMaximum maximize_curve(const MatrixPolynomial& p, Complex mu,
                            const CurveSearchOptions& opts) {
  const int n = p.size();
  if (n < 2) throw PreconditionError("curve maximization requires matrix size n >= 2");
  if (p.degree() < 1)
    throw PreconditionError("curve maximization requires degree >= 1");
  if (opts.grid_points < 25)
    throw PreconditionError("curve search needs at least 25 grid points");

  const Matrix p_mu = p.eval(mu);
  const Matrix dp_mu = p.derivative().eval(mu);
  const RealVector ds = singular_values(dp_mu);
  if (!(ds(0) > 0.0) || ds(ds.size() - 1) <= kSingularRelTol * ds(0))
    throw PreconditionError("derivative singular at mu");

  double gamma_limit = opts.gamma_max_factor * spectral_norm(p_mu) / ds(ds.size() - 1);
  if (!(gamma_limit > 0.0)) gamma_limit = 1.0;

  // Expand the window until the curve tail has been nonincreasing for 20
  // consecutive samples; the target value decays to 0 for large gamma, so
  // this terminates for any reasonable starting window.
  std::vector<double> grid;
  std::vector<CurvePoint> pts;
  bool expanded_out = false;
  for (int doubling = 0;; ++doubling) {
    grid = linspace(0.0, gamma_limit, opts.grid_points);
    pts = scan_curve(p_mu, dp_mu, grid, opts.parallel);
    const double slack = 1e-13 * std::max(1.0, pts.front().s_2n_minus_1);
    int run = 0;
    for (size_t i = pts.size() - 1; i > 0 && run < 20; --i) {
      if (pts[i].s_2n_minus_1 <= pts[i - 1].s_2n_minus_1 + slack)
        ++run;
      else
        break;
    }
    if (run >= 20) break;
    if (doubling >= opts.max_doublings) {
      expanded_out = true;
      break;
    }
    gamma_limit *= 2.0;
  }

  const auto f = [&](double g) { return eval_curve_point(p_mu, dp_mu, g).s_2n_minus_1; };

  // Refine around every grid-local maximum; unimodality is not guaranteed in
  // general, so all candidates compete.
  PointValue best{grid[0], pts[0].s_2n_minus_1};
  const size_t last = pts.size() - 1;
  for (size_t i = 0; i <= last; ++i) {
    const bool left_ok = i == 0 || pts[i].s_2n_minus_1 >= pts[i - 1].s_2n_minus_1;
    const bool right_ok = i == last || pts[i].s_2n_minus_1 >= pts[i + 1].s_2n_minus_1;
    if (!left_ok || !right_ok) continue;
    const double lo = grid[i == 0 ? 0 : i - 1];
    const double hi = grid[i == last ? last : i + 1];
    if (hi <= lo) continue;
    PointValue refined = golden_max(f, lo, hi, 1e-10 * std::max(1.0, hi));

    // Value comparisons cannot see past the flat sqrt(eps) window around a
    // smooth maximum; polish with a sign bisection of the analytic slope in
    // a window that safely contains the maximizer.
    const double w = 1e-6 * std::max(1.0, refined.x);
    double a = std::max(0.0, refined.x - w), b = refined.x + w;
    if (curve_slope(p_mu, dp_mu, a) > 0.0 && curve_slope(p_mu, dp_mu, b) < 0.0) {
      for (int it = 0; it < 80 && (b - a) > 1e-15 * std::max(1.0, b); ++it) {
        const double mid = 0.5 * (a + b);
        (curve_slope(p_mu, dp_mu, mid) > 0.0 ? a : b) = mid;
      }
      const double x = 0.5 * (a + b);
      refined = {x, std::max(refined.value, f(x))};
    }
    if (refined.value > best.value) best = refined;
  }

  // Maximum at the left endpoint: the downstream construction needs
  // gamma_star > 0, so this is reported as a degenerate case.
  const bool max_at_zero = pts[0].s_2n_minus_1 >= best.value * (1.0 - 1e-12) ||
                           best.x <= 1e-9 * gamma_limit;

  CurveMaximum result;
  result.gamma_star = max_at_zero ? 0.0 : best.x;
  result.max_at_zero = max_at_zero;
  result.gamma_limit = gamma_limit;
  result.boundary_hit =
      !max_at_zero && (expanded_out || best.x >= gamma_limit * (1.0 - 1e-6));

  Eigen::JacobiSVD<Matrix> svd(coupling_matrix(p_mu, dp_mu, result.gamma_star),
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector s = svd.singularValues();
  const Eigen::Index dim = s.size();
  result.s_star = s(dim - 2);

  if (result.s_star <= 1e-10 * p.max_coeff_norm())
    throw PreconditionError(
        "mu is already a (near) multiple eigenvalue: the distance bound is 0");

  const double cluster_tol = opts.tol_mult * std::max(1.0, result.s_star);
  Eigen::Index lo = dim - 2, hi = dim - 2;
  while (lo > 0 && std::abs(s(lo - 1) - result.s_star) <= cluster_tol) --lo;
  while (hi + 1 < dim && std::abs(s(hi + 1) - result.s_star) <= cluster_tol) ++hi;
  const int r = static_cast<int>(hi - lo + 1);

  result.multiplicity = r;
  result.left_basis = svd.matrixU().middleCols(lo, r);
  result.right_basis = svd.matrixV().middleCols(lo, r);
  for (int j = 0; j < r; ++j)
    phase_align_pair(result.left_basis.col(j), result.right_basis.col(j));
  return result;
}

}  // namespace multeig
