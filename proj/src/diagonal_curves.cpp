#include "multeig/diagonal_curves.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace multeig {

std::pair<double, double> block_singular_values(Complex p_entry, Complex dp_entry,
                                                double gamma) {
  const double z2 = std::norm(p_entry);
  const double t = gamma * std::abs(dp_entry);
  const double inner = std::sqrt(z2 + 0.25 * t * t);
  const double s1 = std::sqrt(z2 + 0.5 * t * t + t * inner);
  const double s2 = std::sqrt(std::max(0.0, z2 + 0.5 * t * t - t * inner));
  return {s1, s2};
}

DiagonalPointData diagonal_point_data(const MatrixPolynomial& p, Complex mu,
                                      const Matrix& diagonalizer) {
  const Matrix pd = diagonalizer.adjoint() * p.eval(mu) * diagonalizer;
  const Matrix dpd = diagonalizer.adjoint() * p.derivative().eval(mu) * diagonalizer;
  const int n = p.size();

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(pd(a, a)) > std::abs(pd(b, b));
  });

  DiagonalPointData data;
  data.p_diag.resize(n);
  data.dp_diag.resize(n);
  double max_dp = 0.0;
  for (int i = 0; i < n; ++i) {
    data.p_diag(i) = pd(order[static_cast<size_t>(i)], order[static_cast<size_t>(i)]);
    data.dp_diag(i) = dpd(order[static_cast<size_t>(i)], order[static_cast<size_t>(i)]);
    max_dp = std::max(max_dp, std::abs(data.dp_diag(i)));
  }
  for (int i = 0; i < n; ++i)
    if (std::abs(data.dp_diag(i)) <= kSingularRelTol * max_dp || max_dp == 0.0)
      throw PreconditionError("derivative singular at mu");
  return data;
}

ClosedFormMaximum closed_form_maximum(const DiagonalPointData& data) {
  const int n = static_cast<int>(data.p_diag.size());
  if (n < 2)
    throw PreconditionError("closed-form curve maximum requires matrix size n >= 2");

  const double z_last = std::abs(data.p_diag(n - 1));
  const double z_prev = std::abs(data.p_diag(n - 2));
  if (z_prev - z_last <= 1e-10 * std::max(1.0, z_prev))
    return {0.0, z_last, 0, true};

  // The increasing branch of the last block meets each decreasing branch
  // s_{k,2} exactly once; the maximizer is the smallest such root.
  double best_gamma = 0.0;
  int best_k = 0;
  for (int k = 0; k + 1 < n; ++k) {
    const auto diff = [&](double g) {
      return block_singular_values(data.p_diag(n - 1), data.dp_diag(n - 1), g).first -
             block_singular_values(data.p_diag(k), data.dp_diag(k), g).second;
    };
    double hi = 1.0;
    int guard = 0;
    while (diff(hi) <= 0.0 && guard++ < 200) hi *= 2.0;
    if (guard >= 200) continue;  // would need an absurd gamma; skip
    double lo = 0.0;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      (diff(mid) <= 0.0 ? lo : hi) = mid;
    }
    const double root = 0.5 * (lo + hi);
    if (best_k == 0 || root < best_gamma) {
      best_gamma = root;
      best_k = k + 1;  // 1-based; ties keep the smallest index
    }
  }
  if (best_k == 0)
    throw ConsistencyError("no crossing found for the closed-form curve maximum");

  const double s_star =
      block_singular_values(data.p_diag(n - 1), data.dp_diag(n - 1), best_gamma).first;
  return {best_gamma, s_star, best_k, false};
}

}  // namespace multeig
