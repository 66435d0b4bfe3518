#include "spectail/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spectail {

TridiagonalMatrix::TridiagonalMatrix(std::vector<double> d, std::vector<double> e)
    : diag(std::move(d)), offdiag(std::move(e)) {
  if (diag.empty()) throw std::invalid_argument("tridiagonal: empty diagonal");
  if (offdiag.size() + 1 != diag.size())
    throw std::invalid_argument("tridiagonal: offdiag must have N-1 entries");
}

std::size_t sturm_count(const double* diag, const double* offdiag, std::size_t n,
                        double x) {
  constexpr double kPivotFloor = 1e-300;
  std::size_t count = 0;
  double q = diag[0] - x;
  if (std::abs(q) < kPivotFloor) q = -kPivotFloor;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    q = diag[i] - x - offdiag[i - 1] * offdiag[i - 1] / q;
    if (std::abs(q) < kPivotFloor) q = -kPivotFloor;
    if (q < 0.0) ++count;
  }
  return count;
}

std::size_t sturm_count(const TridiagonalMatrix& T, double x) {
  return sturm_count(T.diag.data(), T.offdiag.data(), T.size(), x);
}

std::pair<double, double> gershgorin_bounds(const TridiagonalMatrix& T) {
  const std::size_t n = T.size();
  double lo = T.diag[0];
  double hi = T.diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(T.offdiag[i - 1]);
    if (i + 1 < n) radius += std::abs(T.offdiag[i]);
    lo = std::min(lo, T.diag[i] - radius);
    hi = std::max(hi, T.diag[i] + radius);
  }
  return {lo, hi};
}

std::vector<double> top_k_eigenvalues(const TridiagonalMatrix& T, std::size_t k,
                                      double tol) {
  const std::size_t n = T.size();
  if (k == 0 || k > n)
    throw std::invalid_argument("top_k_eigenvalues: k must be in [1, N]");
  if (!(tol > 0.0)) throw std::invalid_argument("top_k_eigenvalues: tol must be positive");

  const auto [glo, ghi] = gershgorin_bounds(T);
  const double radius = std::max(std::abs(glo), std::abs(ghi));
  const double eps = tol * std::max(1.0, radius);

  std::vector<double> out;
  out.reserve(k);
  const double* d = T.diag.data();
  const double* e = T.offdiag.data();
  for (std::size_t j = 1; j <= k; ++j) {
    // j-th largest = m-th smallest with m = n - j + 1:
    // maintain count(lo) <= m-1 < m <= count(hi).
    const std::size_t m = n - j + 1;
    double lo = glo - eps;
    double hi = ghi + eps;
    while (hi - lo > eps) {
      const double mid = 0.5 * (lo + hi);
      if (sturm_count(d, e, n, mid) >= m)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

std::vector<double> tridiagonal_solve(const TridiagonalMatrix& T, double shift,
                                      const std::vector<double>& rhs) {
  const std::size_t n = T.size();
  if (rhs.size() != n) throw std::invalid_argument("tridiagonal_solve: rhs size mismatch");

  double norm_inf = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(T.diag[i]);
    if (i > 0) row += std::abs(T.offdiag[i - 1]);
    if (i + 1 < n) row += std::abs(T.offdiag[i]);
    norm_inf = std::max(norm_inf, row);
  }
  const double pivot_min = 1e-14 * (std::abs(shift) + norm_inf);

  // Thomas algorithm on (shift I - T): diag c_i = shift - d_i, offdiag -e_i.
  std::vector<double> c(n), y(n);
  c[0] = shift - T.diag[0];
  if (std::abs(c[0]) <= pivot_min)
    throw std::runtime_error("tridiagonal_solve: near-singular system");
  y[0] = rhs[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double w = -T.offdiag[i - 1] / c[i - 1];
    c[i] = shift - T.diag[i] - w * (-T.offdiag[i - 1]);
    if (std::abs(c[i]) <= pivot_min)
      throw std::runtime_error("tridiagonal_solve: near-singular system");
    y[i] = rhs[i] - w * y[i - 1];
  }
  y[n - 1] /= c[n - 1];
  for (std::size_t i = n - 1; i-- > 0;)
    y[i] = (y[i] - (-T.offdiag[i]) * y[i + 1]) / c[i];
  return y;
}

}  // namespace spectail
