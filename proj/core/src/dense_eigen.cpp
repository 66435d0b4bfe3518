#include "spectail/dense_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spectail {

namespace {

// Implicit-shift QL on (d, e) in place; e[i] couples d[i] and d[i+1].
// Eigenvalues only, classic EISPACK tql1 structure.
void ql_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = d.size();
  if (n <= 1) return;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  e.resize(n, 0.0);
  e[n - 1] = 0.0;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m != l) {
        if (iter++ == 50)
          throw std::runtime_error("dense_eigenvalues: QL failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t ii = m; ii > l; --ii) {
          const std::size_t i = ii - 1;
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
}

}  // namespace

std::vector<double> dense_eigenvalues(const TridiagonalMatrix& T, std::size_t cap) {
  if (T.size() > cap)
    throw std::invalid_argument("dense_eigenvalues: size exceeds cap");
  std::vector<double> d = T.diag;
  std::vector<double> e = T.offdiag;
  e.resize(d.size(), 0.0);
  ql_eigenvalues(d, e);
  return d;
}

TridiagonalMatrix householder_tridiagonalize(const DenseSymmetric& A0) {
  const std::size_t n = A0.n;
  if (n == 0) throw std::invalid_argument("householder_tridiagonalize: empty matrix");
  if (A0.a.size() != n * n)
    throw std::invalid_argument("householder_tridiagonalize: bad storage size");
  if (n == 1) return TridiagonalMatrix({A0.a[0]}, {});

  std::vector<double> a = A0.a;  // working copy, full storage
  std::vector<double> d(n), e(n - 1);
  std::vector<double> u(n), p(n), q(n);

  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;  // active block is [0..l]^2
    double* row_i = a.data() + i * n;

    double scale = 0.0;
    for (std::size_t k = 0; k <= l; ++k) scale += std::abs(row_i[k]);
    if (scale == 0.0 || l == 0) {
      e[l] = row_i[l];
      continue;
    }

    double h = 0.0;
    for (std::size_t k = 0; k <= l; ++k) {
      u[k] = row_i[k] / scale;
      h += u[k] * u[k];
    }
    const double f = u[l];
    const double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
    e[l] = scale * g;
    h -= f * g;  // = |u|^2 / 2 after the update below
    u[l] = f - g;

    // p = A u / h restricted to the active block
    for (std::size_t j = 0; j <= l; ++j) {
      const double* row_j = a.data() + j * n;
      double sum = 0.0;
      for (std::size_t k = 0; k <= l; ++k) sum += row_j[k] * u[k];
      p[j] = sum / h;
    }
    double K = 0.0;
    for (std::size_t k = 0; k <= l; ++k) K += u[k] * p[k];
    K /= 2.0 * h;
    for (std::size_t k = 0; k <= l; ++k) q[k] = p[k] - K * u[k];

    // A <- A - q u^T - u q^T on the active block
    for (std::size_t j = 0; j <= l; ++j) {
      double* row_j = a.data() + j * n;
      const double qj = q[j];
      const double uj = u[j];
      for (std::size_t k = 0; k <= l; ++k) row_j[k] -= qj * u[k] + uj * q[k];
    }
  }

  for (std::size_t i = 0; i < n; ++i) d[i] = a[i * n + i];
  return TridiagonalMatrix(std::move(d), std::move(e));
}

std::vector<double> dense_eigenvalues(const DenseSymmetric& A, std::size_t cap) {
  if (A.n > cap) throw std::invalid_argument("dense_eigenvalues: size exceeds cap");
  TridiagonalMatrix T = householder_tridiagonalize(A);
  return dense_eigenvalues(T, cap);
}

}  // namespace spectail
