#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace spectail {

// Symmetric tridiagonal matrix: diag has N entries, offdiag N-1.
struct TridiagonalMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;

  TridiagonalMatrix() = default;
  TridiagonalMatrix(std::vector<double> d, std::vector<double> e);

  std::size_t size() const { return diag.size(); }
};

// Number of eigenvalues strictly below x, by the Sturm pivot recurrence
// q_i = d_i - x - e_{i-1}^2 / q_{i-1}. Pivots with |q| < 1e-300 are replaced
// by -1e-300 (counted as negative), which makes the count total for every x.
std::size_t sturm_count(const TridiagonalMatrix& T, double x);
std::size_t sturm_count(const double* diag, const double* offdiag, std::size_t n,
                        double x);

// Inclusive interval containing all eigenvalues.
std::pair<double, double> gershgorin_bounds(const TridiagonalMatrix& T);

// k largest eigenvalues, descending, each located by Sturm bisection inside
// the Gershgorin bounds. The interval is narrowed until its width is below
// tol * max(1, spectral radius bound).
std::vector<double> top_k_eigenvalues(const TridiagonalMatrix& T, std::size_t k,
                                      double tol = 1e-10);

// Solves (shift * I - T) y = rhs by unpivoted LU. Intended for shift above
// the top eigenvalue, where the system is positive definite; throws
// std::runtime_error if a pivot falls below 1e-14 * (|shift| + ||T||_inf).
std::vector<double> tridiagonal_solve(const TridiagonalMatrix& T, double shift,
                                      const std::vector<double>& rhs);

}  // namespace spectail
