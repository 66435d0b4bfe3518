#pragma once

#include <cstddef>

namespace spectail {

// Spectral point lambda > 2 outside the free spectrum [-2, 2], carrying
// lambda_star = arccosh(lambda / 2) so sqrt(lambda^2 - 4) = 2 sinh(lambda_star).
struct SpectralParameter {
  double lambda;
  double lambda_star;

  explicit SpectralParameter(double lam);
};

// Entry (i, j), 0-based, of (lambda I - L)^-1 where L is the N x N free
// tridiagonal Laplacian (zero diagonal, unit offdiagonal). Closed form
//   [cosh((N+1-|i-j|) t) - cosh((N+1-i-j) t)] / (2 sinh t sinh((N+1) t))
// in 1-based indices with t = lambda_star, evaluated in exponential-difference
// form so nothing overflows for any N.
double laplacian_resolvent_entry(std::size_t N, const SpectralParameter& z,
                                 std::size_t i, std::size_t j);

}  // namespace spectail
