#pragma once

#include <cstddef>
#include <vector>

#include "spectail/tridiagonal.hpp"

namespace spectail {

// Dense symmetric matrix, row-major. Only used for reference/oracle paths and
// the dense G construction; the simulation hot paths stay tridiagonal.
struct DenseSymmetric {
  std::size_t n = 0;
  std::vector<double> a;  // n * n, row-major

  DenseSymmetric() = default;
  explicit DenseSymmetric(std::size_t size) : n(size), a(size * size, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

// Full spectrum (ascending) by implicit-shift QL on the tridiagonal data.
// This is the brute-force reference route, algorithmically independent of the
// Sturm bisection path. Rejects N above cap.
std::vector<double> dense_eigenvalues(const TridiagonalMatrix& T,
                                      std::size_t cap = 2000);

// Householder reduction to tridiagonal form followed by QL (ascending).
std::vector<double> dense_eigenvalues(const DenseSymmetric& A,
                                      std::size_t cap = 2000);

// Reduction used by the dense path; exposed for reuse and testing.
TridiagonalMatrix householder_tridiagonalize(const DenseSymmetric& A);

}  // namespace spectail
