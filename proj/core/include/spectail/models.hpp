#pragma once

#include <cstddef>
#include <vector>

#include "spectail/dense_eigen.hpp"
#include "spectail/laws.hpp"
#include "spectail/random.hpp"
#include "spectail/tridiagonal.hpp"

namespace spectail {

enum class ModelKind { H, G, GBeta };

// A sampled-operator description: which ensemble, its size, the disorder
// decay exponent alpha, the potential law, and the stream that will be
// consumed when the operator is built. Rebuilding from an equal spec gives
// bit-identical matrices.
struct ModelSpec {
  ModelKind kind = ModelKind::H;
  std::size_t N = 0;
  double alpha = 0.0;
  PotentialLaw law;
  double beta_ens = 1.0;  // GBeta only
  RandomStream seed;
};

// Free tridiagonal Laplacian: zero diagonal, unit offdiagonal. Spectrum
// {2 cos(j pi / (N+1))}.
TridiagonalMatrix free_laplacian(std::size_t N);

// Deterministic edge operator: zero diagonal, offdiag_k = sqrt((N-k)/N) for
// k = 1..N-1. Empirical spectrum converges to the semicircle on [-2, 2].
TridiagonalMatrix build_G_inf(std::size_t N);

// Top eigenvalue of build_G_inf(N) at tolerance 1e-12, cached per N.
double g_inf_top_eigenvalue(std::size_t N);

// free_laplacian(N) plus diag(N^-alpha a(i)); potentials drawn in index
// order. assemble_H takes the potentials explicitly (used by the coupling
// check, which needs the draws and the matrix together).
TridiagonalMatrix build_H(const ModelSpec& spec);
TridiagonalMatrix assemble_H(std::size_t N, double alpha,
                             const std::vector<double>& potentials);

// Random tridiagonal ensemble: diag_i ~ Normal(0, 2), offdiag_k ~
// chi_{(N-k) * beta_ens}, everything divided by sqrt(N * beta_ens).
// Draw order: all diagonal entries first, then offdiagonals k = 1..N-1.
TridiagonalMatrix build_G_beta(std::size_t N, double beta_ens, RandomStream& stream);

// Haar-orthogonal matrix: iid Gaussian fill (row-major), Householder QR,
// then each column is flipped so the corresponding R diagonal is positive.
DenseSymmetric sample_haar_orthogonal(std::size_t N, RandomStream& stream);

// r Haar-orthonormal columns (the first r columns of a Haar matrix in law):
// N x r Gaussian, thin QR with the same sign correction. Returned column-major
// (result[c] is column c).
std::vector<std::vector<double>> sample_haar_columns(std::size_t N, std::size_t r,
                                                     RandomStream& stream);

// build_G_inf(N) + U diag(spike_values) U^T with U fresh Haar from the
// stream; spike_values are already in spike units (one per site). Result is
// exactly symmetric.
DenseSymmetric assemble_G_dense(std::size_t N, const std::vector<double>& spike_values,
                                RandomStream& stream);

// assemble_G_dense with spike_values = N^-alpha a(i) drawn from spec.law.
// Draw order: potentials first, then U.
DenseSymmetric build_G_dense(const ModelSpec& spec);

// Eigenvalues of build_G_inf(N) + V diag(spikes) V^T detached above the free
// edge (those exceeding g_inf_top_eigenvalue(N) + 1e-6), descending, at most
// max_roots of them. Each is located by bisection on the count of eigenvalues
// above lambda (Sylvester inertia of V^T (lambda I - G)^-1 V - D^-1), which
// stays monotone when several spikes are supercritical. Zero spikes are
// dropped.
std::vector<double> spiked_G_outliers(std::size_t N, const std::vector<double>& spikes,
                                      const std::vector<std::vector<double>>& columns,
                                      std::size_t max_roots, double tol = 1e-9);

// Largest eigenvalue: the first outlier, or g_inf_top_eigenvalue(N) when
// nothing detaches.
double spiked_G_top_from_columns(std::size_t N, const std::vector<double>& spikes,
                                 const std::vector<std::vector<double>>& columns,
                                 double tol = 1e-9);

// Same, drawing the columns from the stream. spikes.size() <= 64.
double spiked_G_top_eigenvalue(std::size_t N, const std::vector<double>& spikes,
                               RandomStream& stream, double tol = 1e-9);

}  // namespace spectail
