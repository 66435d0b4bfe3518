#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "spectail/edge_theory.hpp"
#include "spectail/models.hpp"

namespace spectail {

// Monte Carlo estimate of P(lambda_1 > lambda) with its regime comparator.
struct TailReport {
  double lambda = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;   // Wilson 95%
  double ci_high = 1.0;
  double theory = 0.0;   // regime comparator; NaN where undefined
  RegimeLabel regime;
};

// Spike-unit truncation threshold of the G low-rank path: 1e-3 / N. Dropping
// every spike below it moves lambda_1 by at most N * threshold = 1e-3
// (eigenvalue perturbation bound, one rank-one term per spike).
double g_truncation_threshold(std::size_t N);

// Top eigenvalue of one draw of the model, consuming `stream`:
//   H, GBeta: Sturm bisection on the tridiagonal matrix;
//   G: potentials below g_truncation_threshold are dropped; up to 64 kept
//      spikes go through the low-rank secular solver, more fall back to the
//      dense path (N <= 2000 only). A draw with no kept spike returns the
//      free edge g_inf_top_eigenvalue(N), the subcritical branch value.
double sample_top_eigenvalue(const ModelSpec& spec, RandomStream& stream);

// Theory side of the tail at this lambda: the finite-N max-statistic proxy in
// the Weibull regime, C N^(1 - alpha beta) times the subcritical prefactor in
// the sub-critical regime (the stated limit carries no C; both conventions
// are one multiplication apart), the critical limit CDF's survival at the
// critical point, and the Frechet survival of the scaled variable in the
// randomness-dominating regime. NaN for lambda <= 2 or for ModelGBeta.
double tail_theory(const ModelSpec& spec, double lambda, const RegimeLabel& regime);

// Per-trial stream_id = trial index, so any worker count gives bit-identical
// reports. Solver failures are rethrown with the trial index attached.
TailReport mc_tail(const ModelSpec& spec, double lambda, std::uint64_t trials,
                   unsigned workers = 1);

// One transformed top eigenvalue per trial, in trial order:
// value = N^scale_power * lambda_1 (scale_power 0 = identity).
std::vector<double> mc_distribution(const ModelSpec& spec, std::uint64_t trials,
                                    double scale_power = 0.0, unsigned workers = 1);

struct PointProcessSample {
  std::vector<double> points;     // strictly descending, truncated at threshold
  std::vector<double> preimages;  // critical H only: sqrt(point^2 - 4)
  double scaling = 0.0;           // the N-power applied to raw eigenvalues
  std::size_t N = 0;
};

// One draw of the top of the spectrum, scaled per regime (N^(alpha - 1/beta)
// in the randomness-dominating regime, unscaled otherwise) and truncated
// strictly below `threshold`. H and GBeta report the top_d largest
// eigenvalues; G reports its detached outliers (at most top_d), which above
// any threshold > 2 is the same set. In the critical H regime the preimages
// sqrt(v^2 - 4) (0 for v <= 2) are attached for intensity testing.
PointProcessSample extract_point_process(const ModelSpec& spec, std::size_t top_d,
                                         double threshold);

// One extraction per trial (per-trial stream_id = trial index), in trial
// order; same reproducibility contract as mc_tail.
std::vector<PointProcessSample> mc_point_process(const ModelSpec& spec,
                                                 std::uint64_t trials,
                                                 std::size_t top_d, double threshold,
                                                 unsigned workers = 1);

struct PoissonIntervalFit {
  double c = 0.0;
  double d = 0.0;
  double expected = 0.0;  // intensity integral over (c, d]
  double mean = 0.0;      // empirical mean count
  double variance = 0.0;  // unbiased empirical variance
  double chi2_p = 1.0;    // GoF p-value of counts vs Poisson(expected)
};

// Counts points (preimages where present) in each interval (c, d] per sample
// and tests the counts against the Poisson limit. Intervals must be disjoint
// and inside (0, inf]; d may be inf. Chi-square bins are merged left to right
// until each holds expected mass >= 5; fewer than two bins gives p = 1.
std::vector<PoissonIntervalFit> poisson_fit_test(
    const std::vector<PointProcessSample>& samples,
    const std::vector<std::pair<double, double>>& intervals,
    const RegimeLabel& regime);

enum class ReferenceKind { Arcsine, Semicircle, PointMass };

// Reference measure on [-2, 2] for Wasserstein comparisons. PointMass is the
// degenerate quantile hook (Q identically `value`) used by tests.
struct ReferenceLaw {
  ReferenceKind kind = ReferenceKind::Arcsine;
  double value = 0.0;
};

// 2-Wasserstein distance between the empirical measure of the sorted sample
// and the reference: sqrt of the sum over cells ((i-1)/n, i/n) of the
// 16-point Gauss-Legendre integral of (sample_i - Q_ref(p))^2. Rejects
// unsorted input.
double wasserstein2(const std::vector<double>& sorted_sample, const ReferenceLaw& ref);

struct CouplingReport {
  double d2_spectral = 0.0;  // exact W2 between the two empirical spectra
  double hw_bound = 0.0;     // N^(-alpha-1/2) * l2 norm of the potentials
  bool ok = false;           // d2 <= bound + 1e-12
};

// One draw of the H model against the free Laplacian: the sorted-spectrum
// l2 distance over sqrt(N) (the optimal coupling on the line) must sit below
// the Hoffman-Wielandt bound. Requires kind H and N <= 2000 (full spectra).
CouplingReport coupling_bound_check(const ModelSpec& spec);

// One coupling check per draw (per-draw stream_id = draw index), in draw
// order.
std::vector<CouplingReport> mc_coupling_check(const ModelSpec& spec,
                                              std::uint64_t draws,
                                              unsigned workers = 1);

struct SpikeSweepRow {
  double M = 0.0;
  double predicted = 0.0;
  double computed = 0.0;
  double abs_err = 0.0;
};

// Plants one spike per grid value and tabulates solver vs prediction.
// H: diagonal entry M at index floor(N/2), Sturm top eigenvalue vs
// sqrt(M^2 + 4). G: rank-one Haar spike (fresh column per grid index from
// (seed, index)), low-rank solver vs the edge-detachment map.
std::vector<SpikeSweepRow> planted_spike_sweep(std::size_t N,
                                               const std::vector<double>& M_grid,
                                               ModelKind model, std::uint64_t seed = 0);

}  // namespace spectail
