#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spectail/laws.hpp"

namespace spectail {

enum class RegimeKind { WeibullLD, SubCritical, Critical, RandomnessDominating };

// Regime of the top eigenvalue together with its governing parameters.
// SubCritical requires alpha*beta > 1, Critical beta = 1/alpha,
// RandomnessDominating beta < 1/alpha; WeibullLD carries the stretched
// exponential case (and point masses, treated as infinitely light tails).
struct RegimeLabel {
  RegimeKind kind = RegimeKind::WeibullLD;
  double C = 0.0;
  double beta = 0.0;
  double alpha = 0.0;
};

// Classification from the right tail of the law and the decay exponent:
// Pareto-type right tails split on alpha*beta vs 1 (|alpha*beta - 1| <= 1e-12
// counts as critical); everything lighter is the large-deviation regime.
RegimeLabel classify_regime(const PotentialLaw& law, double alpha);
std::string regime_name(RegimeKind kind);  // "weibull-LD", "sub-critical", ...

// Top-eigenvalue prediction for a single planted spike M:
//   tridiagonal Laplacian model: sqrt(M^2 + 4), requires M > 0;
//   rank-one Haar model: 2 for M < 1, M + 1/M for M >= 1 (edge detachment).
double predict_H_top(double M);
double predict_G_top(double M);

// f(lambda) = (lambda + sqrt(lambda^2 - 4)) / 2: the root >= 1 of
// f + 1/f = lambda. Requires lambda >= 2.
double f_of_lambda(double lambda);

// Large-deviation rate constants for stretched-exponential tails, lambda > 2:
//   rate_H = C (lambda^2 - 4)^(beta/2),   rate_G = C f(lambda)^beta.
double rate_H(double lambda, double C, double beta);
double rate_G(double lambda, double C, double beta);

// Sub-critical limit constants lim N^(alpha beta - 1) P(lambda_1 > lambda),
// stated without the tail constant C; the experiment layer multiplies the
// law's C back in.
double subcritical_prefactor_H(double lambda, double beta);
double subcritical_prefactor_G(double lambda, double beta);

// Limit laws of lambda_1 in the critical regime: the Frechet variable xi is
// pushed through sqrt(xi^2 + 4), resp. the edge-detachment map (which puts
// an atom of mass frechet_cdf(law, 1) at 2).
double critical_H_cdf(double x, const FrechetLaw& law);
double critical_G_cdf(double x, const FrechetLaw& law);

// Deterministic diagonal profile with its extreme-value summary. Entries
// below N^-cutoff_c in magnitude are ignored by the secular product and the
// assumption checks. For a single-entry profile M2 is -inf and gap +inf.
struct SpikeProfile {
  std::vector<double> values;
  double M1 = 0.0;            // max of values
  double M2 = 0.0;            // second largest value
  double gap = 0.0;           // M1 - M2
  std::size_t argmax = 0;     // index attaining M1
  double cutoff_c = 0.25;
};

SpikeProfile make_spike_profile(std::vector<double> values, double cutoff_c = 0.25);

// Secular determinant of the profile against the free-Laplacian resolvent:
//   prod over i with |values[i]| >= N^-cutoff_c of (1 - values[i] R_ii(lambda)).
// Zeros locate the eigenvalues detached above 2. Requires lambda > 2 and
// values.size() == N.
double secular_determinant_H(double lambda, const SpikeProfile& profile, std::size_t N);

// All sign-change roots of the secular determinant in (2, 3 + max spike],
// descending, found by a log-spaced scan refined by bisection. A pair of
// nearly-coincident roots (two equal spikes far apart) can evade the scan;
// profiles satisfying check_spike_assumptions keep their roots separated.
// largest_secular_root_H returns the first root and throws std::runtime_error
// if none is bracketed.
std::vector<double> secular_roots_H(const SpikeProfile& profile, std::size_t N,
                                    double tol = 1e-10);
double largest_secular_root_H(const SpikeProfile& profile, std::size_t N,
                              double tol = 1e-10);

struct SpikeAssumptionReport {
  bool pass = false;
  std::vector<std::string> violations;
};

// Checks the deterministic-profile assumptions behind the spike formulas:
// (i) unique, positive, finite top spike with a positive gap to the second;
// (ii) no two entries of magnitude >= N^-c within distance N^(2c);
// (iii) at most N^(1.5c) entries of magnitude >= N^-c.
SpikeAssumptionReport check_spike_assumptions(const SpikeProfile& profile, std::size_t N);

// Lower bound on the squared 2-Wasserstein gap opened below the bulk:
// for lambda1 in (-2, 2),
//   integral_{lambda1}^{2} (x - lambda1)^2 dx / (pi sqrt(4 - x^2)),
// by adaptive quadrature (tol 1e-10) after substituting x = 2 sin t, which
// removes the edge singularity; for lambda1 < -2 the squared displacement
// (-2 - lambda1)^2 (at -2 itself the integral applies, value 6); 0 for
// lambda1 >= 2.
double arcsine_left_gap(double lambda1);

// Expected number of limit points in (c, d], 0 < c < d <= inf:
//   regime.C * (c^-E - d^-E),  E = 1/alpha (critical) or beta (dominating).
// Only those two regimes carry a limiting point process.
double poisson_intensity_integral(const RegimeLabel& regime, double c, double d);

}  // namespace spectail
