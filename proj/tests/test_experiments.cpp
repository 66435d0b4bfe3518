#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "doctest.h"
#include "spectail/dense_eigen.hpp"
#include "spectail/edge_theory.hpp"
#include "spectail/experiments.hpp"
#include "spectail/laws.hpp"
#include "spectail/models.hpp"
#include "spectail/stats.hpp"
#include "spectail/tridiagonal.hpp"

using namespace spectail;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

ModelSpec h_spec(std::size_t N, double alpha, PotentialLaw law, std::uint64_t seed) {
  ModelSpec spec;
  spec.kind = ModelKind::H;
  spec.N = N;
  spec.alpha = alpha;
  spec.law = law;
  spec.seed = RandomStream(seed, 0);
  return spec;
}

std::uint64_t draw_poisson(RandomStream& s, double mu) {
  // Count of unit-rate exponential arrivals before time mu.
  std::uint64_t k = 0;
  double t = s.exponential();
  while (t < mu) {
    ++k;
    t += s.exponential();
  }
  return k;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("low-rank truncation threshold") {
  CHECK(g_truncation_threshold(1000) == doctest::Approx(1e-6).epsilon(1e-12));
  CHECK(g_truncation_threshold(10) == doctest::Approx(1e-4).epsilon(1e-12));
}

TEST_CASE("free model tail hits are deterministic") {
  const ModelSpec spec = h_spec(50, 0.5, constant_law(0.0), 1);
  const TailReport at1 = mc_tail(spec, 1.0, 200);
  CHECK(at1.hits == 200);  // top eigenvalue 2cos(pi/51) > 1 always
  CHECK(at1.p_hat == 1.0);
  const TailReport at2 = mc_tail(spec, 2.0, 200);
  CHECK(at2.hits == 0);  // spectrum stays inside (-2, 2)
  CHECK(at2.p_hat == 0.0);
}

TEST_CASE("monte carlo tail tracks the finite-N maximum statistic") {
  // Stretched-exponential disorder with symmetric signs: the max of the
  // scaled potentials is (log N)^(1/beta - 1) times the typical value, so a
  // detachment event is a single big site on a negligible background and the
  // finite-N comparator is sharp. (A beta = 2 law fails both ways: its max
  // is only sqrt(log N) above the bulk, which then shifts the edge itself.)
  const ModelSpec spec = h_spec(1000, 0.5, signed_law(weibull_law(1.1, 0.5)), 2);
  const double lambda = 2.5;
  const TailReport r = mc_tail(spec, lambda, 4000);
  CHECK(r.regime.kind == RegimeKind::WeibullLD);
  REQUIRE(std::isfinite(r.theory));
  const double se = std::sqrt(r.theory * (1.0 - r.theory) / 4000.0);
  // 3 s.e. plus a small allowance for environment-assisted near-threshold
  // spikes (observed offset ~ +0.012 at this N).
  CHECK(std::abs(r.p_hat - r.theory) <= 3.0 * se + 0.005);
  CHECK(r.ci_low <= r.p_hat);
  CHECK(r.ci_high >= r.p_hat);
}

TEST_CASE("potential maximum alone matches the closed-form comparator") {
  // No spectral layer here: draw the potentials, take the max, and compare
  // the hit frequency to the exact finite-N maximum statistic.
  const PotentialLaw law = pareto_law(1.0, 2.0);
  const std::size_t N = 1000;
  const double alpha = 0.5, t = 1.68;
  const int trials = 2000;
  const double n_alpha = std::pow(static_cast<double>(N), alpha);
  int hits = 0;
  for (int trial = 0; trial < trials; ++trial) {
    RandomStream s(3, static_cast<std::uint64_t>(trial));
    double top = -kInf;
    for (std::size_t i = 0; i < N; ++i) top = std::max(top, sample(law, s));
    hits += top / n_alpha > t;
  }
  const double p = max_scaled_survival(law, N, alpha, t);
  const double se = std::sqrt(p * (1.0 - p) / trials);
  CHECK(std::abs(static_cast<double>(hits) / trials - p) <= 3.0 * se);
}

TEST_CASE("sub-critical tail prefactor at N = 2000") {
  // lim N^(ab-1) P = C (l^2-4)^(-b/2); at these parameters the limit value
  // 2000^(-0.2)/5 = 0.0437 should match within Monte Carlo resolution.
  const ModelSpec spec = h_spec(2000, 0.6, pareto_law(1.0, 2.0), 6);
  const TailReport r = mc_tail(spec, 3.0, 100000);
  CHECK(r.regime.kind == RegimeKind::SubCritical);
  const double se = std::sqrt(r.p_hat * (1.0 - r.p_hat) / 100000.0);
  CHECK(std::abs(r.p_hat - r.theory) <= 3.0 * se);
  // Same event through the max-potential statistic instead of the limit law.
  const double direct = max_scaled_survival(spec.law, spec.N, spec.alpha,
                                            std::sqrt(3.0 * 3.0 - 4.0));
  CHECK(std::abs(r.p_hat - direct) <= 3.0 * se);
}

TEST_CASE("tail results do not depend on the worker count") {
  const ModelSpec spec = h_spec(200, 0.5, pareto_law(1.0, 2.0), 3);
  const TailReport w1 = mc_tail(spec, 3.0, 1000, 1);
  const TailReport w3 = mc_tail(spec, 3.0, 1000, 3);
  CHECK(w1.hits == w3.hits);
  const std::vector<double> d1 = mc_distribution(spec, 500, 0.25, 1);
  const std::vector<double> d3 = mc_distribution(spec, 500, 0.25, 3);
  REQUIRE(d1.size() == d3.size());
  for (std::size_t i = 0; i < d1.size(); ++i) CHECK(d1[i] == d3[i]);
}

TEST_CASE("distribution of the free model is a point mass") {
  const ModelSpec spec = h_spec(64, 0.5, constant_law(0.0), 4);
  const std::vector<double> values = mc_distribution(spec, 8);
  const double expect = 2.0 * std::cos(M_PI / 65.0);
  for (double v : values) CHECK(v == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("distribution scaling power multiplies by N^p") {
  const ModelSpec spec = h_spec(64, 0.5, constant_law(0.0), 5);
  const std::vector<double> raw = mc_distribution(spec, 3, 0.0);
  const std::vector<double> scaled = mc_distribution(spec, 3, 0.5);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    CHECK(scaled[i] == doctest::Approx(raw[i] * 8.0).epsilon(1e-12));
  }
}

TEST_CASE("critical limit of the top eigenvalue at N = 2000") {
  // alpha = 1/2 with pareto(1,2) sits exactly at alpha * beta = 1; the top
  // eigenvalue converges to the pushed-forward Frechet law without rescaling.
  const ModelSpec spec = h_spec(2000, 0.5, pareto_law(1.0, 2.0), 6);
  const std::vector<double> values = mc_distribution(spec, 2000);
  const double D = ks_statistic(
      values, [](double x) { return critical_H_cdf(x, FrechetLaw{1.0, 2.0}); });
  CHECK(D <= 0.05);
}

TEST_CASE("dominating-regime top eigenvalue is Frechet after rescaling") {
  // alpha = 1, beta = 1/2: N^(alpha - 1/beta) lambda1 -> Frechet(1, 1/2).
  const ModelSpec spec = h_spec(5000, 1.0, pareto_law(1.0, 0.5), 12);
  const std::vector<double> scaled = mc_distribution(spec, 2000, -1.0);
  const double D = ks_statistic(
      scaled, [](double x) { return frechet_cdf(FrechetLaw{1.0, 0.5}, x); });
  CHECK(D <= 0.05);
}

TEST_CASE("point process of the free model returns the top free eigenvalues") {
  const ModelSpec spec = h_spec(400, 0.5, constant_law(0.0), 7);
  const PointProcessSample s = extract_point_process(spec, 3, 1.0);
  const std::vector<double> expect = top_k_eigenvalues(free_laplacian(400), 3);
  REQUIRE(s.points.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(s.points[i] == doctest::Approx(expect[i]).epsilon(1e-9));
  }
  CHECK(s.scaling == 0.0);
}

TEST_CASE("dominating-regime count matches the intensity integral") {
  // alpha = 1, pareto(1, 1/2): the scaled point count in (1, inf) is Poisson
  // with mean C = 1 in the limit; 3 s.e. over 2000 trials.
  ModelSpec spec = h_spec(2000, 1.0, pareto_law(1.0, 0.5), 8);
  const auto samples = mc_point_process(spec, 2000, 16, 1.0);
  const RegimeLabel regime = classify_regime(spec.law, spec.alpha);
  CHECK(regime.kind == RegimeKind::RandomnessDominating);
  const double expected = poisson_intensity_integral(regime, 1.0, kInf);
  CHECK(expected == doctest::Approx(1.0).epsilon(1e-14));
  double mean = 0.0;
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      CHECK(std::isfinite(s.points[i]));
      if (i > 0) CHECK(s.points[i] < s.points[i - 1]);
    }
    double count = 0.0;
    for (double v : s.points) count += v > 1.0;
    mean += count;
  }
  mean /= samples.size();
  const double se = std::sqrt(expected / 2000.0);
  CHECK(std::abs(mean - expected) <= 3.0 * se);

  // Counts in disjoint intervals are uncorrelated under the Poisson limit.
  const std::size_t n = samples.size();
  std::vector<double> in12(n, 0.0), in23(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (double v : samples[k].points) {
      if (v > 1.0 && v <= 2.0) in12[k] += 1.0;
      if (v > 2.0 && v <= 3.0) in23[k] += 1.0;
    }
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += in12[k];
    my += in23[k];
  }
  mx /= n;
  my /= n;
  double cov = 0.0, var_of_prod = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double prod = (in12[k] - mx) * (in23[k] - my);
    cov += prod;
    var_of_prod += prod * prod;
  }
  cov /= n;
  var_of_prod = var_of_prod / n - cov * cov;
  CHECK(std::abs(cov) <= 3.0 * std::sqrt(var_of_prod / n));

  // Equidispersion on (1, 2).
  const auto fits = poisson_fit_test(samples, {{1.0, 2.0}}, regime);
  REQUIRE(fits.size() == 1);
  CHECK(fits[0].variance > 0.0);
  CHECK(std::abs(fits[0].mean / fits[0].variance - 1.0) <= 0.15);
}

TEST_CASE("deleting the argmax row bounds the second eigenvalue") {
  // Cauchy interlacing: the top eigenvalue of the principal minor obtained
  // by removing one row and column sits above lambda_2 of the full matrix.
  // Removing index i splits a tridiagonal matrix into two blocks.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const ModelSpec spec = h_spec(500, 0.5, pareto_law(1.0, 2.0), 900 + seed);
    const TridiagonalMatrix T = build_H(spec);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < spec.N; ++i) {
      if (T.diag[i] > T.diag[arg]) arg = i;
    }
    const std::vector<double> top2 = top_k_eigenvalues(T, 2);

    double minor_top = -kInf;
    if (arg > 0) {
      TridiagonalMatrix left(
          std::vector<double>(T.diag.begin(), T.diag.begin() + arg),
          std::vector<double>(T.offdiag.begin(), T.offdiag.begin() + (arg - 1)));
      minor_top = std::max(minor_top, top_k_eigenvalues(left, 1)[0]);
    }
    if (arg + 1 < spec.N) {
      TridiagonalMatrix right(
          std::vector<double>(T.diag.begin() + arg + 1, T.diag.end()),
          std::vector<double>(T.offdiag.begin() + arg + 1, T.offdiag.end()));
      minor_top = std::max(minor_top, top_k_eigenvalues(right, 1)[0]);
    }
    CHECK(minor_top >= top2[1] - 1e-9);
  }
}

TEST_CASE("poisson fit accepts synthetic counts from the null") {
  RegimeLabel regime;
  regime.kind = RegimeKind::RandomnessDominating;
  regime.C = 1.6;
  regime.beta = 1.0;
  regime.alpha = 2.0;
  const double mu = poisson_intensity_integral(regime, 1.0, 2.0);
  CHECK(mu == doctest::Approx(0.8).epsilon(1e-14));

  int accepted = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomStream s(900 + seed, 0);
    std::vector<PointProcessSample> samples(2000);
    for (auto& ps : samples) {
      const std::uint64_t k = draw_poisson(s, mu);
      ps.points.assign(k, 1.5);
      ps.N = 1000;
    }
    const auto fits = poisson_fit_test(samples, {{1.0, 2.0}}, regime);
    REQUIRE(fits.size() == 1);
    CHECK(fits[0].expected == doctest::Approx(mu));
    accepted += fits[0].chi2_p > 0.01;
  }
  CHECK(accepted >= 19);
}

TEST_CASE("empty intervals give trivial fits") {
  RegimeLabel regime;
  regime.kind = RegimeKind::RandomnessDominating;
  regime.C = 1.6;
  regime.beta = 1.0;
  std::vector<PointProcessSample> samples(100);
  for (auto& ps : samples) ps.points = {1.5, 1.2};
  const auto fits = poisson_fit_test(samples, {{50.0, 60.0}}, regime);
  REQUIRE(fits.size() == 1);
  CHECK(fits[0].mean == 0.0);
  CHECK(fits[0].chi2_p == 1.0);  // every draw lands in the zero-count bin
}

TEST_CASE("wasserstein distance to the arcsine reference") {
  const std::size_t n = 1000;
  std::vector<double> sample(n);
  for (std::size_t i = 0; i < n; ++i) {
    sample[i] = arcsine_quantile((i + 0.5) / n);
  }
  const double w2 = wasserstein2(sample, ReferenceLaw{ReferenceKind::Arcsine, 0.0});
  CHECK(w2 <= 0.01);    // midpoint-quantile discretization is O(1/n)
  CHECK(w2 > 0.0005);   // and it is not spuriously zero

  const std::vector<double> free_spectrum =
      dense_eigenvalues(free_laplacian(2000));
  CHECK(wasserstein2(free_spectrum, ReferenceLaw{ReferenceKind::Arcsine, 0.0}) <=
        0.05);
}

TEST_CASE("wasserstein triangle inequality on sorted grids") {
  const std::size_t n = 400;
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = (i + 0.5) / n;
    a[i] = arcsine_quantile(p) + 0.05 * std::sin(7.0 * p);
    b[i] = semicircle_quantile(p);
  }
  std::sort(a.begin(), a.end());
  const ReferenceLaw ref{ReferenceKind::Arcsine, 0.0};
  double cross = 0.0;
  for (std::size_t i = 0; i < n; ++i) cross += (a[i] - b[i]) * (a[i] - b[i]);
  cross = std::sqrt(cross / n);  // exact W2 between the two empirical measures
  CHECK(wasserstein2(a, ref) <= cross + wasserstein2(b, ref) + 1e-12);
}

TEST_CASE("wasserstein distance to a point mass") {
  const std::vector<double> sample = {0.0, 0.0};
  CHECK(wasserstein2(sample, ReferenceLaw{ReferenceKind::PointMass, 0.0}) == 0.0);
  CHECK(wasserstein2(sample, ReferenceLaw{ReferenceKind::PointMass, 1.0}) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("coupling bound for constant potentials") {
  const CouplingReport zero = coupling_bound_check(h_spec(100, 0.5, constant_law(0.0), 9));
  CHECK(zero.d2_spectral == 0.0);
  CHECK(zero.hw_bound == 0.0);
  CHECK(zero.ok);

  // Uniform shift: every eigenvalue moves by exactly c and the bound is tight.
  const CouplingReport shift =
      coupling_bound_check(h_spec(150, 0.0, constant_law(0.3), 10));
  CHECK(shift.d2_spectral == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(shift.hw_bound == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(shift.ok);
}

TEST_CASE("coupling bound holds across random draws") {
  const ModelSpec spec = h_spec(500, 0.5, pareto_law(1.0, 3.0), 11);
  const auto reports = mc_coupling_check(spec, 100);
  REQUIRE(reports.size() == 100);
  for (const auto& r : reports) {
    CHECK(r.ok);
    CHECK(r.d2_spectral <= r.hw_bound + 1e-12);
  }
}

TEST_CASE("planted spike sweep for the full-line model") {
  const auto one = planted_spike_sweep(2000, {1.5}, ModelKind::H);
  REQUIRE(one.size() == 1);
  CHECK(one[0].predicted == doctest::Approx(2.5));
  CHECK(std::abs(one[0].computed - 2.5) <= 1e-2);

  const auto rows = planted_spike_sweep(2000, {0.5, 1.0, 2.0, 4.0}, ModelKind::H);
  for (const auto& row : rows) CHECK(row.abs_err <= 2e-2);
}

TEST_CASE("planted spike sweep for the half-line model") {
  const auto rows = planted_spike_sweep(1000, {0.5, 2.0}, ModelKind::G, 12);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].predicted == 2.0);        // subcritical spike sticks to the edge
  CHECK(rows[1].predicted == doctest::Approx(2.5));
  for (const auto& row : rows) CHECK(row.abs_err <= 5e-2);
}

TEST_CASE("the beta ensemble has no tail theory") {
  ModelSpec spec;
  spec.kind = ModelKind::GBeta;
  spec.N = 100;
  spec.beta_ens = 2.0;
  spec.seed = RandomStream(13, 0);
  const TailReport r = mc_tail(spec, 2.5, 50);
  CHECK_FALSE(std::isfinite(r.theory));
}

}  // TEST_SUITE
