#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "spectail/dense_eigen.hpp"
#include "spectail/edge_theory.hpp"
#include "spectail/laws.hpp"
#include "spectail/models.hpp"
#include "spectail/tridiagonal.hpp"

using namespace spectail;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_SUITE("edge-theory") {

TEST_CASE("regime classification splits on alpha * beta") {
  CHECK(classify_regime(weibull_law(1.0, 2.0), 0.3).kind == RegimeKind::WeibullLD);
  CHECK(classify_regime(weibull_law(1.0, 2.0), 2.0).kind == RegimeKind::WeibullLD);
  CHECK(classify_regime(pareto_law(1.0, 2.0), 0.6).kind == RegimeKind::SubCritical);
  CHECK(classify_regime(pareto_law(1.0, 2.0), 0.5).kind == RegimeKind::Critical);
  CHECK(classify_regime(pareto_law(1.0, 0.5), 1.0).kind ==
        RegimeKind::RandomnessDominating);
  // Within 1e-12 of alpha * beta = 1 counts as critical.
  CHECK(classify_regime(pareto_law(1.0, 2.0), 0.5 + 1e-13).kind ==
        RegimeKind::Critical);

  const RegimeLabel sub = classify_regime(pareto_law(3.0, 2.0), 0.6);
  CHECK(sub.C == doctest::Approx(3.0));
  CHECK(sub.beta == doctest::Approx(2.0));
  CHECK(sub.alpha == doctest::Approx(0.6));

  // A signed wrapper halves the right-tail weight.
  const RegimeLabel sgn = classify_regime(signed_law(pareto_law(3.0, 2.0)), 0.6);
  CHECK(sgn.kind == RegimeKind::SubCritical);
  CHECK(sgn.C == doctest::Approx(1.5));
}

TEST_CASE("regime names are stable") {
  CHECK(regime_name(RegimeKind::WeibullLD) == "weibull-LD");
  CHECK(regime_name(RegimeKind::SubCritical) == "sub-critical");
  CHECK(regime_name(RegimeKind::Critical) == "critical");
  CHECK(regime_name(RegimeKind::RandomnessDominating) == "randomness-dominating");
}

TEST_CASE("spike location maps") {
  CHECK(predict_H_top(1.5) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(predict_H_top(1e-9) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(predict_G_top(2.0) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(predict_G_top(0.5) == 2.0);
  CHECK(predict_G_top(1.0) == 2.0);
  CHECK(f_of_lambda(2.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(f_of_lambda(2.0) == doctest::Approx(1.0).epsilon(1e-15));
  // f inverts the G map above the threshold, in both directions.
  for (double M : {1.2, 3.0, 7.5}) {
    CHECK(f_of_lambda(predict_G_top(M)) == doctest::Approx(M).epsilon(1e-12));
  }
  for (double lam : {2.1, 3.0, 10.0}) {
    CHECK(predict_G_top(f_of_lambda(lam)) == doctest::Approx(lam).epsilon(1e-12));
  }
}

TEST_CASE("rate functions at frozen points") {
  CHECK(rate_H(2.5, 1.0, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(rate_H(2.5, 2.0, 2.0) == doctest::Approx(4.5).epsilon(1e-15));
  CHECK(rate_G(2.5, 1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(rate_G(2.5, 1.0, 3.0) == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("rate_H is the log-survival of the potential at the preimage") {
  for (double lam : {2.3, 2.5, 4.0}) {
    for (double beta : {0.5, 1.0, 2.0}) {
      const double expect =
          -log_survival(weibull_law(1.7, beta), std::sqrt(lam * lam - 4.0));
      CHECK(rate_H(lam, 1.7, beta) == doctest::Approx(expect).epsilon(1e-13));
    }
  }
}

TEST_CASE("rate functions increase in lambda and G dominates H") {
  double prev_h = 0.0, prev_g = 0.0;
  for (double lam = 2.05; lam <= 10.0; lam += 0.05) {
    const double h = rate_H(lam, 1.0, 1.5);
    const double g = rate_G(lam, 1.0, 1.5);
    CHECK(h > prev_h);
    CHECK(g > prev_g);
    CHECK(g > h);  // f(lambda) > sqrt(lambda^2 - 4) everywhere above 2
    prev_h = h;
    prev_g = g;
  }
}

TEST_CASE("subcritical prefactors at lambda = 2.5") {
  CHECK(subcritical_prefactor_H(2.5, 2.0) == doctest::Approx(1.0 / 2.25).epsilon(1e-15));
  CHECK(subcritical_prefactor_G(2.5, 2.0) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("subcritical prefactors decay monotonically to zero") {
  double prev_h = 1e300, prev_g = 1e300;
  for (double lam = 2.1; lam <= 120.0; lam *= 1.3) {
    const double h = subcritical_prefactor_H(lam, 2.0);
    const double g = subcritical_prefactor_G(lam, 2.0);
    CHECK(h < prev_h);
    CHECK(g < prev_g);
    prev_h = h;
    prev_g = g;
  }
  CHECK(prev_h < 2e-4);
  CHECK(prev_g < 2e-4);
}

TEST_CASE("critical limit laws") {
  const FrechetLaw law{1.0, 2.0};
  CHECK(critical_H_cdf(2.0, law) == 0.0);
  CHECK(critical_H_cdf(1.0, law) == 0.0);
  CHECK(critical_H_cdf(std::sqrt(8.0), law) ==
        doctest::Approx(std::exp(-0.25)).epsilon(1e-14));
  CHECK(critical_G_cdf(1.9, law) == 0.0);
  CHECK(critical_G_cdf(2.0, law) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(critical_G_cdf(2.5, law) == doctest::Approx(std::exp(-0.25)).epsilon(1e-14));

  // Valid distribution functions: nondecreasing with limits 0 and 1.
  double prev_h = -1.0, prev_g = -1.0;
  for (double x = 1.5; x < 50.0; x += 0.25) {
    const double h = critical_H_cdf(x, law);
    const double g = critical_G_cdf(x, law);
    CHECK(h >= prev_h);
    CHECK(g >= prev_g);
    CHECK(h >= 0.0);
    CHECK(g <= 1.0);
    prev_h = h;
    prev_g = g;
  }
  CHECK(critical_H_cdf(1e4, law) > 0.999);
  CHECK(critical_G_cdf(1e4, law) > 0.999);
}

TEST_CASE("secular determinant of the empty profile is one") {
  const SpikeProfile profile = make_spike_profile(std::vector<double>(50, 0.0));
  CHECK(secular_determinant_H(2.7, profile, 50) == 1.0);
}

TEST_CASE("single planted spike root matches the closed form") {
  const std::size_t N = 2000;
  std::vector<double> values(N, 0.0);
  values[N / 2] = 1.5;
  const SpikeProfile profile = make_spike_profile(values);
  const double root = largest_secular_root_H(profile, N);
  CHECK(root == doctest::Approx(2.5).epsilon(1e-6));
}

TEST_CASE("two distant spikes give two roots matching a dense solve") {
  const std::size_t N = 2000;
  std::vector<double> values(N, 0.0);
  values[500] = 1.5;
  values[1500] = 1.0;
  const SpikeProfile profile = make_spike_profile(values);
  const std::vector<double> roots = secular_roots_H(profile, N);
  REQUIRE(roots.size() == 2);
  // Frozen from an independent dense eigensolve of the same matrix.
  CHECK(std::abs(roots[0] - 2.4999999999999956) < 1e-6);
  CHECK(std::abs(roots[1] - 2.2360679774997740) < 1e-6);

  const double sturm_top = top_k_eigenvalues(assemble_H(N, 0.0, values), 1)[0];
  CHECK(std::abs(roots[0] - sturm_top) < 1e-8);
}

TEST_CASE("secular root tracks the prediction across a spike sweep") {
  const std::size_t N = 2000;
  for (int k = 0; k < 20; ++k) {
    const double M = 0.5 + k * (4.5 / 19.0);
    std::vector<double> values(N, 0.0);
    values[N / 2] = M;
    const double root = largest_secular_root_H(make_spike_profile(values), N);
    CHECK(std::abs(root - predict_H_top(M)) <= 5e-3);
  }
}

TEST_CASE("no root when every factor stays positive") {
  std::vector<double> values(100, 0.0);
  values[50] = -1.0;  // negative spike pushes the bottom, not the top
  const SpikeProfile profile = make_spike_profile(values);
  CHECK(secular_roots_H(profile, 100).empty());
  CHECK_THROWS_AS(largest_secular_root_H(profile, 100), std::runtime_error);
}

TEST_CASE("assumption checks") {
  const std::size_t N = 1000;
  std::vector<double> single(N, 0.0);
  single[N / 2] = 2.0;
  CHECK(check_spike_assumptions(make_spike_profile(single), N).pass);

  std::vector<double> adjacent(N, 0.0);
  adjacent[400] = 1.0;
  adjacent[401] = 1.0;
  const SpikeAssumptionReport report =
      check_spike_assumptions(make_spike_profile(adjacent), N);
  CHECK_FALSE(report.pass);
  CHECK_FALSE(report.violations.empty());

  // ceil(N^0.9) unit spikes overflow the N^(1.5c) budget at c = 0.3.
  const auto heavy_count =
      static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(N), 0.9)));
  std::vector<double> crowded(N, 0.0);
  for (std::size_t i = 0; i < heavy_count; ++i) crowded[i] = 1.0;
  const SpikeAssumptionReport crowded_report =
      check_spike_assumptions(make_spike_profile(crowded, 0.3), N);
  CHECK_FALSE(crowded_report.pass);
  bool mentions_count_budget = false;
  for (const auto& v : crowded_report.violations) {
    if (v.find("(iii)") != std::string::npos) mentions_count_budget = true;
  }
  CHECK(mentions_count_budget);
}

TEST_CASE("profile summary fields") {
  std::vector<double> values(64, 0.0);
  values[10] = 2.0;
  values[40] = 1.25;
  const SpikeProfile p = make_spike_profile(values);
  CHECK(p.M1 == doctest::Approx(2.0));
  CHECK(p.M2 == doctest::Approx(1.25));
  CHECK(p.gap == doctest::Approx(0.75));
  CHECK(p.argmax == 10);
}

TEST_CASE("left-gap functional against an independent quadrature") {
  CHECK(arcsine_left_gap(2.0) == 0.0);
  CHECK(arcsine_left_gap(2.5) == 0.0);
  CHECK(arcsine_left_gap(-2.0) == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(arcsine_left_gap(-3.0) == doctest::Approx(1.0).epsilon(1e-12));  // (-2 - l)^2
  // Frozen closed-form values (antiderivative of the arcsine moment).
  CHECK(arcsine_left_gap(-1.0) == doctest::Approx(2.826993343132688).epsilon(1e-9));
  CHECK(arcsine_left_gap(0.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(arcsine_left_gap(0.5) == doctest::Approx(0.48172776462975114).epsilon(1e-9));
  CHECK(arcsine_left_gap(1.0) == doctest::Approx(0.17300665686731187).epsilon(1e-9));
  CHECK(arcsine_left_gap(1.5) == doctest::Approx(0.03028729015858451).epsilon(1e-9));

  double prev = 7.0;
  for (double l = -2.0; l < 2.01; l += 0.125) {
    const double g = arcsine_left_gap(l);
    CHECK(g < prev);
    prev = g;
  }
}

TEST_CASE("intensity integrals over intervals") {
  RegimeLabel critical;
  critical.kind = RegimeKind::Critical;
  critical.C = 1.0;
  critical.beta = 2.0;
  critical.alpha = 0.5;
  CHECK(poisson_intensity_integral(critical, 1.0, kInf) ==
        doctest::Approx(1.0).epsilon(1e-15));

  RegimeLabel dom;
  dom.kind = RegimeKind::RandomnessDominating;
  dom.C = 1.0;
  dom.beta = 2.0;
  dom.alpha = 1.0;
  CHECK(poisson_intensity_integral(dom, 1.0, 2.0) ==
        doctest::Approx(0.75).epsilon(1e-15));

  // Additive over adjacent intervals.
  for (const RegimeLabel* r : {&critical, &dom}) {
    const double split = poisson_intensity_integral(*r, 0.7, 1.9) +
                         poisson_intensity_integral(*r, 1.9, 3.4);
    CHECK(split ==
          doctest::Approx(poisson_intensity_integral(*r, 0.7, 3.4)).epsilon(1e-14));
  }

  CHECK_THROWS_AS(poisson_intensity_integral(dom, -1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(poisson_intensity_integral(dom, 2.0, 1.0), std::invalid_argument);
  RegimeLabel weib;
  weib.kind = RegimeKind::WeibullLD;
  CHECK_THROWS_AS(poisson_intensity_integral(weib, 1.0, 2.0), std::invalid_argument);
}

}  // TEST_SUITE
