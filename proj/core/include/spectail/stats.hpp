#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace spectail {

// Wilson 95% score interval; preferred over Wald because rare-event counts
// (0 or 1 hits) keep a nondegenerate interval.
struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};
WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t trials);

// Two-sided Kolmogorov-Smirnov distance between the sample's empirical CDF
// and a reference CDF (one-sample), or between two empirical CDFs.
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic two-sided critical value at level 0.05: 1.3581 / sqrt(n).
double ks_critical_value(std::size_t n);

// Upper regularized incomplete gamma Q(a, x); series for x < a + 1,
// continued fraction otherwise.
double regularized_gamma_upper(double a, double x);

// Survival of the chi-square law: P(X > stat) with `dof` degrees of freedom.
double chi_square_p_value(double stat, double dof);

double poisson_pmf(std::uint64_t k, double mu);

// Arcsine law on [-2, 2], density 1 / (pi sqrt(4 - x^2)).
double arcsine_cdf(double x);
double arcsine_quantile(double p);  // -2 cos(pi p)

// Semicircle law on [-2, 2], density sqrt(4 - x^2) / (2 pi); quantile by
// bisection of the closed-form CDF.
double semicircle_cdf(double x);
double semicircle_quantile(double p);

}  // namespace spectail
