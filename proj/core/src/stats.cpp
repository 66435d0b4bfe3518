#include "spectail/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spectail {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kZ95 = 1.959963984540054;  // two-sided 95% normal quantile

}  // namespace

WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be >= 1");
  if (hits > trials) throw std::invalid_argument("wilson_interval: hits exceed trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  WilsonInterval w;
  // At p = 0 (resp. 1) the endpoint is exactly 0 (resp. 1); the formula
  // only reproduces that up to rounding, so pin it.
  w.low = hits == 0 ? 0.0 : std::max(0.0, center - half);
  w.high = hits == trials ? 1.0 : std::min(1.0, center + half);
  return w;
}

double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double F = cdf(sample[i]);
    d = std::max(d, F - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - F);
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical_value(std::size_t n) {
  if (n == 0) throw std::invalid_argument("ks_critical_value: n must be >= 1");
  return 1.3581 / std::sqrt(static_cast<double>(n));
}

double regularized_gamma_upper(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("regularized_gamma_upper: a must be > 0");
  if (x < 0.0) throw std::invalid_argument("regularized_gamma_upper: x must be >= 0");
  if (x == 0.0) return 1.0;
  const double log_prefix = a * std::log(x) - x - std::lgamma(a);
  if (x < a + 1.0) {
    // Lower series P(a,x); Q = 1 - P.
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
      term *= x / (a + k);
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return 1.0 - std::exp(log_prefix) * sum;
  }
  // Continued fraction for Q(a,x), modified Lentz.
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int k = 1; k < 500; ++k) {
    const double an = -static_cast<double>(k) * (k - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(log_prefix) * h;
}

double chi_square_p_value(double stat, double dof) {
  if (!(stat >= 0.0)) throw std::invalid_argument("chi_square_p_value: stat must be >= 0");
  if (!(dof > 0.0)) throw std::invalid_argument("chi_square_p_value: dof must be > 0");
  return regularized_gamma_upper(0.5 * dof, 0.5 * stat);
}

double poisson_pmf(std::uint64_t k, double mu) {
  if (!(mu >= 0.0)) throw std::invalid_argument("poisson_pmf: mu must be >= 0");
  if (mu == 0.0) return k == 0 ? 1.0 : 0.0;
  const double kk = static_cast<double>(k);
  return std::exp(kk * std::log(mu) - mu - std::lgamma(kk + 1.0));
}

double arcsine_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + std::asin(0.5 * x) / kPi;
}

double arcsine_quantile(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("arcsine_quantile: p must lie in [0, 1]");
  }
  return -2.0 * std::cos(kPi * p);
}

double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * kPi) + std::asin(0.5 * x) / kPi;
}

double semicircle_quantile(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("semicircle_quantile: p must lie in [0, 1]");
  }
  if (p == 0.0) return -2.0;
  if (p == 1.0) return 2.0;
  double lo = -2.0, hi = 2.0;
  // 80 halvings take the bracket to ~3e-24, far below double resolution.
  for (int iter = 0; iter < 80 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (semicircle_cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace spectail
