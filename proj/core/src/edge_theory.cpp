#include "spectail/edge_theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "spectail/resolvent.hpp"

namespace spectail {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

double sqrt_lambda2_minus_4(double lambda) {
  // Factored form keeps relative accuracy as lambda -> 2.
  return std::sqrt((lambda - 2.0) * (lambda + 2.0));
}

}  // namespace

RegimeLabel classify_regime(const PotentialLaw& law, double alpha) {
  if (!(alpha >= 0.0)) fail("classify_regime: alpha must be >= 0");
  const RightTail rt = right_tail(law);
  RegimeLabel out;
  out.C = rt.C;
  out.beta = rt.beta;
  out.alpha = alpha;
  if (rt.kind != LawKind::ParetoTail) {
    out.kind = RegimeKind::WeibullLD;
    return out;
  }
  const double ab = alpha * rt.beta;
  if (std::abs(ab - 1.0) <= 1e-12) {
    out.kind = RegimeKind::Critical;
  } else if (ab > 1.0) {
    out.kind = RegimeKind::SubCritical;
  } else {
    out.kind = RegimeKind::RandomnessDominating;
  }
  return out;
}

std::string regime_name(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::WeibullLD: return "weibull-LD";
    case RegimeKind::SubCritical: return "sub-critical";
    case RegimeKind::Critical: return "critical";
    case RegimeKind::RandomnessDominating: return "randomness-dominating";
  }
  fail("regime_name: unknown regime");
}

double predict_H_top(double M) {
  if (!(M > 0.0)) fail("predict_H_top: spike M must be > 0");
  return std::sqrt(M * M + 4.0);
}

double predict_G_top(double M) {
  if (!(M >= 0.0)) fail("predict_G_top: spike M must be >= 0");
  if (M < 1.0) return 2.0;
  return M + 1.0 / M;
}

double f_of_lambda(double lambda) {
  if (!(lambda >= 2.0)) fail("f_of_lambda: lambda must be >= 2");
  return 0.5 * (lambda + sqrt_lambda2_minus_4(lambda));
}

double rate_H(double lambda, double C, double beta) {
  if (!(lambda > 2.0)) fail("rate_H: lambda must be > 2");
  if (!(C > 0.0) || !(beta > 0.0)) fail("rate_H: C and beta must be > 0");
  return C * std::pow((lambda - 2.0) * (lambda + 2.0), 0.5 * beta);
}

double rate_G(double lambda, double C, double beta) {
  if (!(lambda > 2.0)) fail("rate_G: lambda must be > 2");
  if (!(C > 0.0) || !(beta > 0.0)) fail("rate_G: C and beta must be > 0");
  return C * std::pow(f_of_lambda(lambda), beta);
}

double subcritical_prefactor_H(double lambda, double beta) {
  if (!(lambda > 2.0)) fail("subcritical_prefactor_H: lambda must be > 2");
  if (!(beta > 0.0)) fail("subcritical_prefactor_H: beta must be > 0");
  return std::pow((lambda - 2.0) * (lambda + 2.0), -0.5 * beta);
}

double subcritical_prefactor_G(double lambda, double beta) {
  if (!(lambda > 2.0)) fail("subcritical_prefactor_G: lambda must be > 2");
  if (!(beta > 0.0)) fail("subcritical_prefactor_G: beta must be > 0");
  return std::pow(f_of_lambda(lambda), -beta);
}

double critical_H_cdf(double x, const FrechetLaw& law) {
  if (!(x > 2.0)) return 0.0;
  return frechet_cdf(law, sqrt_lambda2_minus_4(x));
}

double critical_G_cdf(double x, const FrechetLaw& law) {
  if (x < 2.0) return 0.0;
  // f_of_lambda(2) = 1, so the free phase contributes the atom
  // frechet_cdf(law, 1) at x = 2.
  return frechet_cdf(law, f_of_lambda(x));
}

SpikeProfile make_spike_profile(std::vector<double> values, double cutoff_c) {
  if (values.empty()) fail("make_spike_profile: empty profile");
  if (!(cutoff_c > 0.0) || !(cutoff_c < 1.0)) {
    fail("make_spike_profile: cutoff_c must lie in (0, 1)");
  }
  SpikeProfile p;
  p.cutoff_c = cutoff_c;
  p.argmax = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[p.argmax]) p.argmax = i;
  }
  p.M1 = values[p.argmax];
  if (values.size() == 1) {
    p.M2 = -std::numeric_limits<double>::infinity();
  } else {
    double second = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i != p.argmax) second = std::max(second, values[i]);
    }
    p.M2 = second;
  }
  p.gap = p.M1 - p.M2;
  p.values = std::move(values);
  return p;
}

namespace {

// Sign-and-log form of the secular product; the plain product overflows once
// a few hundred kept factors pile up near lambda = 2.
struct DetValue {
  int sign = 1;
  double log_abs = 0.0;
};

DetValue det_signlog(double lambda, const SpikeProfile& profile, std::size_t N) {
  const double threshold = std::pow(static_cast<double>(N), -profile.cutoff_c);
  const SpectralParameter z(lambda);
  DetValue out;
  for (std::size_t i = 0; i < N; ++i) {
    const double v = profile.values[i];
    if (std::abs(v) < threshold) continue;
    const double factor = 1.0 - v * laplacian_resolvent_entry(N, z, i, i);
    if (factor == 0.0) {
      out.sign = 0;
      return out;
    }
    if (factor < 0.0) out.sign = -out.sign;
    out.log_abs += std::log(std::abs(factor));
  }
  return out;
}

void require_profile(const SpikeProfile& profile, std::size_t N, const char* who) {
  if (N < 2) fail(std::string(who) + ": N must be >= 2");
  if (profile.values.size() != N) {
    fail(std::string(who) + ": profile length does not match N");
  }
  if (!(profile.cutoff_c > 0.0) || !(profile.cutoff_c < 1.0)) {
    fail(std::string(who) + ": cutoff_c must lie in (0, 1)");
  }
}

}  // namespace

double secular_determinant_H(double lambda, const SpikeProfile& profile, std::size_t N) {
  if (!(lambda > 2.0)) fail("secular_determinant_H: lambda must be > 2");
  require_profile(profile, N, "secular_determinant_H");
  const DetValue d = det_signlog(lambda, profile, N);
  if (d.sign == 0) return 0.0;
  return d.sign * std::exp(d.log_abs);
}

std::vector<double> secular_roots_H(const SpikeProfile& profile, std::size_t N,
                                    double tol) {
  require_profile(profile, N, "secular_roots_H");
  if (!(tol > 0.0)) fail("secular_roots_H: tol must be > 0");

  const double threshold = std::pow(static_cast<double>(N), -profile.cutoff_c);
  double max_abs = 0.0;
  for (double v : profile.values) {
    if (std::abs(v) >= threshold) max_abs = std::max(max_abs, std::abs(v));
  }
  if (max_abs == 0.0) return {};  // empty product: determinant is identically 1

  // Any detached root sits below 2 + max|spike| (the root formula gives
  // sqrt(M^2+4) < M + 2); pad by 1 so the last scan point is safely beyond.
  const double hi = 2.0 + max_abs + 1.0;
  const int kScan = 2048;
  const double t_lo = 1e-12, t_hi = hi - 2.0;
  const double log_lo = std::log(t_lo), log_hi = std::log(t_hi);

  auto sign_at = [&](double lambda) { return det_signlog(lambda, profile, N).sign; };

  std::vector<double> roots;
  double prev_lambda = 2.0 + t_lo;
  int prev_sign = sign_at(prev_lambda);
  for (int k = 1; k < kScan; ++k) {
    const double t = std::exp(log_lo + (log_hi - log_lo) * k / (kScan - 1));
    const double lambda = 2.0 + t;
    const int s = sign_at(lambda);
    if (s == 0) {
      roots.push_back(lambda);
    } else if (prev_sign != 0 && s != prev_sign) {
      double a = prev_lambda, b = lambda;
      int sa = prev_sign;
      const double eps = tol * std::max(1.0, hi);
      while (b - a > eps) {
        const double mid = 0.5 * (a + b);
        const int sm = sign_at(mid);
        if (sm == 0) {
          a = b = mid;
          break;
        }
        if (sm == sa) {
          a = mid;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_lambda = lambda;
    prev_sign = s;
  }
  std::reverse(roots.begin(), roots.end());  // top root first, as everywhere else
  return roots;
}

double largest_secular_root_H(const SpikeProfile& profile, std::size_t N, double tol) {
  std::vector<double> roots = secular_roots_H(profile, N, tol);
  if (roots.empty()) {
    throw std::runtime_error(
        "largest_secular_root_H: no determinant sign change above 2 for this profile");
  }
  return roots.front();
}

SpikeAssumptionReport check_spike_assumptions(const SpikeProfile& profile,
                                              std::size_t N) {
  require_profile(profile, N, "check_spike_assumptions");
  const double n = static_cast<double>(N);
  const double threshold = std::pow(n, -profile.cutoff_c);
  const double min_distance = std::pow(n, 2.0 * profile.cutoff_c);
  const double max_big = std::pow(n, 1.5 * profile.cutoff_c);

  SpikeAssumptionReport report;
  auto violate = [&](const std::string& msg) { report.violations.push_back(msg); };

  if (!std::isfinite(profile.M1) || !(profile.M1 > 0.0)) {
    violate("(i) top spike must be positive and finite");
  } else {
    std::size_t argmax_count = 0;
    for (double v : profile.values) {
      if (v == profile.M1) ++argmax_count;
    }
    if (argmax_count != 1) {
      std::ostringstream msg;
      msg << "(i) argmax not unique: " << argmax_count << " entries attain the maximum";
      violate(msg.str());
    }
  }

  std::vector<std::size_t> big;
  for (std::size_t i = 0; i < N; ++i) {
    if (std::abs(profile.values[i]) >= threshold) big.push_back(i);
  }
  // Indices come out sorted, so adjacent gaps are the binding ones.
  for (std::size_t k = 1; k < big.size(); ++k) {
    const double dist = static_cast<double>(big[k] - big[k - 1]);
    if (dist < min_distance) {
      std::ostringstream msg;
      msg << "(ii) entries " << big[k - 1] << " and " << big[k]
          << " both exceed N^-c but are only " << dist << " apart (need >= "
          << min_distance << ")";
      violate(msg.str());
    }
  }
  if (static_cast<double>(big.size()) > max_big) {
    std::ostringstream msg;
    msg << "(iii) " << big.size() << " entries exceed N^-c (limit " << max_big << ")";
    violate(msg.str());
  }

  report.pass = report.violations.empty();
  return report;
}

namespace {

double left_gap_integrand(double t, double lambda1) {
  const double d = 2.0 * std::sin(t) - lambda1;
  return d * d / kPi;
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth, double lambda1) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = left_gap_integrand(lm, lambda1);
  const double frm = left_gap_integrand(rm, lambda1);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, lambda1) +
         adaptive_simpson(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, lambda1);
}

}  // namespace

double arcsine_left_gap(double lambda1) {
  if (!(lambda1 < 2.0)) return 0.0;
  // Strictly below the support the bound degrades to the squared distance
  // to the edge; at lambda1 = -2 the integral itself applies (value 6).
  if (lambda1 < -2.0) {
    const double d = -2.0 - lambda1;
    return d * d;
  }
  // x = 2 sin t turns dx / (pi sqrt(4 - x^2)) into dt / pi: the edge
  // singularity disappears and plain Simpson refinement converges fast.
  const double a = std::asin(0.5 * lambda1);
  const double b = 0.5 * kPi;
  const double fa = left_gap_integrand(a, lambda1);
  const double fb = left_gap_integrand(b, lambda1);
  const double m = 0.5 * (a + b);
  const double fm = left_gap_integrand(m, lambda1);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(a, b, fa, fm, fb, whole, 1e-10, 40, lambda1);
}

double poisson_intensity_integral(const RegimeLabel& regime, double c, double d) {
  if (!(c > 0.0)) fail("poisson_intensity_integral: interval start must be > 0");
  if (!(d > c)) fail("poisson_intensity_integral: interval end must exceed start");
  double exponent = 0.0;
  if (regime.kind == RegimeKind::Critical) {
    if (!(regime.alpha > 0.0)) fail("poisson_intensity_integral: alpha must be > 0");
    exponent = 1.0 / regime.alpha;
  } else if (regime.kind == RegimeKind::RandomnessDominating) {
    if (!(regime.beta > 0.0)) fail("poisson_intensity_integral: beta must be > 0");
    exponent = regime.beta;
  } else {
    fail("poisson_intensity_integral: regime carries no limiting point process");
  }
  if (!(regime.C > 0.0)) fail("poisson_intensity_integral: C must be > 0");
  const double upper = std::isinf(d) ? 0.0 : std::pow(d, -exponent);
  return regime.C * (std::pow(c, -exponent) - upper);
}

}  // namespace spectail
