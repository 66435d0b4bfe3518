#include "spectail/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "spectail/stats.hpp"

namespace spectail {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

// Runs body(0..count-1) on `workers` threads (0 = hardware concurrency).
// Work is handed out in small index chunks; bodies must only write to
// per-index slots so results cannot depend on the worker count. The first
// exception wins and is rethrown on the calling thread.
void parallel_for(std::uint64_t count, unsigned workers,
                  const std::function<void(std::uint64_t)>& body) {
  if (workers == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    workers = hw == 0 ? 1 : hw;
  }
  if (workers <= 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }

  constexpr std::uint64_t kChunk = 8;
  std::atomic<std::uint64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto run = [&]() {
    for (;;) {
      if (first_error) return;  // racy read is fine: shutdown hint only
      const std::uint64_t start = next.fetch_add(kChunk);
      if (start >= count) return;
      const std::uint64_t stop = std::min(count, start + kChunk);
      for (std::uint64_t i = start; i < stop; ++i) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    }
  };

  std::vector<std::thread> pool;
  const unsigned spawn = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, (count + kChunk - 1) / kChunk));
  pool.reserve(spawn);
  for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(run);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string describe_trial_failure(std::uint64_t trial, const std::exception& e) {
  return "trial " + std::to_string(trial) + ": " + e.what();
}

const std::vector<double>& free_spectrum_sorted(std::size_t N) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(N);
  if (it == cache.end()) {
    it = cache.emplace(N, dense_eigenvalues(free_laplacian(N), 2000)).first;
  }
  return it->second;
}

}  // namespace

double g_truncation_threshold(std::size_t N) {
  if (N == 0) fail("g_truncation_threshold: N must be >= 1");
  return 1e-3 / static_cast<double>(N);
}

double sample_top_eigenvalue(const ModelSpec& spec, RandomStream& stream) {
  const std::size_t N = spec.N;
  if (N < 2) fail("sample_top_eigenvalue: N must be >= 2");
  switch (spec.kind) {
    case ModelKind::H: {
      const double scale = std::pow(static_cast<double>(N), -spec.alpha);
      std::vector<double> diag(N);
      for (double& d : diag) d = scale * sample(spec.law, stream);
      TridiagonalMatrix T(std::move(diag), std::vector<double>(N - 1, 1.0));
      return top_k_eigenvalues(T, 1)[0];
    }
    case ModelKind::GBeta: {
      const TridiagonalMatrix T = build_G_beta(N, spec.beta_ens, stream);
      return top_k_eigenvalues(T, 1)[0];
    }
    case ModelKind::G: {
      const double scale = std::pow(static_cast<double>(N), -spec.alpha);
      const double threshold = g_truncation_threshold(N);
      std::vector<double> m(N);
      std::vector<double> kept;
      for (double& v : m) {
        v = scale * sample(spec.law, stream);
        if (std::abs(v) >= threshold) kept.push_back(v);
      }
      if (kept.size() <= 64) return spiked_G_top_eigenvalue(N, kept, stream);
      if (N <= 2000) {
        const DenseSymmetric S = assemble_G_dense(N, m, stream);
        return dense_eigenvalues(S, N).back();
      }
      throw std::runtime_error(
          "sample_top_eigenvalue: draw keeps more than 64 spikes and N exceeds "
          "the dense cap (2000)");
    }
  }
  fail("sample_top_eigenvalue: unknown model kind");
}

double tail_theory(const ModelSpec& spec, double lambda, const RegimeLabel& regime) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (spec.kind == ModelKind::GBeta) return nan;
  if (!(lambda > 2.0)) return nan;
  const bool is_H = spec.kind == ModelKind::H;
  const double n = static_cast<double>(spec.N);
  switch (regime.kind) {
    case RegimeKind::WeibullLD: {
      // Finite-N max statistic of the potentials against the detachment set;
      // exact for the point-mass law, the proxy the rate function governs
      // for stretched-exponential tails.
      const double g = is_H ? std::sqrt((lambda - 2.0) * (lambda + 2.0))
                            : f_of_lambda(lambda);
      return max_scaled_survival(spec.law, spec.N, spec.alpha, g);
    }
    case RegimeKind::SubCritical: {
      const double pref = is_H ? subcritical_prefactor_H(lambda, regime.beta)
                               : subcritical_prefactor_G(lambda, regime.beta);
      return regime.C * std::pow(n, 1.0 - regime.alpha * regime.beta) * pref;
    }
    case RegimeKind::Critical: {
      const FrechetLaw xi{regime.C, regime.beta};
      return is_H ? 1.0 - critical_H_cdf(lambda, xi)
                  : 1.0 - critical_G_cdf(lambda, xi);
    }
    case RegimeKind::RandomnessDominating: {
      const FrechetLaw xi{regime.C, regime.beta};
      const double scaled =
          std::pow(n, regime.alpha - 1.0 / regime.beta) * lambda;
      return 1.0 - frechet_cdf(xi, scaled);
    }
  }
  return nan;
}

TailReport mc_tail(const ModelSpec& spec, double lambda, std::uint64_t trials,
                   unsigned workers) {
  if (trials == 0) fail("mc_tail: trials must be >= 1");
  if (!std::isfinite(lambda)) fail("mc_tail: lambda must be finite");

  std::vector<std::uint8_t> hit(trials, 0);
  parallel_for(trials, workers, [&](std::uint64_t t) {
    try {
      RandomStream stream(spec.seed.seed(), t);
      hit[t] = sample_top_eigenvalue(spec, stream) > lambda ? 1 : 0;
    } catch (const std::exception& e) {
      throw std::runtime_error(describe_trial_failure(t, e));
    }
  });

  TailReport report;
  report.lambda = lambda;
  report.trials = trials;
  report.hits = 0;
  for (std::uint8_t h : hit) report.hits += h;
  report.p_hat = static_cast<double>(report.hits) / static_cast<double>(trials);
  const WilsonInterval ci = wilson_interval(report.hits, trials);
  report.ci_low = ci.low;
  report.ci_high = ci.high;
  report.regime = classify_regime(spec.law, spec.alpha);
  report.theory = tail_theory(spec, lambda, report.regime);
  return report;
}

std::vector<double> mc_distribution(const ModelSpec& spec, std::uint64_t trials,
                                    double scale_power, unsigned workers) {
  if (trials == 0) fail("mc_distribution: trials must be >= 1");
  const double factor = std::pow(static_cast<double>(spec.N), scale_power);
  std::vector<double> out(trials);
  parallel_for(trials, workers, [&](std::uint64_t t) {
    try {
      RandomStream stream(spec.seed.seed(), t);
      out[t] = factor * sample_top_eigenvalue(spec, stream);
    } catch (const std::exception& e) {
      throw std::runtime_error(describe_trial_failure(t, e));
    }
  });
  return out;
}

PointProcessSample extract_point_process(const ModelSpec& spec, std::size_t top_d,
                                         double threshold) {
  const std::size_t N = spec.N;
  if (top_d == 0 || top_d > N) fail("extract_point_process: need 1 <= top_d <= N");

  const RegimeLabel regime = classify_regime(spec.law, spec.alpha);
  PointProcessSample out;
  out.N = N;
  out.scaling = regime.kind == RegimeKind::RandomnessDominating
                    ? spec.alpha - 1.0 / regime.beta
                    : 0.0;
  const double factor = std::pow(static_cast<double>(N), out.scaling);

  RandomStream stream = spec.seed;
  std::vector<double> raw;
  switch (spec.kind) {
    case ModelKind::H: {
      const double scale = std::pow(static_cast<double>(N), -spec.alpha);
      std::vector<double> diag(N);
      for (double& d : diag) d = scale * sample(spec.law, stream);
      TridiagonalMatrix T(std::move(diag), std::vector<double>(N - 1, 1.0));
      raw = top_k_eigenvalues(T, top_d);
      break;
    }
    case ModelKind::GBeta: {
      const TridiagonalMatrix T = build_G_beta(N, spec.beta_ens, stream);
      raw = top_k_eigenvalues(T, top_d);
      break;
    }
    case ModelKind::G: {
      const double scale = std::pow(static_cast<double>(N), -spec.alpha);
      const double trunc = g_truncation_threshold(N);
      std::vector<double> m(N);
      std::vector<double> kept;
      for (double& v : m) {
        v = scale * sample(spec.law, stream);
        if (std::abs(v) >= trunc) kept.push_back(v);
      }
      if (kept.size() <= 64) {
        const auto columns = sample_haar_columns(N, kept.size(), stream);
        raw = spiked_G_outliers(N, kept, columns, top_d);
      } else if (N <= 2000) {
        const DenseSymmetric S = assemble_G_dense(N, m, stream);
        std::vector<double> all = dense_eigenvalues(S, N);
        for (std::size_t j = 0; j < top_d; ++j) raw.push_back(all[N - 1 - j]);
      } else {
        throw std::runtime_error(
            "extract_point_process: draw keeps more than 64 spikes and N "
            "exceeds the dense cap (2000)");
      }
      break;
    }
  }

  for (double v : raw) {
    const double scaled = factor * v;
    if (scaled > threshold) out.points.push_back(scaled);
  }
  if (regime.kind == RegimeKind::Critical && spec.kind == ModelKind::H) {
    out.preimages.reserve(out.points.size());
    for (double v : out.points) {
      out.preimages.push_back(std::sqrt(std::max(v * v - 4.0, 0.0)));
    }
  }
  return out;
}

std::vector<PointProcessSample> mc_point_process(const ModelSpec& spec,
                                                 std::uint64_t trials,
                                                 std::size_t top_d, double threshold,
                                                 unsigned workers) {
  if (trials == 0) fail("mc_point_process: trials must be >= 1");
  std::vector<PointProcessSample> out(trials);
  parallel_for(trials, workers, [&](std::uint64_t t) {
    try {
      ModelSpec trial_spec = spec;
      trial_spec.seed = RandomStream(spec.seed.seed(), t);
      out[t] = extract_point_process(trial_spec, top_d, threshold);
    } catch (const std::exception& e) {
      throw std::runtime_error(describe_trial_failure(t, e));
    }
  });
  return out;
}

std::vector<PoissonIntervalFit> poisson_fit_test(
    const std::vector<PointProcessSample>& samples,
    const std::vector<std::pair<double, double>>& intervals,
    const RegimeLabel& regime) {
  if (samples.empty()) fail("poisson_fit_test: no samples");
  if (intervals.empty()) fail("poisson_fit_test: no intervals");
  for (const auto& [c, d] : intervals) {
    if (!(c > 0.0) || !(d > c)) {
      fail("poisson_fit_test: intervals must satisfy 0 < c < d");
    }
  }
  std::vector<std::size_t> order(intervals.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return intervals[a].first < intervals[b].first;
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (intervals[order[k]].first < intervals[order[k - 1]].second) {
      fail("poisson_fit_test: intervals overlap");
    }
  }

  const double n = static_cast<double>(samples.size());
  std::vector<PoissonIntervalFit> fits;
  fits.reserve(intervals.size());
  for (const auto& [c, d] : intervals) {
    PoissonIntervalFit fit;
    fit.c = c;
    fit.d = d;
    fit.expected = poisson_intensity_integral(regime, c, d);

    std::vector<std::uint64_t> counts;
    counts.reserve(samples.size());
    for (const PointProcessSample& s : samples) {
      const std::vector<double>& values = s.preimages.empty() ? s.points : s.preimages;
      std::uint64_t k = 0;
      for (double v : values) {
        if (v > c && v <= d) ++k;
      }
      counts.push_back(k);
    }

    double sum = 0.0;
    std::uint64_t kmax = 0;
    for (std::uint64_t k : counts) {
      sum += static_cast<double>(k);
      kmax = std::max(kmax, k);
    }
    fit.mean = sum / n;
    double ss = 0.0;
    for (std::uint64_t k : counts) {
      const double dk = static_cast<double>(k) - fit.mean;
      ss += dk * dk;
    }
    fit.variance = samples.size() > 1 ? ss / (n - 1.0) : 0.0;

    // Observed histogram over {0..kmax} plus the open tail, merged left to
    // right so every chi-square bin carries expected mass >= 5.
    std::vector<double> obs(kmax + 2, 0.0);
    std::vector<double> exp(kmax + 2, 0.0);
    for (std::uint64_t k : counts) obs[k] += 1.0;
    double cdf = 0.0;
    for (std::uint64_t k = 0; k <= kmax; ++k) {
      const double p = poisson_pmf(k, fit.expected);
      exp[k] = n * p;
      cdf += p;
    }
    exp[kmax + 1] = n * std::max(0.0, 1.0 - cdf);

    std::vector<std::pair<double, double>> bins;  // (obs, exp)
    double acc_obs = 0.0, acc_exp = 0.0;
    for (std::size_t k = 0; k < obs.size(); ++k) {
      acc_obs += obs[k];
      acc_exp += exp[k];
      if (acc_exp >= 5.0) {
        bins.emplace_back(acc_obs, acc_exp);
        acc_obs = acc_exp = 0.0;
      }
    }
    if (acc_exp > 0.0 || acc_obs > 0.0) {
      if (bins.empty()) {
        bins.emplace_back(acc_obs, acc_exp);
      } else {
        bins.back().first += acc_obs;
        bins.back().second += acc_exp;
      }
    }

    if (bins.size() < 2) {
      fit.chi2_p = 1.0;
    } else {
      double stat = 0.0;
      for (const auto& [o, e] : bins) {
        const double diff = o - e;
        stat += diff * diff / e;
      }
      fit.chi2_p = chi_square_p_value(stat, static_cast<double>(bins.size() - 1));
    }
    fits.push_back(fit);
  }
  return fits;
}

namespace {

struct GaussLegendre16 {
  double x[16];
  double w[16];
};

// Nodes by Newton iteration on P_16; exact to machine precision, so no
// transcribed table to trust.
const GaussLegendre16& gl16() {
  static const GaussLegendre16 table = [] {
    GaussLegendre16 t;
    const int n = 16;
    for (int i = 0; i < n / 2; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p1 = 1.0, p2 = 0.0;
        for (int j = 1; j <= n; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        const double dz = p1 / pp;
        z -= dz;
        if (std::abs(dz) < 1e-15) break;
      }
      t.x[i] = -z;
      t.x[n - 1 - i] = z;
      t.w[i] = t.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return t;
  }();
  return table;
}

double reference_quantile(const ReferenceLaw& ref, double p) {
  switch (ref.kind) {
    case ReferenceKind::Arcsine: return arcsine_quantile(p);
    case ReferenceKind::Semicircle: return semicircle_quantile(p);
    case ReferenceKind::PointMass: return ref.value;
  }
  fail("reference_quantile: unknown reference law");
}

}  // namespace

double wasserstein2(const std::vector<double>& sorted_sample, const ReferenceLaw& ref) {
  if (sorted_sample.empty()) fail("wasserstein2: empty sample");
  for (std::size_t i = 1; i < sorted_sample.size(); ++i) {
    if (sorted_sample[i] < sorted_sample[i - 1]) {
      fail("wasserstein2: sample must be sorted ascending");
    }
  }
  const std::size_t n = sorted_sample.size();
  const double width = 1.0 / static_cast<double>(n);
  const GaussLegendre16& gl = gl16();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = static_cast<double>(i) * width;
    const double mid = a + 0.5 * width;
    const double half = 0.5 * width;
    double cell = 0.0;
    for (int k = 0; k < 16; ++k) {
      const double p = mid + half * gl.x[k];
      const double diff = sorted_sample[i] - reference_quantile(ref, p);
      cell += gl.w[k] * diff * diff;
    }
    total += half * cell;
  }
  return std::sqrt(total);
}

CouplingReport coupling_bound_check(const ModelSpec& spec) {
  if (spec.kind != ModelKind::H) fail("coupling_bound_check: kind must be H");
  if (spec.N < 2) fail("coupling_bound_check: N must be >= 2");
  if (spec.N > 2000) fail("coupling_bound_check: N exceeds the dense cap (2000)");

  RandomStream stream = spec.seed;
  std::vector<double> a(spec.N);
  for (double& v : a) v = sample(spec.law, stream);

  const TridiagonalMatrix T = assemble_H(spec.N, spec.alpha, a);
  const std::vector<double> disordered = dense_eigenvalues(T, 2000);
  const std::vector<double>& free = free_spectrum_sorted(spec.N);

  double ss = 0.0;
  for (std::size_t i = 0; i < spec.N; ++i) {
    const double d = disordered[i] - free[i];
    ss += d * d;
  }
  CouplingReport report;
  report.d2_spectral = std::sqrt(ss / static_cast<double>(spec.N));

  double a2 = 0.0;
  for (double v : a) a2 += v * v;
  report.hw_bound =
      std::pow(static_cast<double>(spec.N), -spec.alpha - 0.5) * std::sqrt(a2);
  report.ok = report.d2_spectral <= report.hw_bound + 1e-12;
  return report;
}

std::vector<CouplingReport> mc_coupling_check(const ModelSpec& spec,
                                              std::uint64_t draws, unsigned workers) {
  if (draws == 0) fail("mc_coupling_check: draws must be >= 1");
  std::vector<CouplingReport> out(draws);
  parallel_for(draws, workers, [&](std::uint64_t d) {
    try {
      ModelSpec draw_spec = spec;
      draw_spec.seed = RandomStream(spec.seed.seed(), d);
      out[d] = coupling_bound_check(draw_spec);
    } catch (const std::exception& e) {
      throw std::runtime_error("draw " + std::to_string(d) + ": " + e.what());
    }
  });
  return out;
}

std::vector<SpikeSweepRow> planted_spike_sweep(std::size_t N,
                                               const std::vector<double>& M_grid,
                                               ModelKind model, std::uint64_t seed) {
  if (N < 2) fail("planted_spike_sweep: N must be >= 2");
  if (model == ModelKind::GBeta) fail("planted_spike_sweep: model must be H or G");
  for (double M : M_grid) {
    if (!(M > 0.0)) fail("planted_spike_sweep: every M must be > 0");
  }

  std::vector<SpikeSweepRow> rows;
  rows.reserve(M_grid.size());
  for (std::size_t i = 0; i < M_grid.size(); ++i) {
    const double M = M_grid[i];
    SpikeSweepRow row;
    row.M = M;
    if (model == ModelKind::H) {
      TridiagonalMatrix T = free_laplacian(N);
      T.diag[N / 2] = M;
      row.computed = top_k_eigenvalues(T, 1)[0];
      row.predicted = predict_H_top(M);
    } else {
      RandomStream stream(seed, i);
      const auto columns = sample_haar_columns(N, 1, stream);
      row.computed = spiked_G_top_from_columns(N, {M}, columns);
      row.predicted = predict_G_top(M);
    }
    row.abs_err = std::abs(row.computed - row.predicted);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace spectail
