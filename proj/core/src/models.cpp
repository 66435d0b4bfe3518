#include "spectail/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace spectail {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

TridiagonalMatrix free_laplacian(std::size_t N) {
  require(N >= 1, "free_laplacian: N must be positive");
  return TridiagonalMatrix(std::vector<double>(N, 0.0),
                           std::vector<double>(N ? N - 1 : 0, 1.0));
}

TridiagonalMatrix build_G_inf(std::size_t N) {
  require(N >= 1, "build_G_inf: N must be positive");
  std::vector<double> e(N - 1);
  for (std::size_t k = 1; k < N; ++k)
    e[k - 1] = std::sqrt(static_cast<double>(N - k) / static_cast<double>(N));
  return TridiagonalMatrix(std::vector<double>(N, 0.0), std::move(e));
}

double g_inf_top_eigenvalue(std::size_t N) {
  static std::map<std::size_t, double> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  const double top = top_k_eigenvalues(build_G_inf(N), 1, 1e-12)[0];
  cache.emplace(N, top);
  return top;
}

TridiagonalMatrix assemble_H(std::size_t N, double alpha,
                             const std::vector<double>& potentials) {
  require(potentials.size() == N, "assemble_H: potentials size mismatch");
  TridiagonalMatrix T = free_laplacian(N);
  const double scale = std::pow(static_cast<double>(N), -alpha);
  for (std::size_t i = 0; i < N; ++i) T.diag[i] = scale * potentials[i];
  return T;
}

TridiagonalMatrix build_H(const ModelSpec& spec) {
  require(spec.kind == ModelKind::H, "build_H: spec.kind must be H");
  RandomStream stream = spec.seed;
  std::vector<double> a(spec.N);
  for (double& v : a) v = sample(spec.law, stream);
  return assemble_H(spec.N, spec.alpha, a);
}

TridiagonalMatrix build_G_beta(std::size_t N, double beta_ens, RandomStream& stream) {
  require(N >= 1, "build_G_beta: N must be positive");
  require(beta_ens > 0.0, "build_G_beta: beta_ens must be positive");
  const double norm = 1.0 / std::sqrt(static_cast<double>(N) * beta_ens);
  std::vector<double> d(N), e(N - 1);
  for (std::size_t i = 0; i < N; ++i)
    d[i] = stream.normal(0.0, std::sqrt(2.0)) * norm;
  for (std::size_t k = 1; k < N; ++k)
    e[k - 1] = sample_chi(stream, static_cast<double>(N - k) * beta_ens) * norm;
  return TridiagonalMatrix(std::move(d), std::move(e));
}

DenseSymmetric sample_haar_orthogonal(std::size_t N, RandomStream& stream) {
  require(N >= 1, "sample_haar_orthogonal: N must be positive");
  const std::size_t n = N;
  std::vector<double> a(n * n);
  for (double& v : a) v = stream.normal();  // row-major fill

  // Householder QR; reflectors kept for the Q accumulation.
  std::vector<std::vector<double>> vs(n);
  std::vector<double> tau(n, 0.0), rdiag(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) norm2 += a[i * n + k] * a[i * n + k];
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) {
      rdiag[k] = 0.0;
      continue;
    }
    const double x0 = a[k * n + k];
    const double alpha = x0 >= 0.0 ? -norm : norm;
    std::vector<double> v(n - k);
    v[0] = x0 - alpha;
    for (std::size_t i = k + 1; i < n; ++i) v[i - k] = a[i * n + k];
    double vnorm2 = 0.0;
    for (double w : v) vnorm2 += w * w;
    rdiag[k] = alpha;
    if (vnorm2 == 0.0) continue;
    const double t = 2.0 / vnorm2;
    for (std::size_t j = k; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < n; ++i) dot += v[i - k] * a[i * n + j];
      dot *= t;
      for (std::size_t i = k; i < n; ++i) a[i * n + j] -= dot * v[i - k];
    }
    vs[k] = std::move(v);
    tau[k] = t;
  }

  DenseSymmetric Q(n);
  for (std::size_t i = 0; i < n; ++i) Q.at(i, i) = 1.0;
  for (std::size_t k = n; k-- > 0;) {
    if (tau[k] == 0.0) continue;
    const std::vector<double>& v = vs[k];
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < n; ++i) dot += v[i - k] * Q.at(i, j);
      dot *= tau[k];
      for (std::size_t i = k; i < n; ++i) Q.at(i, j) -= dot * v[i - k];
    }
  }

  // Flip columns so the implicit R diagonal is positive; this removes the
  // sign convention of the reflectors and makes Q exactly Haar.
  for (std::size_t k = 0; k < n; ++k) {
    if (rdiag[k] < 0.0)
      for (std::size_t i = 0; i < n; ++i) Q.at(i, k) = -Q.at(i, k);
  }
  return Q;
}

std::vector<std::vector<double>> sample_haar_columns(std::size_t N, std::size_t r,
                                                     RandomStream& stream) {
  require(N >= 1, "sample_haar_columns: N must be positive");
  require(r >= 1 && r <= N, "sample_haar_columns: need 1 <= r <= N");
  std::vector<std::vector<double>> cols(r);
  for (std::size_t c = 0; c < r; ++c) {
    std::vector<double> w(N);
    for (double& v : w) v = stream.normal();
    // Gram-Schmidt with one reorthogonalization pass; the resulting implicit
    // R diagonal is positive, matching the Haar sign convention.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < c; ++p) {
        double dot = 0.0;
        for (std::size_t i = 0; i < N; ++i) dot += cols[p][i] * w[i];
        for (std::size_t i = 0; i < N; ++i) w[i] -= dot * cols[p][i];
      }
    }
    double norm2 = 0.0;
    for (double v : w) norm2 += v * v;
    if (norm2 == 0.0)
      throw std::runtime_error("sample_haar_columns: degenerate draw");
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : w) v *= inv;
    cols[c] = std::move(w);
  }
  return cols;
}

DenseSymmetric assemble_G_dense(std::size_t N, const std::vector<double>& spike_values,
                                RandomStream& stream) {
  require(N >= 2, "assemble_G_dense: N must be >= 2");
  require(spike_values.size() == N, "assemble_G_dense: need one value per site");
  const std::size_t n = N;
  const std::vector<double>& m = spike_values;
  DenseSymmetric U = sample_haar_orthogonal(n, stream);

  DenseSymmetric S(n);
  // S = U diag(m) U^T, accumulated as sum over k of m_k u_k u_k^T with u_k
  // the k-th column of U; only the upper triangle is formed.
  for (std::size_t k = 0; k < n; ++k) {
    const double mk = m[k];
    if (mk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const double f = mk * U.at(i, k);
      for (std::size_t j = i; j < n; ++j) S.at(i, j) += f * U.at(j, k);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) S.at(j, i) = S.at(i, j);

  const TridiagonalMatrix G = build_G_inf(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    S.at(i, i + 1) += G.offdiag[i];
    S.at(i + 1, i) += G.offdiag[i];
  }
  return S;
}

DenseSymmetric build_G_dense(const ModelSpec& spec) {
  require(spec.kind == ModelKind::G, "build_G_dense: spec.kind must be G");
  RandomStream stream = spec.seed;
  std::vector<double> m(spec.N);
  const double scale = std::pow(static_cast<double>(spec.N), -spec.alpha);
  for (double& v : m) v = scale * sample(spec.law, stream);
  return assemble_G_dense(spec.N, m, stream);
}

std::vector<double> spiked_G_outliers(std::size_t N, const std::vector<double>& spikes,
                                      const std::vector<std::vector<double>>& columns,
                                      std::size_t max_roots, double tol) {
  require(spikes.size() == columns.size(),
          "spiked_G_outliers: spikes/columns size mismatch");
  require(tol > 0.0, "spiked_G_outliers: tol must be positive");
  if (max_roots == 0) return {};

  std::vector<double> m;
  std::vector<const std::vector<double>*> cols;
  for (std::size_t k = 0; k < spikes.size(); ++k) {
    if (spikes[k] == 0.0) continue;
    require(columns[k].size() == N, "spiked_G_outliers: column size mismatch");
    m.push_back(spikes[k]);
    cols.push_back(&columns[k]);
  }
  if (m.empty()) return {};

  const double lam_max = g_inf_top_eigenvalue(N);
  const std::size_t r = m.size();
  const TridiagonalMatrix G = build_G_inf(N);
  std::size_t n_pos = 0;
  double max_abs = 0.0;
  for (double v : m) {
    if (v > 0.0) ++n_pos;
    max_abs = std::max(max_abs, std::abs(v));
  }

  // Count of eigenvalues of G + V diag(m) V^T above lam, via the inertia of
  // B = V^T (lam I - G)^-1 V - diag(1/m). Valid for lam above the spectrum
  // of G; monotone nonincreasing in lam.
  auto count_above = [&](double lam) -> std::size_t {
    DenseSymmetric B(r);
    std::vector<std::vector<double>> X(r);
    for (std::size_t c = 0; c < r; ++c) X[c] = tridiagonal_solve(G, lam, *cols[c]);
    for (std::size_t p = 0; p < r; ++p) {
      for (std::size_t q = p; q < r; ++q) {
        double dot_pq = 0.0;
        double dot_qp = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
          dot_pq += (*cols[p])[i] * X[q][i];
          dot_qp += (*cols[q])[i] * X[p][i];
        }
        const double v = 0.5 * (dot_pq + dot_qp);
        B.at(p, q) = v;
        B.at(q, p) = v;
      }
      B.at(p, p) -= 1.0 / m[p];
    }
    const std::vector<double> ev = dense_eigenvalues(B, r);
    std::size_t neg = 0;
    for (double v : ev)
      if (v < 0.0) ++neg;
    return n_pos - std::min(neg, n_pos);
  };

  const double lo0 = lam_max + 1e-6;
  const std::size_t detached = std::min(count_above(lo0), max_roots);
  if (detached == 0) return {};

  double hi0 = lam_max + 1.0 + max_abs;
  while (count_above(hi0) > 0) hi0 = lam_max + 2.0 * (hi0 - lam_max);
  const double eps = tol * std::max(1.0, std::abs(hi0));

  std::vector<double> out;
  out.reserve(detached);
  for (std::size_t j = 1; j <= detached; ++j) {
    double lo = lo0;
    double hi = out.empty() ? hi0 : out.back();  // j-th root lies below the (j-1)-th
    while (hi - lo > eps) {
      const double mid = 0.5 * (lo + hi);
      if (count_above(mid) >= j)
        lo = mid;
      else
        hi = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

double spiked_G_top_from_columns(std::size_t N, const std::vector<double>& spikes,
                                 const std::vector<std::vector<double>>& columns,
                                 double tol) {
  const std::vector<double> roots = spiked_G_outliers(N, spikes, columns, 1, tol);
  return roots.empty() ? g_inf_top_eigenvalue(N) : roots.front();
}

double spiked_G_top_eigenvalue(std::size_t N, const std::vector<double>& spikes,
                               RandomStream& stream, double tol) {
  require(spikes.size() <= 64, "spiked_G_top_eigenvalue: at most 64 spikes");
  if (spikes.empty()) return g_inf_top_eigenvalue(N);
  const auto columns = sample_haar_columns(N, spikes.size(), stream);
  return spiked_G_top_from_columns(N, spikes, columns, tol);
}

}  // namespace spectail
