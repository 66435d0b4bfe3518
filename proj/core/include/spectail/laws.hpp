#pragma once

#include <cstddef>
#include <string>

#include "spectail/random.hpp"

namespace spectail {

enum class LawKind { WeibullTail, ParetoTail, Constant, SignedMixture };

// Scalar potential law with an exactly pinned right tail, so theory formulas
// can use the tail constants with no slack:
//   WeibullTail:  P(a > t) = exp(-C t^beta)          for t >= 0
//   ParetoTail:   P(a > t) = C t^-beta               for t >= C^(1/beta), 1 below
//   Constant:     point mass at `value`
//   SignedMixture: with probability 1/2 a sample of the magnitude law,
//                  with probability 1/2 its negation (right tail halves)
struct PotentialLaw {
  LawKind kind = LawKind::Constant;
  double C = 1.0;
  double beta = 1.0;
  double value = 0.0;
  // Magnitude law of a SignedMixture; parameters live in the fields above.
  LawKind magnitude = LawKind::Constant;
};

inline bool operator==(const PotentialLaw& a, const PotentialLaw& b) {
  return a.kind == b.kind && a.C == b.C && a.beta == b.beta && a.value == b.value &&
         a.magnitude == b.magnitude;
}
inline bool operator!=(const PotentialLaw& a, const PotentialLaw& b) {
  return !(a == b);
}

PotentialLaw weibull_law(double C, double beta);
PotentialLaw pareto_law(double C, double beta);
PotentialLaw constant_law(double value);
PotentialLaw signed_law(const PotentialLaw& magnitude);  // magnitude must not be signed

// P(a > t). Total on [-inf, inf]; survival(-inf) = 1.
double survival(const PotentialLaw& law, double t);
double cdf(const PotentialLaw& law, double t);  // 1 - survival, exactly
double log_survival(const PotentialLaw& law, double t);

// Inverse-CDF sampling. Draw order (fixed for reproducibility): SignedMixture
// draws the sign first, then the magnitude; Constant consumes no draws.
double sample(const PotentialLaw& law, RandomStream& stream);

// P(max_{i<N} N^-alpha a(i) > lambda) = 1 - (1 - P(a > N^alpha lambda))^N,
// evaluated as -expm1(N log1p(-p)) so probabilities down to 1e-300 keep
// full relative accuracy.
double max_scaled_survival(const PotentialLaw& law, std::size_t N, double alpha,
                           double lambda);
// log of the above; usable when the survival itself underflows (deep
// large-deviation evaluations).
double log_max_scaled_survival(const PotentialLaw& law, std::size_t N,
                               double alpha, double lambda);

// Right-tail summary used to classify regimes: the effective constants k, C,
// beta with P(a > t) ~ C t^-beta (Pareto-like) or exp(-C t^beta)
// (Weibull-like). A SignedMixture halves C relative to its magnitude law.
struct RightTail {
  LawKind kind = LawKind::Constant;  // WeibullTail, ParetoTail, or Constant
  double C = 0.0;
  double beta = 0.0;
};
RightTail right_tail(const PotentialLaw& law);

// Frechet law on (0, inf): P(X <= x) = exp(-C x^-exponent).
struct FrechetLaw {
  double C = 1.0;
  double exponent = 1.0;
};

double frechet_cdf(const FrechetLaw& law, double x);
double frechet_sample(const FrechetLaw& law, RandomStream& stream);

// Chi distribution with k > 0 degrees of freedom (k need not be integral).
double sample_chi(RandomStream& stream, double k);

// Law grammar: weibull(C,beta) | pareto(C,beta) | constant(v) | signed(<law>),
// case-insensitive, whitespace tolerated. parse_law throws
// std::invalid_argument with a message naming the offending parameter.
PotentialLaw parse_law(const std::string& text);
std::string render_law(const PotentialLaw& law);  // canonical, round-trips exactly

}  // namespace spectail
