#include "spectail/resolvent.hpp"

#include <cmath>
#include <stdexcept>

namespace spectail {

SpectralParameter::SpectralParameter(double lam) : lambda(lam) {
  if (!(lam > 2.0))
    throw std::invalid_argument("SpectralParameter: lambda must exceed 2");
  // arccosh(lambda/2), written to stay accurate as lambda -> 2+.
  const double x = lam / 2.0;
  lambda_star = std::log1p(x - 1.0 + std::sqrt((x - 1.0) * (x + 1.0)));
}

double laplacian_resolvent_entry(std::size_t N, const SpectralParameter& z,
                                 std::size_t i, std::size_t j) {
  if (N == 0) throw std::invalid_argument("laplacian_resolvent_entry: N must be positive");
  if (i >= N || j >= N)
    throw std::invalid_argument("laplacian_resolvent_entry: index out of range");

  const double t = z.lambda_star;
  const double S = static_cast<double>(N) + 1.0;
  const double i1 = static_cast<double>(i) + 1.0;
  const double j1 = static_cast<double>(j) + 1.0;
  const double u = std::abs(i1 - j1);
  const double w = std::abs(S - (i1 + j1));  // cosh is even

  // Factor e^{S t} out of numerator and denominator; every exponent is <= 0.
  const double St = S * t;
  const double a = (S - u) * t;
  const double b = w * t;
  const double Ea = std::exp(a - St) + std::exp(-a - St);
  const double Eb = std::exp(b - St) + std::exp(-b - St);
  const double denom = 2.0 * std::sinh(t) * (1.0 - std::exp(-2.0 * St));
  return (Ea - Eb) / denom;
}

}  // namespace spectail
